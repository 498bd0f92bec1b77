#pragma once

#include <string>

namespace abeloid {

// Report-style validation outcome: pass/fail plus the first violated
// condition.
struct ValidationReport {
  bool pass = true;
  std::string first_violation;

  static ValidationReport ok() { return {}; }
  static ValidationReport fail(std::string what) { return {false, std::move(what)}; }
};

}  // namespace abeloid
