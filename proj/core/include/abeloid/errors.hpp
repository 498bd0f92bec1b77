#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace abeloid {

// Base for all engine errors.  Carries the operation that failed and, when
// meaningful, the absolute precision (in uniformizer powers) at which the
// decision could no longer be made.
class Error : public std::runtime_error {
public:
  Error(std::string operation, const std::string& message,
        std::optional<int> precision_units = std::nullopt)
      : std::runtime_error(operation + ": " + message),
        operation_(std::move(operation)),
        precision_units_(precision_units) {}

  const std::string& operation() const { return operation_; }
  std::optional<int> precision_units() const { return precision_units_; }

private:
  std::string operation_;
  std::optional<int> precision_units_;
};

// Invalid configuration or malformed input data (bad field config, schema
// violations caught after parse, precondition failures).
struct ConfigError : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};
// Malformed instance files / literals.
struct ParseError : Error {
  using Error::Error;
};

// Domain errors of the p-adic calculus.
struct DivisionBelowPrecision : Error {
  using Error::Error;
};
struct LogDomainError : Error {
  using Error::Error;
};
struct ExpDomainError : Error {
  using Error::Error;
};
struct CharacterAdmissibilityError : Error {
  using Error::Error;
};
struct RootsNotInField : Error {
  using Error::Error;
};
struct CommutationViolation : Error {
  using Error::Error;
};

// A rank / pivot / zero-test decision needed more precision than the inputs
// carry.
struct PrecisionExhausted : Error {
  using Error::Error;
};

}  // namespace abeloid
