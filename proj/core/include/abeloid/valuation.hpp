#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace abeloid {

// Valuation normalized so that v(p) = 1.  Values live in (1/e)*Z where e is
// the ramification index, plus a formal infinity for "zero at precision".
class Valuation {
public:
  Valuation() : num_(0), den_(1), infinite_(false) {}
  Valuation(std::int64_t num, std::int64_t den) : num_(num), den_(den), infinite_(false) {
    reduce();
  }
  static Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  bool is_infinite() const { return infinite_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

  std::string to_string() const {
    if (infinite_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
  bool infinite_;
};

}  // namespace abeloid
