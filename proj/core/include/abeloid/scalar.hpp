#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abeloid/field.hpp"

namespace abeloid {

// Element of K = Q_p[x]/(f) at tracked absolute precision.
//
// Internally: value = pi^shift * c(xbar) with c an integral coordinate vector
// in the power basis, shift <= 0, and the value known modulo pi^prec where
// prec is counted in uniformizer powers and never exceeds the field cap.
// All precision accounting is pessimistic: every operation records its
// worst-case loss, and equality means "congruent modulo pi^(min of the two
// precisions)".
class Scalar {
public:
  static Scalar zero(FieldPtr field);
  static Scalar zero(FieldPtr field, int prec_units);
  static Scalar one(FieldPtr field);
  static Scalar from_integer(FieldPtr field, const BigInt& n);
  static Scalar from_rational(FieldPtr field, const BigInt& num, const BigInt& den);
  // sum coords[i] * xbar^i with exact rational coordinates given as (num, den)
  static Scalar from_coords(FieldPtr field,
                            const std::vector<std::pair<BigInt, BigInt>>& coords);
  // Reassembles sum_k terms[k].second(xbar) * pi^(terms[k].first) from exact
  // integral term data at the stated precision; used by the literal parser.
  static Scalar from_term_data(FieldPtr field,
                               const std::vector<std::pair<int, std::vector<BigInt>>>& terms,
                               int prec_units);
  static Scalar uniformizer(FieldPtr field);

  const FieldPtr& field() const { return field_; }

  // Observed valuation in uniformizer units, capped at the known precision.
  int valuation_units() const;
  Valuation valuation() const;  // infinity when zero at known precision
  int precision_units() const { return prec_; }
  Valuation precision() const { return field_->units_to_valuation(prec_); }
  bool is_zero_at_precision() const;
  bool distinguishable_from_zero() const { return valuation_units() < prec_; }

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator/(const Scalar& rhs) const;  // DivisionBelowPrecision on ~0 divisor
  Scalar inverse() const;
  Scalar pow(unsigned long k) const;

  // Exact multiplication by pi^k (k may be negative); precision shifts with
  // the value and is re-capped at the field bound.
  Scalar shifted_by_uniformizer(int k) const;
  Scalar with_precision_cap(int prec_units) const;

  // Congruence modulo pi^(min of the known precisions): the only equality
  // the engine ever asserts.
  bool equal_at_precision(const Scalar& rhs) const;

  // Reduction modulo pi; requires valuation >= 0.
  ResidueElem residue() const;

  // Canonical digit expansion: digits()[k] is the digit of pi^(shift+k), each
  // digit a residue-field representative.  Used for output and for the
  // deterministic orderings.
  struct Digits {
    int start;  // exponent of the first digit
    std::vector<ResidueElem> digits;
    int precision;  // exponent bound: value known modulo pi^precision
  };
  Digits digit_expansion() const;
  std::string to_digit_string() const;

  // Lexicographic comparison of digit expansions truncated at `floor_units`;
  // returns <0, 0, >0.  Used only for deterministic sorting.
  static int compare_digits(const Scalar& a, const Scalar& b, int floor_units);

private:
  Scalar(FieldPtr field, std::vector<BigInt> coords, int shift, int prec);
  void normalize();
  int coord_cap() const;  // coords kept reduced mod p^coord_cap

  FieldPtr field_;
  std::vector<BigInt> coords_;
  int shift_ = 0;
  int prec_ = 0;
};

// --- p-adic special functions -----------------------------------------------

// log(a) for v(a - 1) > 0, by the alternating series, truncated at the
// precision floor.  Throws LogDomainError outside the domain.
Scalar padic_log(const Scalar& a);

// exp(a) for v(a) > 1/(p-1).  This convergence-domain exponential is the
// engine's fixed choice of exponential; ExpDomainError outside.
Scalar padic_exp(const Scalar& a);

// Z_p with the field's precision cap: an integer modulo p^N.
class ZpElement {
public:
  static ZpElement from_integer(FieldPtr field, const BigInt& n);
  static ZpElement from_digits(FieldPtr field, const std::vector<long>& digits);

  const FieldPtr& field() const { return field_; }
  const BigInt& representative() const { return value_; }  // in [0, p^N)
  std::vector<long> digits() const;

  ZpElement operator+(const ZpElement& rhs) const;
  ZpElement operator-(const ZpElement& rhs) const;
  ZpElement operator*(const ZpElement& rhs) const;

  Scalar embed() const;

private:
  ZpElement(FieldPtr field, BigInt value) : field_(std::move(field)), value_(std::move(value)) {}
  FieldPtr field_;
  BigInt value_;
};

// gamma (gamma-1) ... (gamma-k+1) / k!, integral for gamma in Z_p.
Scalar binomial_zp(const ZpElement& gamma, unsigned k);

// lambda^z = exp(z log lambda) for lambda = 1 mod p (mod 4 when p = 2);
// CharacterAdmissibilityError otherwise.
Scalar zp_scalar_power(const Scalar& lambda, const ZpElement& z);

bool is_admissible_character_value(const Scalar& lambda);

}  // namespace abeloid
