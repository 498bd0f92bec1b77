#pragma once

#include <vector>

#include "abeloid/matrix.hpp"

namespace abeloid {

// Polynomial over K, ascending coefficients.  Characteristic polynomials are
// monic with the leading 1 stored explicitly.
class PolyK {
public:
  PolyK(FieldPtr field, std::vector<Scalar> coeffs);
  static PolyK from_roots(FieldPtr field, const std::vector<Scalar>& roots);  // monic

  const FieldPtr& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& coeff(int k) const { return coeffs_[k]; }
  bool is_monic_at_precision() const;

  Scalar eval(const Scalar& x) const;
  PolyK derivative() const;
  // Taylor shift: returns g with g(y) = f(c + y).
  PolyK shifted(const Scalar& c) const;
  // Synthetic division by (x - r): returns the quotient, dropping the
  // (precision-floor zero) remainder.
  PolyK deflate(const Scalar& r) const;

  int precision_floor_units() const;

private:
  FieldPtr field_;
  std::vector<Scalar> coeffs_;
};

// Monic characteristic polynomial by the Samuelson-Berkowitz scheme of
// iterated Toeplitz products: no divisions, so the only precision loss is
// multiplication accumulation.
PolyK charpoly(const MatrixK& m);

// All roots with multiplicity for monic f whose roots lie in 1 + m (caller
// contract).  Digit-by-digit residue enumeration with Hensel acceleration on
// simple factors; multiplicity via repeated deflation.  RootsNotInField when
// some root does not lie in the configured field.
std::vector<Scalar> roots_in_principal_units(const PolyK& f);

}  // namespace abeloid
