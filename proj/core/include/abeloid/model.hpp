#pragma once

#include <vector>

#include "abeloid/matrix.hpp"
#include "abeloid/report.hpp"

namespace abeloid {

// Desk-scale model of an abeloid variety of dimension g: the ambient space
// K^2g plays T_p A tensor K, omega_basis spans the Hodge subspace W_Omega
// (image of H^0(A, Omega~^1)^*), analytic_basis spans the chosen complement
// W_an (the Hodge-Tate splitting).  In the ordinary case W_Omega is the span
// of standard basis vectors at the canonical directions.
struct AbeloidModel {
  int g = 1;
  MatrixK omega_basis;     // 2g x g
  MatrixK analytic_basis;  // 2g x g
  bool ordinary = false;
  std::vector<int> canonical_directions;  // 1-based indices into 1..2g, size g when ordinary

  AbeloidModel(int g_, MatrixK omega, MatrixK analytic)
      : g(g_), omega_basis(std::move(omega)), analytic_basis(std::move(analytic)) {}

  const FieldPtr& field() const { return omega_basis.field(); }

  // [omega | analytic], the direct-sum decomposition; must be invertible.
  MatrixK combined_basis() const { return MatrixK::hcat(omega_basis, analytic_basis); }

  ValidationReport validate() const;

  // Ordinary model with W_Omega the span of the standard vectors at
  // `directions` and W_an the span of the complementary ones.
  static AbeloidModel standard_ordinary(FieldPtr field, int g,
                                        const std::vector<int>& directions);
};

}  // namespace abeloid
