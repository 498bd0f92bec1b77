#pragma once

#include <optional>

#include "abeloid/matrix.hpp"

namespace abeloid {

// Rank decisions use an explicit valuation tolerance (in uniformizer units):
// an entry counts as zero iff its valuation is certified >= tol.  The default
// is two uniformizer powers below the precision floor of the input.
int default_tol_units(const MatrixK& m);

// Basis of the right kernel as matrix columns, by valuation-pivoted
// elimination; each basis vector has a coordinate normalized to 1.
// PrecisionExhausted when an elimination step cannot distinguish a pivot from
// zero within the floor.
MatrixK kernel_basis(const MatrixK& m, std::optional<int> tol_units = std::nullopt);

int rank(const MatrixK& m, std::optional<int> tol_units = std::nullopt);

// Solves A X = B (A full column rank on consistent systems).
MatrixK solve_linear(const MatrixK& a, const MatrixK& b,
                     std::optional<int> tol_units = std::nullopt);

bool is_invertible(const MatrixK& a, std::optional<int> tol_units = std::nullopt);
MatrixK inverse(const MatrixK& a, std::optional<int> tol_units = std::nullopt);

// Basis of ker((M - lambda I)^n), n = dim.
MatrixK generalized_eigenspace(const MatrixK& m, const Scalar& lambda,
                               std::optional<int> tol_units = std::nullopt);

}  // namespace abeloid
