#pragma once

#include "abeloid/rep.hpp"

namespace abeloid {

// Koszul complex K -> K^r -> ... -> wedge^d K^r -> ... -> K computing
// continuous group cohomology of Z_p^r acting on K through the character with
// values gamma_i.  Exterior basis: subsets of {1..r} in colex order; sign of
// the i-th insertion is (-1)^(number of elements of S below i).
struct KoszulComplex {
  int r = 0;
  std::vector<Scalar> gammas;
  // differentials[d] maps wedge^d -> wedge^(d+1), shape binom(r,d+1) x binom(r,d)
  std::vector<MatrixK> differentials;
};

KoszulComplex build_koszul(const std::vector<Scalar>& gammas);

// dim H^d for d = 0..r via kernel ranks at the module tolerance (optional
// override in uniformizer units).  All-trivial gamma gives binom(r, d); any
// gamma_i != 1 kills every degree.
std::vector<int> koszul_cohomology_dims(const std::vector<Scalar>& gammas,
                                        std::optional<int> tol_units = std::nullopt);

// Ext^1 between line characters: dim H^1 of the Koszul complex on
// chi2(e_i)/chi1(e_i).  Equal characters give 2g, distinct give 0.
int ext1_line(const CharacterTuple& chi1, const CharacterTuple& chi2,
              std::optional<int> tol_units = std::nullopt);

// Subsets of {0..r-1} of size d in colex order (the basis ordering).
std::vector<std::vector<int>> colex_subsets(int r, int d);

}  // namespace abeloid
