#pragma once

#include <random>

#include "abeloid/higgs.hpp"

namespace abeloid {

// Deterministic instance generators.  All sampling goes through the raw
// mt19937_64 stream (no std distributions), so identical seeds give identical
// instances on every platform.

long rand_below(std::mt19937_64& rng, long bound);  // uniform-ish in [0, bound)

// Principal unit 1 + p * (random integral unit); admissible as a character
// value for every p.
Scalar random_principal_unit(FieldPtr field, std::mt19937_64& rng);

// Integral matrix with entries sampled below p^2.
MatrixK random_integral_matrix(FieldPtr field, int rows, int cols, std::mt19937_64& rng);

// Integral matrix invertible at the precision floor (resampled until the
// reduction is invertible).
MatrixK random_invertible_matrix(FieldPtr field, int n, std::mt19937_64& rng);

MatrixK random_strictly_upper(FieldPtr field, int n, std::mt19937_64& rng);

// count pairwise commuting nilpotents, generated as polynomials without
// constant term in one strictly upper triangular matrix.
std::vector<MatrixK> random_commuting_nilpotents(FieldPtr field, int n, int count,
                                                 std::mt19937_64& rng);

// Unipotent representation with 2g commuting generators exp of the above.
PadicRep random_commuting_unipotent_rep(FieldPtr field, int n, int num_generators,
                                        std::mt19937_64& rng);

CharacterTuple random_character(FieldPtr field, int len, std::mt19937_64& rng);

// Direct sum of chi_i (x) U_i over the given blocks, conjugated by a random
// invertible matrix; the reference decomposition is returned alongside.
struct ConstructedRep {
  PadicRep rep;
  std::vector<CharacterTuple> characters;
  std::vector<PadicRep> unipotent_parts;
  MatrixK conjugator;
};
ConstructedRep random_block_rep(FieldPtr field, int g, const std::vector<int>& block_sizes,
                                std::mt19937_64& rng);

// Random abeloid model: random omega and analytic bases whose combined matrix
// has unit determinant (so the correspondence's exponential corrections stay
// in the convergence domain).
AbeloidModel random_model(FieldPtr field, int g, std::mt19937_64& rng);

// Same model with a fresh random complement for the same Hodge subspace.
AbeloidModel with_random_complement(const AbeloidModel& base, std::mt19937_64& rng);

// Random unipotent Higgs datum: 2g commuting nilpotents split into logs and
// Higgs fields.
UnipotentHiggs random_unipotent_higgs(FieldPtr field, int n, int g, std::mt19937_64& rng);

// Random Higgs model with pairwise distinct line parts.
HiggsModel random_higgs_model(FieldPtr field, const AbeloidModel& model,
                              const std::vector<int>& block_sizes, std::mt19937_64& rng);

}  // namespace abeloid
