#pragma once

#include <optional>
#include <random>
#include <vector>

#include "abeloid/model.hpp"
#include "abeloid/poly.hpp"
#include "abeloid/report.hpp"

namespace abeloid {

// Continuous representation of T_p A = Z_p^2g: a tuple of 2g pairwise
// commuting invertible matrices with all eigenvalues in 1 + m (the
// admissibility contract, checked as charpoly = (x-1)^n mod m).
struct PadicRep {
  int n = 0;
  std::vector<MatrixK> generators;  // size 2g

  static PadicRep trivial(FieldPtr field, int n, int num_generators);
  const FieldPtr& field() const { return generators.front().field(); }
  int num_generators() const { return static_cast<int>(generators.size()); }
  bool all_unipotent() const;
  int precision_floor_units() const;
};

struct CharacterTuple {
  std::vector<Scalar> values;  // length 2g

  static CharacterTuple trivial(FieldPtr field, int len);
  const FieldPtr& field() const { return values.front().field(); }
  int length() const { return static_cast<int>(values.size()); }
  bool is_admissible() const;  // every value admissible as a zp power base
  bool equal_at_precision(const CharacterTuple& rhs) const;
  CharacterTuple tensor(const CharacterTuple& rhs) const;  // pointwise product
  PadicRep as_rep() const;                                 // rank-1 representation
};

struct RepBlock {
  CharacterTuple character;
  PadicRep unipotent;  // generators unipotent
  MatrixK basis;       // n x n_i embedding of the block
};

// chi-isotypic decomposition: conjugating the input generators by
// change_of_basis gives the block-diagonal form whose i-th block of
// generator j is chi_i(e_j) * (unipotent_i generator j).  Blocks are sorted
// lexicographically by character digits.
struct BlockDecomposition {
  std::vector<RepBlock> blocks;
  MatrixK change_of_basis;
};

ValidationReport validate_rep(const PadicRep& rho);

// Simultaneous generalized-eigenspace refinement over the generators;
// eigenvalues from roots_in_principal_units of the restricted charpolys.
// CharacterAdmissibilityError if an extracted eigenvalue is not an admissible
// character value (reachable only in ramified fields or at p = 2).
BlockDecomposition decompose_rep(const PadicRep& rho);

// Rebuilds the generators from a decomposition: change_of_basis * blockdiag *
// change_of_basis^-1.
std::vector<MatrixK> reassemble(const BlockDecomposition& d);

PadicRep tensor_rep(const PadicRep& a, const PadicRep& b);
PadicRep dual_rep(const PadicRep& a);
PadicRep dsum_rep(const PadicRep& a, const PadicRep& b);

struct HomSpace {
  int dimension = 0;
  std::vector<MatrixK> basis;  // intertwiners T with T rho(e_j) = rho'(e_j) T
};
HomSpace hom_space(const PadicRep& rho, const PadicRep& rho2,
                   std::optional<int> tol_units = std::nullopt);

// Solution space of T a_k = b_k T for all k (a_k n x n, b_k m x m).
HomSpace joint_hom(const std::vector<MatrixK>& as, const std::vector<MatrixK>& bs,
                   std::optional<int> tol_units = std::nullopt);

// Random invertible linear combination of the given matrices; nullopt after
// `attempts` failures.
std::optional<MatrixK> random_invertible_combination(const std::vector<MatrixK>& basis,
                                                     std::mt19937_64& rng, int attempts = 8);

// Random invertible element of the hom space, probed by random linear
// combinations of the basis; nullopt after `attempts` failures or when the
// hom space is trivial.
std::optional<MatrixK> find_invertible_intertwiner(const PadicRep& rho, const PadicRep& rho2,
                                                   std::mt19937_64& rng, int attempts = 8);

// Unipotent analyticity: Theta(v) = sum_j v_j log rho(e_j) must vanish on
// every omega_basis column; the witness is the first nonzero Theta(w).
struct AnalyticWitness {
  bool analytic = true;
  std::optional<MatrixK> witness;
  int column = -1;  // omega_basis column of the witness
};
AnalyticWitness analytic_test_unipotent(const PadicRep& rho, const AbeloidModel& model);

// Character analyticity: the log functional vanishes on W_Omega.
bool analytic_test_character(const CharacterTuple& chi, const AbeloidModel& model);

// Deterministic comparison key: character digits truncated at floor_units.
int compare_characters(const CharacterTuple& a, const CharacterTuple& b, int floor_units);

}  // namespace abeloid
