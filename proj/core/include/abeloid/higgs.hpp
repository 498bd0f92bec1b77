#pragma once

#include <random>

#include "abeloid/rep.hpp"

namespace abeloid {

// Unipotent Higgs data of rank n: the K-linear log of the algebraic
// representation evaluated on the analytic_basis columns, and the Higgs field
// evaluated on the omega_basis columns.  All 2g matrices are nilpotent and
// commute pairwise.
struct UnipotentHiggs {
  int n = 0;
  std::vector<MatrixK> analytic_logs;  // g matrices
  std::vector<MatrixK> higgs_fields;   // g matrices

  static UnipotentHiggs zero(FieldPtr field, int n, int g);
  const FieldPtr& field() const {
    return analytic_logs.empty() ? higgs_fields.front().field() : analytic_logs.front().field();
  }
  int g() const { return static_cast<int>(analytic_logs.size()); }
};

// Higgs line datum: an analytic character (log functional vanishing on
// W_Omega) and the coordinates of theta_L in the basis dual to omega_basis.
struct HiggsLine {
  CharacterTuple analytic_character;
  std::vector<Scalar> theta_line;  // g scalars

  static HiggsLine trivial(FieldPtr field, int g);
  bool equal_at_precision(const HiggsLine& rhs) const;
};

struct HiggsBlock {
  HiggsLine line;
  UnipotentHiggs unipotent;
};

struct HiggsModel {
  std::vector<HiggsBlock> blocks;
  int rank() const;
};

ValidationReport validate_higgs(const HiggsModel& h, const AbeloidModel& model);

// The unipotent arm of the correspondence: log the generators, read Theta on
// the two chosen bases / rebuild the generators as exp of the recombined
// logs.  Mutually inverse at the precision floor.
UnipotentHiggs unipotent_rep_to_higgs(const PadicRep& rho, const AbeloidModel& model);
PadicRep unipotent_higgs_to_rep(const UnipotentHiggs& u, const AbeloidModel& model);

// The line arm: chi <-> (analytic character, theta_L) through the chosen
// exponential and Hodge-Tate splitting.  ExpDomainError when a correction
// term falls outside the exponential's convergence domain.
HiggsLine char_to_higgs_line(const CharacterTuple& chi, const AbeloidModel& model);
CharacterTuple higgs_line_to_char(const HiggsLine& line, const AbeloidModel& model);

// Full correspondence: decompose, then apply both arms per block.  Blocks of
// rep_to_higgs follow the decomposition order (sorted by source character
// digits), which keeps the output order independent of the splitting.
HiggsModel rep_to_higgs(const PadicRep& rho, const AbeloidModel& model);
PadicRep higgs_to_rep(const HiggsModel& h, const AbeloidModel& model);

// Rank-2 extension data of (O, 0) by (O, theta): Higgs matrices
// [[0, b_i], [0, theta_i]] and rep generators [[1, rho_j], [0, 1]].
// When theta != 0 the returned conjugation [[1, b_k/theta_k], [0, 1]] kills b
// and the off-diagonal rep entries; when theta = 0 and (b, rho) != 0 the
// extension is genuinely non-split.
struct SplitResult {
  bool split = false;
  std::optional<MatrixK> conjugation;  // present iff split
};
SplitResult split_higgs_extension(const std::vector<Scalar>& b, const std::vector<Scalar>& theta,
                                  const std::vector<Scalar>& rho_offdiag,
                                  std::optional<int> tol_units = std::nullopt);

// Blockwise tensor with the Leibniz-rule Higgs field, re-merged by line part.
HiggsModel higgs_tensor(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model);

// Dimension of Hom as Higgs bundles: intertwiners of the associated
// representations additionally commuting with the total Higgs matrices.
int higgs_hom_dim(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model,
                  std::optional<int> tol_units = std::nullopt);

// Total Higgs matrices of the direct sum of blocks (theta_L on the diagonal
// plus the unipotent fields), one n x n matrix per omega direction.
std::vector<MatrixK> total_higgs_matrices(const HiggsModel& h, const AbeloidModel& model);

// Isomorphism probe: invertible rep intertwiner commuting with the total
// Higgs matrices on both sides.
bool higgs_isomorphic(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model,
                      std::mt19937_64& rng, int attempts = 8);

}  // namespace abeloid
