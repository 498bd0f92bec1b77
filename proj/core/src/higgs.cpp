#include "abeloid/higgs.hpp"

#include <algorithm>

#include "abeloid/errors.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/unipotent.hpp"

namespace abeloid {

UnipotentHiggs UnipotentHiggs::zero(FieldPtr field, int n, int g) {
  UnipotentHiggs u;
  u.n = n;
  u.analytic_logs.assign(g, MatrixK(field, n, n));
  u.higgs_fields.assign(g, MatrixK(field, n, n));
  return u;
}

HiggsLine HiggsLine::trivial(FieldPtr field, int g) {
  HiggsLine l;
  l.analytic_character = CharacterTuple::trivial(field, 2 * g);
  l.theta_line.assign(g, Scalar::zero(field));
  return l;
}

bool HiggsLine::equal_at_precision(const HiggsLine& rhs) const {
  if (!analytic_character.equal_at_precision(rhs.analytic_character)) return false;
  if (theta_line.size() != rhs.theta_line.size()) return false;
  for (std::size_t i = 0; i < theta_line.size(); ++i)
    if (!theta_line[i].equal_at_precision(rhs.theta_line[i])) return false;
  return true;
}

int HiggsModel::rank() const {
  int r = 0;
  for (const HiggsBlock& b : blocks) r += b.unipotent.n;
  return r;
}

namespace {

std::vector<MatrixK> all_block_matrices(const UnipotentHiggs& u) {
  std::vector<MatrixK> ms = u.analytic_logs;
  ms.insert(ms.end(), u.higgs_fields.begin(), u.higgs_fields.end());
  return ms;
}

int compare_lines(const HiggsLine& a, const HiggsLine& b, int floor_units) {
  int c = compare_characters(a.analytic_character, b.analytic_character, floor_units);
  if (c != 0) return c;
  for (std::size_t i = 0; i < std::min(a.theta_line.size(), b.theta_line.size()); ++i) {
    c = Scalar::compare_digits(a.theta_line[i], b.theta_line[i], floor_units);
    if (c != 0) return c;
  }
  return static_cast<int>(a.theta_line.size()) - static_cast<int>(b.theta_line.size());
}

}  // namespace

ValidationReport validate_higgs(const HiggsModel& h, const AbeloidModel& model) {
  if (h.blocks.empty()) return ValidationReport::fail("no blocks");
  const int g = model.g;
  for (std::size_t bi = 0; bi < h.blocks.size(); ++bi) {
    const HiggsBlock& b = h.blocks[bi];
    std::string tag = "block " + std::to_string(bi + 1);
    if (b.line.analytic_character.length() != 2 * g)
      return ValidationReport::fail(tag + ": analytic character has wrong length");
    if (static_cast<int>(b.line.theta_line.size()) != g)
      return ValidationReport::fail(tag + ": theta_line has wrong length");
    if (static_cast<int>(b.unipotent.analytic_logs.size()) != g ||
        static_cast<int>(b.unipotent.higgs_fields.size()) != g)
      return ValidationReport::fail(tag + ": unipotent part needs g logs and g Higgs fields");
    std::vector<MatrixK> ms = all_block_matrices(b.unipotent);
    for (const MatrixK& m : ms) {
      if (m.rows() != b.unipotent.n || m.cols() != b.unipotent.n)
        return ValidationReport::fail(tag + ": matrix of wrong shape");
      if (!is_nilpotent(m)) return ValidationReport::fail(tag + ": matrix is not nilpotent");
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j)
        if (!commute(ms[i], ms[j]))
          return ValidationReport::fail(tag + ": theta and log matrices do not all commute");
    if (!b.line.analytic_character.is_admissible())
      return ValidationReport::fail(tag + ": analytic character is not admissible");
    if (!analytic_test_character(b.line.analytic_character, model))
      return ValidationReport::fail(tag +
                                    ": line character is not analytic (log functional does not "
                                    "vanish on the Hodge subspace)");
  }
  for (std::size_t i = 0; i < h.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < h.blocks.size(); ++j)
      if (h.blocks[i].line.equal_at_precision(h.blocks[j].line))
        return ValidationReport::fail("blocks " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) +
                                      " share their line part and must be merged");
  return ValidationReport::ok();
}

UnipotentHiggs unipotent_rep_to_higgs(const PadicRep& rho, const AbeloidModel& model) {
  if (!rho.all_unipotent())
    throw InvalidInput("unipotent_rep_to_higgs", "generators must be unipotent");
  if (rho.num_generators() != 2 * model.g)
    throw InvalidInput("unipotent_rep_to_higgs", "generator count does not match the model");
  const FieldPtr& field = rho.field();
  std::vector<MatrixK> logs;
  logs.reserve(rho.generators.size());
  for (const MatrixK& gen : rho.generators)
    logs.push_back(matrix_log(UnipotentMatrix(gen)).matrix());
  auto theta_of = [&](const MatrixK& basis, int col) {
    MatrixK acc(field, rho.n, rho.n);
    for (int j = 0; j < 2 * model.g; ++j) acc = acc + logs[j].scaled(basis.at(j, col));
    return acc;
  };
  UnipotentHiggs out;
  out.n = rho.n;
  for (int i = 0; i < model.g; ++i) out.analytic_logs.push_back(theta_of(model.analytic_basis, i));
  for (int i = 0; i < model.g; ++i) out.higgs_fields.push_back(theta_of(model.omega_basis, i));
  return out;
}

PadicRep unipotent_higgs_to_rep(const UnipotentHiggs& u, const AbeloidModel& model) {
  const FieldPtr& field = model.field();
  const int g = model.g;
  // coefficients of each standard basis vector in [analytic | omega]
  MatrixK combined = MatrixK::hcat(model.analytic_basis, model.omega_basis);
  MatrixK coeffs = solve_linear(combined, MatrixK::identity(field, 2 * g));
  PadicRep out;
  out.n = u.n;
  for (int j = 0; j < 2 * g; ++j) {
    MatrixK theta(field, u.n, u.n);
    for (int i = 0; i < g; ++i) {
      theta = theta + u.analytic_logs[i].scaled(coeffs.at(i, j));
      theta = theta + u.higgs_fields[i].scaled(coeffs.at(g + i, j));
    }
    out.generators.push_back(matrix_exp(NilpotentMatrix(std::move(theta))).matrix());
  }
  return out;
}

HiggsLine char_to_higgs_line(const CharacterTuple& chi, const AbeloidModel& model) {
  if (!chi.is_admissible())
    throw CharacterAdmissibilityError("char_to_higgs_line", "character is not admissible");
  if (chi.length() != 2 * model.g)
    throw InvalidInput("char_to_higgs_line", "character length does not match the model");
  const FieldPtr& field = chi.field();
  const int g = model.g;
  std::vector<Scalar> logs;
  logs.reserve(chi.values.size());
  for (const Scalar& v : chi.values) logs.push_back(padic_log(v));
  HiggsLine out;
  // theta_line_i = ell(w_i) on the omega_basis columns
  for (int i = 0; i < g; ++i) {
    Scalar ell = Scalar::zero(field);
    for (int j = 0; j < 2 * g; ++j) ell = ell + logs[j] * model.omega_basis.at(j, i);
    out.theta_line.push_back(ell);
  }
  // e_j = a_j + omega_j in W_an + W_Omega; the correction is exp(-ell(omega_j))
  MatrixK combined = MatrixK::hcat(model.analytic_basis, model.omega_basis);
  MatrixK coeffs = solve_linear(combined, MatrixK::identity(field, 2 * g));
  for (int j = 0; j < 2 * g; ++j) {
    Scalar ell_omega = Scalar::zero(field);
    for (int i = 0; i < g; ++i) ell_omega = ell_omega + coeffs.at(g + i, j) * out.theta_line[i];
    out.analytic_character.values.push_back(chi.values[j] * padic_exp(-ell_omega));
  }
  return out;
}

CharacterTuple higgs_line_to_char(const HiggsLine& line, const AbeloidModel& model) {
  const FieldPtr& field = model.field();
  const int g = model.g;
  if (line.analytic_character.length() != 2 * g ||
      static_cast<int>(line.theta_line.size()) != g)
    throw InvalidInput("higgs_line_to_char", "line data does not match the model");
  MatrixK combined = MatrixK::hcat(model.analytic_basis, model.omega_basis);
  MatrixK coeffs = solve_linear(combined, MatrixK::identity(field, 2 * g));
  CharacterTuple out;
  for (int j = 0; j < 2 * g; ++j) {
    Scalar ell_omega = Scalar::zero(field);
    for (int i = 0; i < g; ++i) ell_omega = ell_omega + coeffs.at(g + i, j) * line.theta_line[i];
    out.values.push_back(line.analytic_character.values[j] * padic_exp(ell_omega));
  }
  return out;
}

HiggsModel rep_to_higgs(const PadicRep& rho, const AbeloidModel& model) {
  BlockDecomposition dec = decompose_rep(rho);
  HiggsModel out;
  for (const RepBlock& b : dec.blocks) {
    HiggsBlock hb{char_to_higgs_line(b.character, model),
                  unipotent_rep_to_higgs(b.unipotent, model)};
    out.blocks.push_back(std::move(hb));
  }
  return out;
}

PadicRep higgs_to_rep(const HiggsModel& h, const AbeloidModel& model) {
  ValidationReport v = validate_higgs(h, model);
  if (!v.pass) throw InvalidInput("higgs_to_rep", "invalid Higgs model: " + v.first_violation);
  PadicRep out;
  bool first = true;
  for (const HiggsBlock& b : h.blocks) {
    CharacterTuple chi = higgs_line_to_char(b.line, model);
    PadicRep unip = unipotent_higgs_to_rep(b.unipotent, model);
    PadicRep block;
    block.n = unip.n;
    for (int j = 0; j < 2 * model.g; ++j)
      block.generators.push_back(unip.generators[j].scaled(chi.values[j]));
    out = first ? block : dsum_rep(out, block);
    first = false;
  }
  return out;
}

SplitResult split_higgs_extension(const std::vector<Scalar>& b, const std::vector<Scalar>& theta,
                                  const std::vector<Scalar>& rho_offdiag,
                                  std::optional<int> tol_units) {
  if (b.empty() || b.size() != theta.size() || rho_offdiag.size() != 2 * b.size())
    throw InvalidInput("split_higgs_extension",
                       "need g entries of b and theta and 2g rep off-diagonals");
  const FieldPtr& field = b.front().field();
  const std::size_t g = b.size();
  int floor = field->precision_cap();
  for (const Scalar& s : b) floor = std::min(floor, s.precision_units());
  for (const Scalar& s : theta) floor = std::min(floor, s.precision_units());
  for (const Scalar& s : rho_offdiag) floor = std::min(floor, s.precision_units());
  int tol = tol_units.value_or(std::max(floor - 2, 1));

  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j)
      if (!(b[i] * theta[j] - b[j] * theta[i]).is_zero_at_precision())
        throw CommutationViolation("split_higgs_extension",
                                   "b_i theta_j != b_j theta_i: the Higgs matrices do not commute",
                                   floor);
  for (const Scalar& r : rho_offdiag)
    for (const Scalar& t : theta)
      if (!(r * t).is_zero_at_precision())
        throw CommutationViolation("split_higgs_extension",
                                   "rep generators do not commute with the Higgs matrices", floor);

  // locate a theta entry distinguishable from zero, of minimal valuation
  int k = -1;
  bool ambiguous = false;
  for (std::size_t i = 0; i < g; ++i) {
    int v = theta[i].valuation_units();
    if (v < tol && theta[i].distinguishable_from_zero()) {
      if (k == -1 || v < theta[k].valuation_units()) k = static_cast<int>(i);
    } else if (v < tol) {
      ambiguous = true;  // zero at its precision, but that precision is below tol
    }
  }
  if (k >= 0) {
    Scalar c = b[k] / theta[k];
    // after conjugating by [[1, c], [0, 1]] every b_i vanishes and the rep is
    // forced trivial
    for (std::size_t i = 0; i < g; ++i)
      if (!(b[i] - c * theta[i]).is_zero_at_precision())
        throw CommutationViolation("split_higgs_extension",
                                   "conjugation does not clear b: commutation constraint "
                                   "violated beyond precision",
                                   floor);
    MatrixK conj = MatrixK::identity(field, 2);
    conj.at(0, 1) = c;
    SplitResult out;
    out.split = true;
    out.conjugation = std::move(conj);
    return out;
  }
  if (ambiguous)
    throw PrecisionExhausted("split_higgs_extension",
                             "theta entries are indistinguishable from zero but not exactly zero",
                             tol);
  // theta = 0: split iff b and the rep off-diagonals all vanish
  bool nonzero = false;
  for (const Scalar& s : b)
    if (s.distinguishable_from_zero() && s.valuation_units() < tol) nonzero = true;
  for (const Scalar& s : rho_offdiag)
    if (s.distinguishable_from_zero() && s.valuation_units() < tol) nonzero = true;
  if (nonzero) return SplitResult{};  // genuinely non-split extension of (O,0) by (O,0)
  SplitResult out;
  out.split = true;
  out.conjugation = MatrixK::identity(field, 2);
  return out;
}

HiggsModel higgs_tensor(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model) {
  const FieldPtr& field = model.field();
  const int g = model.g;
  std::vector<HiggsBlock> raw;
  for (const HiggsBlock& x : a.blocks) {
    for (const HiggsBlock& y : b.blocks) {
      HiggsBlock t;
      t.line.analytic_character = x.line.analytic_character.tensor(y.line.analytic_character);
      for (int i = 0; i < g; ++i)
        t.line.theta_line.push_back(x.line.theta_line[i] + y.line.theta_line[i]);
      t.unipotent.n = x.unipotent.n * y.unipotent.n;
      MatrixK ix = MatrixK::identity(field, x.unipotent.n);
      MatrixK iy = MatrixK::identity(field, y.unipotent.n);
      for (int i = 0; i < g; ++i) {
        t.unipotent.analytic_logs.push_back(x.unipotent.analytic_logs[i].kron(iy) +
                                            ix.kron(y.unipotent.analytic_logs[i]));
        t.unipotent.higgs_fields.push_back(x.unipotent.higgs_fields[i].kron(iy) +
                                           ix.kron(y.unipotent.higgs_fields[i]));
      }
      raw.push_back(std::move(t));
    }
  }
  // re-merge blocks sharing a line part
  HiggsModel out;
  for (HiggsBlock& t : raw) {
    bool absorbed = false;
    for (HiggsBlock& m : out.blocks) {
      if (!m.line.equal_at_precision(t.line)) continue;
      for (int i = 0; i < g; ++i) {
        m.unipotent.analytic_logs[i] =
            m.unipotent.analytic_logs[i].direct_sum(t.unipotent.analytic_logs[i]);
        m.unipotent.higgs_fields[i] =
            m.unipotent.higgs_fields[i].direct_sum(t.unipotent.higgs_fields[i]);
      }
      m.unipotent.n += t.unipotent.n;
      absorbed = true;
      break;
    }
    if (!absorbed) out.blocks.push_back(std::move(t));
  }
  int floor = field->precision_cap();
  for (const HiggsBlock& t : out.blocks) {
    for (const Scalar& s : t.line.analytic_character.values)
      floor = std::min(floor, s.precision_units());
    for (const Scalar& s : t.line.theta_line) floor = std::min(floor, s.precision_units());
  }
  std::stable_sort(out.blocks.begin(), out.blocks.end(),
                   [&](const HiggsBlock& x, const HiggsBlock& y) {
                     return compare_lines(x.line, y.line, floor) < 0;
                   });
  return out;
}

std::vector<MatrixK> total_higgs_matrices(const HiggsModel& h, const AbeloidModel& model) {
  const FieldPtr& field = model.field();
  std::vector<MatrixK> out;
  for (int i = 0; i < model.g; ++i) {
    MatrixK total(field, 0, 0);
    for (const HiggsBlock& b : h.blocks) {
      MatrixK blockmat = MatrixK::identity(field, b.unipotent.n).scaled(b.line.theta_line[i]) +
                         b.unipotent.higgs_fields[i];
      total = total.direct_sum(blockmat);
    }
    out.push_back(std::move(total));
  }
  return out;
}

int higgs_hom_dim(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model,
                  std::optional<int> tol_units) {
  PadicRep ra = higgs_to_rep(a, model);
  PadicRep rb = higgs_to_rep(b, model);
  std::vector<MatrixK> as = ra.generators, bs = rb.generators;
  std::vector<MatrixK> ta = total_higgs_matrices(a, model), tb = total_higgs_matrices(b, model);
  as.insert(as.end(), ta.begin(), ta.end());
  bs.insert(bs.end(), tb.begin(), tb.end());
  return joint_hom(as, bs, tol_units).dimension;
}

bool higgs_isomorphic(const HiggsModel& a, const HiggsModel& b, const AbeloidModel& model,
                      std::mt19937_64& rng, int attempts) {
  if (a.rank() != b.rank()) return false;
  PadicRep ra = higgs_to_rep(a, model);
  PadicRep rb = higgs_to_rep(b, model);
  std::vector<MatrixK> as = ra.generators, bs = rb.generators;
  std::vector<MatrixK> ta = total_higgs_matrices(a, model), tb = total_higgs_matrices(b, model);
  as.insert(as.end(), ta.begin(), ta.end());
  bs.insert(bs.end(), tb.begin(), tb.end());
  HomSpace hom = joint_hom(as, bs);
  if (hom.dimension == 0) return false;
  return random_invertible_combination(hom.basis, rng, attempts).has_value();
}

}  // namespace abeloid
