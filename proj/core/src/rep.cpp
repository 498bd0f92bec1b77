#include "abeloid/rep.hpp"

#include <algorithm>

#include "abeloid/errors.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/unipotent.hpp"
#include <cstdlib>
#include <iostream>

namespace abeloid {

PadicRep PadicRep::trivial(FieldPtr field, int n, int num_generators) {
  PadicRep r;
  r.n = n;
  r.generators.assign(num_generators, MatrixK::identity(field, n));
  return r;
}

bool PadicRep::all_unipotent() const {
  return std::all_of(generators.begin(), generators.end(),
                     [](const MatrixK& m) { return is_unipotent(m); });
}

int PadicRep::precision_floor_units() const {
  int floor = field()->precision_cap();
  for (const MatrixK& m : generators) floor = std::min(floor, m.precision_floor_units());
  return floor;
}

CharacterTuple CharacterTuple::trivial(FieldPtr field, int len) {
  CharacterTuple c;
  c.values.assign(len, Scalar::one(field));
  return c;
}

bool CharacterTuple::is_admissible() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Scalar& v) { return is_admissible_character_value(v); });
}

bool CharacterTuple::equal_at_precision(const CharacterTuple& rhs) const {
  if (length() != rhs.length()) return false;
  for (int j = 0; j < length(); ++j)
    if (!values[j].equal_at_precision(rhs.values[j])) return false;
  return true;
}

CharacterTuple CharacterTuple::tensor(const CharacterTuple& rhs) const {
  if (length() != rhs.length()) throw InvalidInput("character tensor", "length mismatch");
  CharacterTuple out;
  out.values.reserve(values.size());
  for (int j = 0; j < length(); ++j) out.values.push_back(values[j] * rhs.values[j]);
  return out;
}

PadicRep CharacterTuple::as_rep() const {
  PadicRep r;
  r.n = 1;
  for (const Scalar& v : values) {
    MatrixK m(field(), 1, 1);
    m.at(0, 0) = v;
    r.generators.push_back(std::move(m));
  }
  return r;
}

int compare_characters(const CharacterTuple& a, const CharacterTuple& b, int floor_units) {
  for (int j = 0; j < std::min(a.length(), b.length()); ++j) {
    int c = Scalar::compare_digits(a.values[j], b.values[j], floor_units);
    if (c != 0) return c;
  }
  return a.length() - b.length();
}

ValidationReport validate_rep(const PadicRep& rho) {
  if (rho.generators.empty()) return ValidationReport::fail("no generators");
  if (rho.num_generators() % 2 != 0)
    return ValidationReport::fail("generator count must be 2g");
  for (int j = 0; j < rho.num_generators(); ++j) {
    const MatrixK& m = rho.generators[j];
    if (m.rows() != rho.n || m.cols() != rho.n)
      return ValidationReport::fail("generator " + std::to_string(j + 1) + " has wrong shape");
  }
  std::vector<PolyK> cps;
  cps.reserve(rho.num_generators());
  for (int j = 0; j < rho.num_generators(); ++j) cps.push_back(charpoly(rho.generators[j]));
  for (int j = 0; j < rho.num_generators(); ++j) {
    // invertible iff the constant coefficient is distinguishable from zero
    if (!cps[j].coeff(0).distinguishable_from_zero())
      return ValidationReport::fail("generator " + std::to_string(j + 1) +
                                    " is not invertible at precision");
  }
  for (int j = 0; j < rho.num_generators(); ++j)
    for (int k = j + 1; k < rho.num_generators(); ++k)
      if (!commute(rho.generators[j], rho.generators[k]))
        return ValidationReport::fail("generators " + std::to_string(j + 1) + " and " +
                                      std::to_string(k + 1) + " do not commute");
  // admissibility: charpoly = (x-1)^n modulo the maximal ideal
  const FieldPtr& field = rho.field();
  PolyK reference = PolyK::from_roots(field, std::vector<Scalar>(rho.n, Scalar::one(field)));
  for (int j = 0; j < rho.num_generators(); ++j) {
    for (int k = 0; k <= rho.n; ++k) {
      Scalar diff = cps[j].coeff(k) - reference.coeff(k);
      if (diff.distinguishable_from_zero() && diff.valuation_units() < 1)
        return ValidationReport::fail("generator " + std::to_string(j + 1) +
                                      " violates admissibility: eigenvalues not in 1 + m");
    }
  }
  return ValidationReport::ok();
}

namespace {

// Matrix of the restriction of m to the invariant subspace spanned by the
// columns of basis: solves basis * X = m * basis.
MatrixK restrict_to(const MatrixK& m, const MatrixK& basis) {
  return solve_linear(basis, m * basis);
}

// Rescales every column to unit content (integral with some unit entry);
// spans are unchanged and downstream solves stay well conditioned.
MatrixK normalize_columns(const MatrixK& basis) {
  const FieldPtr& field = basis.field();
  MatrixK out(field, basis.rows(), basis.cols());
  for (int j = 0; j < basis.cols(); ++j) {
    int minval = field->precision_cap();
    for (int i = 0; i < basis.rows(); ++i)
      if (basis.at(i, j).distinguishable_from_zero())
        minval = std::min(minval, basis.at(i, j).valuation_units());
    if (minval == field->precision_cap()) minval = 0;
    for (int i = 0; i < basis.rows(); ++i)
      out.at(i, j) = basis.at(i, j).shifted_by_uniformizer(-minval);
  }
  return out;
}

struct EigenClass {
  Scalar value;
  int multiplicity;
};

std::vector<EigenClass> eigen_classes(const std::vector<Scalar>& roots) {
  std::vector<EigenClass> out;
  for (const Scalar& r : roots) {
    bool seen = false;
    for (EigenClass& c : out)
      if (r.equal_at_precision(c.value)) {
        ++c.multiplicity;
        seen = true;
      }
    if (!seen) out.push_back({r, 1});
  }
  return out;
}

// ker((x - lambda)^mult), expected to have dimension = mult.  The right rank
// tolerance must sit between the cross-class valuations and the eigenvalue's
// precision; scan downward from the floor for the largest one that yields the
// expected dimension (blocks are certified afterwards by the admissibility
// and unipotency checks).
std::optional<MatrixK> eigenclass_subspace(const MatrixK& x, const EigenClass& cls) {
  MatrixK shifted = x - MatrixK::identity(x.field(), x.rows()).scaled(cls.value);
  MatrixK powered = shifted.pow(static_cast<unsigned>(cls.multiplicity));
  for (int tol = std::max(powered.precision_floor_units(), 1); tol >= 1; --tol) {
    try {
      MatrixK sub = kernel_basis(powered, tol);
      if (sub.cols() == cls.multiplicity) return sub;
    } catch (const Error&) {
      // ambiguous pivots or exhausted quotients at this tolerance: keep going
    }
  }
  return std::nullopt;
}

// Reads the subspace as character times unipotent: the character value per
// generator is trace/dim (single eigenvalue), certified by dividing it off
// and checking unipotency.  nullopt when the subspace is still mixed; a mixed
// block's trace can cancel arbitrarily deep, so every precision failure here
// just means "not a clean block yet".
std::optional<RepBlock> try_finalize(const PadicRep& rho, const MatrixK& basis) {
  RepBlock b{CharacterTuple{}, PadicRep{}, basis};
  b.unipotent.n = basis.cols();
  for (const MatrixK& gen : rho.generators) {
    Scalar lambda = Scalar::zero(rho.field());
    MatrixK unip(rho.field(), 0, 0);
    try {
      MatrixK rest = restrict_to(gen, basis);
      lambda = rest.trace() / Scalar::from_integer(rho.field(), BigInt(basis.cols()));
      if (!lambda.distinguishable_from_zero() || lambda.valuation_units() != 0)
        return std::nullopt;
      unip = rest.scaled(lambda.inverse());
      if (!is_unipotent(unip)) return std::nullopt;
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!is_admissible_character_value(lambda))
      throw CharacterAdmissibilityError(
          "decompose_rep",
          "eigenvalue lies in 1 + m but is not an admissible character value "
          "(not congruent to 1 modulo p)");
    b.character.values.push_back(std::move(lambda));
    b.unipotent.generators.push_back(std::move(unip));
  }
  return b;
}

// Splits a mixed invariant subspace along a random element of the commutant
// of the restricted family.  Generic commutant elements have simple spectrum,
// so their eigenvalues Hensel-lift at full precision; the character clusters
// of the generators themselves would only be recoverable at a fraction of the
// working precision.  Over-splitting is harmless: equal characters re-merge.
void split_blocks(const PadicRep& rho, const MatrixK& basis, std::mt19937_64& rng,
                  std::vector<RepBlock>& out, int depth) {
  if (std::optional<RepBlock> done = try_finalize(rho, basis)) {
    if (std::getenv("ABELOID_TRACE_SPLIT")) {
      std::cerr << "[finalize depth=" << depth << " dim=" << basis.cols() << " char v(l-1):";
      for (auto& v : done->character.values) std::cerr << " " << (v - Scalar::one(rho.field())).valuation_units() << "@" << v.precision_units();
      std::cerr << "]\n";
    }
    out.push_back(std::move(*done));
    return;
  }
  if (std::getenv("ABELOID_TRACE_SPLIT"))
    std::cerr << "[split depth=" << depth << " dim=" << basis.cols() << "]\n";
  const FieldPtr& field = rho.field();
  const int k = basis.cols();
  if (k <= 1 || depth > rho.n)
    throw PrecisionExhausted("decompose_rep", "cannot certify a rank-1 block",
                             basis.precision_floor_units());
  std::vector<MatrixK> rest_gens;
  rest_gens.reserve(rho.generators.size());
  for (const MatrixK& gen : rho.generators) rest_gens.push_back(restrict_to(gen, basis));
  HomSpace commutant = joint_hom(rest_gens, rest_gens);
  for (int attempt = 0; attempt < 32; ++attempt) {
    MatrixK x(field, k, k);
    for (const MatrixK& t : commutant.basis) {
      long c = static_cast<long>(rng() % 256);
      x = x + t.scaled(Scalar::from_integer(field, BigInt(c)));
    }
    // normalize to an integral matrix with a unit-scale entry
    int minval = field->precision_cap();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (x.at(i, j).distinguishable_from_zero())
          minval = std::min(minval, x.at(i, j).valuation_units());
    if (minval == field->precision_cap()) continue;
    if (minval != 0) {
      MatrixK scaled(field, k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) scaled.at(i, j) = x.at(i, j).shifted_by_uniformizer(-minval);
      x = std::move(scaled);
    }
    try {
      std::vector<EigenClass> classes = eigen_classes(roots_in_principal_units(charpoly(x)));
      if (std::getenv("ABELOID_TRACE_SPLIT")) {
        std::cerr << "[attempt " << attempt << " classes=" << classes.size() << " mults:";
        for (auto& c : classes) std::cerr << " " << c.multiplicity << "@" << c.value.precision_units();
        std::cerr << "]\n";
      }
      if (classes.size() <= 1) continue;
      std::vector<MatrixK> subs;
      bool complete = true;
      int total = 0;
      for (const EigenClass& cls : classes) {
        std::optional<MatrixK> sub = eigenclass_subspace(x, cls);
        if (!sub) {
          complete = false;
          break;
        }
        total += sub->cols();
        subs.push_back(std::move(*sub));
      }
      if (!complete || total != k) continue;
      // the whole recursive split must go through on this candidate; any
      // precision failure below means the split was spurious, so resample
      std::vector<RepBlock> candidate;
      for (const MatrixK& sub : subs)
        split_blocks(rho, normalize_columns(basis * sub), rng, candidate, depth + 1);
      for (RepBlock& b : candidate) out.push_back(std::move(b));
      return;
    } catch (const CharacterAdmissibilityError&) {
      throw;  // a genuine domain condition, not a numerical artifact
    } catch (const Error&) {
      // spectrum outside the field, ambiguous pivots, exhausted quotients:
      // resample the commutant element
    }
  }
  throw PrecisionExhausted("decompose_rep",
                           "failed to split a mixed block along the commutant",
                           basis.precision_floor_units());
}

}  // namespace

BlockDecomposition decompose_rep(const PadicRep& rho) {
  ValidationReport v = validate_rep(rho);
  if (!v.pass) throw InvalidInput("decompose_rep", "invalid representation: " + v.first_violation);
  const FieldPtr& field = rho.field();

  // fixed seed: decompositions are deterministic function of the input
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<RepBlock> blocks;
  split_blocks(rho, MatrixK::identity(field, rho.n), rng, blocks, 0);

  // merge blocks with equal characters (defensive: refinement already
  // separates by eigenvalue) and sort lexicographically by character digits
  std::vector<RepBlock> merged;
  for (RepBlock& b : blocks) {
    bool absorbed = false;
    for (RepBlock& m : merged) {
      if (!m.character.equal_at_precision(b.character)) continue;
      for (int j = 0; j < rho.num_generators(); ++j)
        m.unipotent.generators[j] = m.unipotent.generators[j].direct_sum(b.unipotent.generators[j]);
      m.unipotent.n += b.unipotent.n;
      m.basis = MatrixK::hcat(m.basis, b.basis);
      absorbed = true;
      break;
    }
    if (!absorbed) merged.push_back(std::move(b));
  }

  int floor = rho.precision_floor_units();
  std::stable_sort(merged.begin(), merged.end(), [&](const RepBlock& a, const RepBlock& b) {
    return compare_characters(a.character, b.character, floor) < 0;
  });

  BlockDecomposition out{std::move(merged), MatrixK(field, rho.n, 0)};
  MatrixK cob(field, rho.n, 0);
  for (const RepBlock& b : out.blocks) cob = MatrixK::hcat(cob, b.basis);
  out.change_of_basis = std::move(cob);
  return out;
}

std::vector<MatrixK> reassemble(const BlockDecomposition& d) {
  if (d.blocks.empty()) throw InvalidInput("reassemble", "empty decomposition");
  const FieldPtr& field = d.change_of_basis.field();
  int num_gens = d.blocks.front().character.length();
  std::vector<MatrixK> out;
  MatrixK cob_inv = inverse(d.change_of_basis);
  for (int j = 0; j < num_gens; ++j) {
    MatrixK diag(field, 0, 0);
    for (const RepBlock& b : d.blocks)
      diag = diag.direct_sum(b.unipotent.generators[j].scaled(b.character.values[j]));
    out.push_back(d.change_of_basis * diag * cob_inv);
  }
  return out;
}

PadicRep tensor_rep(const PadicRep& a, const PadicRep& b) {
  if (a.num_generators() != b.num_generators())
    throw InvalidInput("tensor_rep", "generator count mismatch");
  PadicRep out;
  out.n = a.n * b.n;
  for (int j = 0; j < a.num_generators(); ++j)
    out.generators.push_back(a.generators[j].kron(b.generators[j]));
  return out;
}

PadicRep dual_rep(const PadicRep& a) {
  PadicRep out;
  out.n = a.n;
  for (const MatrixK& m : a.generators) out.generators.push_back(inverse(m).transpose());
  return out;
}

PadicRep dsum_rep(const PadicRep& a, const PadicRep& b) {
  if (a.num_generators() != b.num_generators())
    throw InvalidInput("dsum_rep", "generator count mismatch");
  PadicRep out;
  out.n = a.n + b.n;
  for (int j = 0; j < a.num_generators(); ++j)
    out.generators.push_back(a.generators[j].direct_sum(b.generators[j]));
  return out;
}

HomSpace joint_hom(const std::vector<MatrixK>& as, const std::vector<MatrixK>& bs,
                   std::optional<int> tol_units) {
  if (as.size() != bs.size() || as.empty())
    throw InvalidInput("joint_hom", "operand count mismatch");
  const FieldPtr& field = as.front().field();
  const int n = as.front().rows(), m = bs.front().rows();
  // T a_k = b_k T, vectorized column-major:
  // (a_k^T kron I_m - I_n kron b_k) vec(T) = 0
  MatrixK stacked(field, static_cast<int>(as.size()) * n * m, n * m);
  for (std::size_t k = 0; k < as.size(); ++k) {
    MatrixK block = as[k].transpose().kron(MatrixK::identity(field, m)) -
                    MatrixK::identity(field, n).kron(bs[k]);
    int off = static_cast<int>(k) * n * m;
    for (int i = 0; i < block.rows(); ++i)
      for (int c = 0; c < n * m; ++c) stacked.at(off + i, c) = block.at(i, c);
  }
  MatrixK ker = kernel_basis(stacked, tol_units);
  HomSpace out;
  out.dimension = ker.cols();
  for (int k = 0; k < ker.cols(); ++k) {
    MatrixK t(field, m, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < m; ++r) t.at(r, c) = ker.at(c * m + r, k);
    // rescale to unit content: pi-multiples span the same hom space and stay
    // well conditioned downstream
    int minval = field->precision_cap();
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < m; ++r)
        if (t.at(r, c).distinguishable_from_zero())
          minval = std::min(minval, t.at(r, c).valuation_units());
    if (minval != 0 && minval != field->precision_cap()) {
      MatrixK scaled(field, m, n);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < m; ++r) scaled.at(r, c) = t.at(r, c).shifted_by_uniformizer(-minval);
      t = std::move(scaled);
    }
    out.basis.push_back(std::move(t));
  }
  return out;
}

HomSpace hom_space(const PadicRep& rho, const PadicRep& rho2, std::optional<int> tol_units) {
  if (rho.num_generators() != rho2.num_generators())
    throw InvalidInput("hom_space", "generator count mismatch");
  return joint_hom(rho.generators, rho2.generators, tol_units);
}

std::optional<MatrixK> random_invertible_combination(const std::vector<MatrixK>& basis,
                                                     std::mt19937_64& rng, int attempts) {
  if (basis.empty()) return std::nullopt;
  const FieldPtr& field = basis.front().field();
  for (const MatrixK& t : basis)
    if (t.rows() == t.cols() && is_invertible(t)) return t;
  if (basis.front().rows() != basis.front().cols()) return std::nullopt;
  for (int a = 0; a < attempts; ++a) {
    MatrixK combo(field, basis.front().rows(), basis.front().cols());
    for (const MatrixK& t : basis) {
      long c = static_cast<long>(rng() % 256);
      combo = combo + t.scaled(Scalar::from_integer(field, BigInt(c)));
    }
    if (is_invertible(combo)) return combo;
  }
  return std::nullopt;
}

std::optional<MatrixK> find_invertible_intertwiner(const PadicRep& rho, const PadicRep& rho2,
                                                   std::mt19937_64& rng, int attempts) {
  if (rho.n != rho2.n) return std::nullopt;
  HomSpace hom = hom_space(rho, rho2);
  if (hom.dimension == 0) return std::nullopt;
  return random_invertible_combination(hom.basis, rng, attempts);
}

AnalyticWitness analytic_test_unipotent(const PadicRep& rho, const AbeloidModel& model) {
  if (!rho.all_unipotent())
    throw InvalidInput("analytic_test_unipotent", "generators must be unipotent");
  if (rho.num_generators() != 2 * model.g)
    throw InvalidInput("analytic_test_unipotent", "generator count does not match the model");
  const FieldPtr& field = rho.field();
  std::vector<MatrixK> logs;
  logs.reserve(rho.generators.size());
  for (const MatrixK& gen : rho.generators)
    logs.push_back(matrix_log(UnipotentMatrix(gen)).matrix());
  for (int c = 0; c < model.omega_basis.cols(); ++c) {
    MatrixK theta(field, rho.n, rho.n);
    for (int j = 0; j < 2 * model.g; ++j)
      theta = theta + logs[j].scaled(model.omega_basis.at(j, c));
    if (!theta.is_zero_at_precision()) {
      AnalyticWitness w;
      w.analytic = false;
      w.witness = std::move(theta);
      w.column = c;
      return w;
    }
  }
  return AnalyticWitness{};
}

bool analytic_test_character(const CharacterTuple& chi, const AbeloidModel& model) {
  if (!chi.is_admissible())
    throw CharacterAdmissibilityError("analytic_test_character",
                                      "character values must be congruent to 1 modulo p");
  if (chi.length() != 2 * model.g)
    throw InvalidInput("analytic_test_character", "character length does not match the model");
  const FieldPtr& field = chi.field();
  std::vector<Scalar> logs;
  logs.reserve(chi.values.size());
  for (const Scalar& v : chi.values) logs.push_back(padic_log(v));
  for (int c = 0; c < model.omega_basis.cols(); ++c) {
    Scalar ell = Scalar::zero(field);
    for (int j = 0; j < 2 * model.g; ++j) ell = ell + logs[j] * model.omega_basis.at(j, c);
    if (!ell.is_zero_at_precision()) return false;
  }
  return true;
}

}  // namespace abeloid
