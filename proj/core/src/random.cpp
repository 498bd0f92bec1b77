#include "abeloid/random.hpp"

#include "abeloid/errors.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/poly.hpp"
#include "abeloid/unipotent.hpp"

namespace abeloid {

long rand_below(std::mt19937_64& rng, long bound) {
  return static_cast<long>(rng() % static_cast<unsigned long>(bound));
}

Scalar random_principal_unit(FieldPtr field, std::mt19937_64& rng) {
  const long p = field->p();
  long span = p * p * (field->p() == 2 ? 2 : 1);
  long unit = rand_below(rng, span);
  // 1 + p*unit, with the p=2 case pushed to 1 mod 4
  long step = field->p() == 2 ? 4 : p;
  return Scalar::from_integer(field, BigInt(1 + step * unit));
}

MatrixK random_integral_matrix(FieldPtr field, int rows, int cols, std::mt19937_64& rng) {
  MatrixK m(field, rows, cols);
  long span = field->p() * field->p();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = Scalar::from_integer(field, BigInt(rand_below(rng, span)));
  return m;
}

namespace {

// determinant a unit: keeps inverses integral, so downstream corrections stay
// inside the exponential's domain
bool has_unit_determinant(const MatrixK& m) {
  Scalar det = charpoly(m).coeff(0);
  return det.distinguishable_from_zero() && det.valuation_units() == 0;
}

}  // namespace

MatrixK random_invertible_matrix(FieldPtr field, int n, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    MatrixK m = random_integral_matrix(field, n, n, rng);
    if (has_unit_determinant(m)) return m;
  }
  throw Error("random", "failed to sample an invertible matrix");
}

MatrixK random_strictly_upper(FieldPtr field, int n, std::mt19937_64& rng) {
  MatrixK m(field, n, n);
  long span = field->p() * field->p();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m.at(i, j) = Scalar::from_integer(field, BigInt(rand_below(rng, span)));
  return m;
}

std::vector<MatrixK> random_commuting_nilpotents(FieldPtr field, int n, int count,
                                                 std::mt19937_64& rng) {
  MatrixK s = random_strictly_upper(field, n, rng);
  long span = field->p() * field->p();
  std::vector<MatrixK> out;
  for (int k = 0; k < count; ++k) {
    // polynomial in s with zero constant term
    MatrixK acc(field, n, n);
    MatrixK power = MatrixK::identity(field, n);
    for (int d = 1; d < n; ++d) {
      power = power * s;
      long c = rand_below(rng, span);
      if (c != 0) acc = acc + power.scaled(Scalar::from_integer(field, BigInt(c)));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

PadicRep random_commuting_unipotent_rep(FieldPtr field, int n, int num_generators,
                                        std::mt19937_64& rng) {
  std::vector<MatrixK> nils = random_commuting_nilpotents(field, n, num_generators, rng);
  PadicRep rep;
  rep.n = n;
  for (MatrixK& m : nils)
    rep.generators.push_back(matrix_exp(NilpotentMatrix(std::move(m))).matrix());
  return rep;
}

CharacterTuple random_character(FieldPtr field, int len, std::mt19937_64& rng) {
  CharacterTuple chi;
  for (int j = 0; j < len; ++j) chi.values.push_back(random_principal_unit(field, rng));
  return chi;
}

ConstructedRep random_block_rep(FieldPtr field, int g, const std::vector<int>& block_sizes,
                                std::mt19937_64& rng) {
  ConstructedRep out{PadicRep{}, {}, {}, MatrixK(field, 0, 0)};
  int n = 0;
  for (int s : block_sizes) n += s;
  // pairwise distinct characters
  while (static_cast<int>(out.characters.size()) < static_cast<int>(block_sizes.size())) {
    CharacterTuple chi = random_character(field, 2 * g, rng);
    bool fresh = true;
    for (const CharacterTuple& seen : out.characters)
      if (seen.equal_at_precision(chi)) fresh = false;
    if (fresh) out.characters.push_back(std::move(chi));
  }
  for (int s : block_sizes)
    out.unipotent_parts.push_back(random_commuting_unipotent_rep(field, s, 2 * g, rng));
  PadicRep sum;
  sum.n = n;
  for (int j = 0; j < 2 * g; ++j) {
    MatrixK diag(field, 0, 0);
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
      diag = diag.direct_sum(
          out.unipotent_parts[b].generators[j].scaled(out.characters[b].values[j]));
    sum.generators.push_back(std::move(diag));
  }
  out.conjugator = random_invertible_matrix(field, n, rng);
  MatrixK inv = inverse(out.conjugator);
  out.rep.n = n;
  for (int j = 0; j < 2 * g; ++j)
    out.rep.generators.push_back(out.conjugator * sum.generators[j] * inv);
  return out;
}

AbeloidModel random_model(FieldPtr field, int g, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    MatrixK omega = random_integral_matrix(field, 2 * g, g, rng);
    MatrixK analytic = random_integral_matrix(field, 2 * g, g, rng);
    AbeloidModel m(g, std::move(omega), std::move(analytic));
    if (has_unit_determinant(m.combined_basis()) && m.validate().pass) return m;
  }
  throw Error("random", "failed to sample an abeloid model");
}

AbeloidModel with_random_complement(const AbeloidModel& base, std::mt19937_64& rng) {
  const FieldPtr& field = base.field();
  for (int attempt = 0; attempt < 256; ++attempt) {
    AbeloidModel m = base;
    m.analytic_basis = random_integral_matrix(field, 2 * base.g, base.g, rng);
    if (has_unit_determinant(m.combined_basis()) && m.validate().pass) return m;
  }
  throw Error("random", "failed to sample a fresh complement");
}

UnipotentHiggs random_unipotent_higgs(FieldPtr field, int n, int g, std::mt19937_64& rng) {
  std::vector<MatrixK> nils = random_commuting_nilpotents(field, n, 2 * g, rng);
  UnipotentHiggs u;
  u.n = n;
  for (int i = 0; i < g; ++i) u.analytic_logs.push_back(nils[i]);
  for (int i = 0; i < g; ++i) u.higgs_fields.push_back(nils[g + i]);
  return u;
}

HiggsModel random_higgs_model(FieldPtr field, const AbeloidModel& model,
                              const std::vector<int>& block_sizes, std::mt19937_64& rng) {
  HiggsModel h;
  for (int s : block_sizes) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 256) throw Error("random", "failed to sample distinct Higgs lines");
      // lines via the correspondence itself: any admissible character maps to
      // a valid (analytic character, theta) pair
      HiggsLine line = char_to_higgs_line(random_character(field, 2 * model.g, rng), model);
      bool fresh = true;
      for (const HiggsBlock& b : h.blocks)
        if (b.line.equal_at_precision(line)) fresh = false;
      if (!fresh) continue;
      HiggsBlock blk{std::move(line), random_unipotent_higgs(field, s, model.g, rng)};
      h.blocks.push_back(std::move(blk));
      break;
    }
  }
  return h;
}

}  // namespace abeloid
