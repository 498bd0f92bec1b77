// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria run at p = 5, N = 16 with fixed seeds; every tolerance
// is pinned in the checks below.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "abeloid/higgs.hpp"
#include "abeloid/koszul.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/random.hpp"
#include "abeloid/unipotent.hpp"

using namespace abeloid;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

FieldPtr qp(int prec = 16) {
  FieldConfig cfg;
  cfg.p = 5;
  cfg.precision = prec;
  return Field::make(cfg);
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// ---------------------------------------------------------------------------
// 1. Koszul dimensions: binomials for the trivial character, zero otherwise.
void criterion_koszul() {
  FieldPtr f = qp(16);
  for (int r = 1; r <= 5; ++r) {
    std::vector<int> dims = koszul_cohomology_dims(std::vector<Scalar>(r, Scalar::one(f)));
    for (int d = 0; d <= r; ++d)
      require(dims[d] == binom(r, d), "trivial character: dims != binomials at r = " +
                                          std::to_string(r) + ", d = " + std::to_string(d));
  }
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 1 + static_cast<int>(rand_below(rng, 5));
    std::vector<Scalar> gammas;
    bool nontrivial = false;
    for (int i = 0; i < r; ++i) {
      Scalar gmm = random_principal_unit(f, rng);
      if (!gmm.equal_at_precision(Scalar::one(f))) nontrivial = true;
      gammas.push_back(std::move(gmm));
    }
    if (!nontrivial) {
      gammas[0] = Scalar::from_integer(f, 6);
    }
    std::vector<int> dims = koszul_cohomology_dims(gammas);
    for (int d = 0; d <= r; ++d)
      require(dims[d] == 0, "nontrivial character: nonzero H^" + std::to_string(d));
  }
}

// ---------------------------------------------------------------------------
// 2. Ext^1 dichotomy between line characters.
void criterion_ext1() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng(1002);
  for (int trial = 0; trial < 30; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 3));
    CharacterTuple chi1 = random_character(f, 2 * g, rng);
    CharacterTuple chi2 = random_character(f, 2 * g, rng);
    require(ext1_line(chi1, chi1) == 2 * g, "ext1(chi, chi) != 2g");
    if (!chi1.equal_at_precision(chi2))
      require(ext1_line(chi1, chi2) == 0, "ext1 of distinct characters != 0");
  }
}

// ---------------------------------------------------------------------------
// 3. Matrix calculus: bijection, homomorphism laws, commutation equivalences,
//    and the Z_p power group law; floors must stay above N - 4 = 12.
void criterion_matrix_calculus() {
  FieldPtr f = qp(16);
  const int floor_bound = 16 - 4;
  std::mt19937_64 rng(1003);
  auto check_floor = [&](const MatrixK& m, const char* what) {
    require(m.precision_floor_units() >= floor_bound,
            std::string(what) + ": precision floor fell below N - 4");
  };
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rand_below(rng, 5));
    MatrixK u = MatrixK::identity(f, n) + random_strictly_upper(f, n, rng);
    MatrixK lg = matrix_log(UnipotentMatrix(u)).matrix();
    MatrixK back = matrix_exp(NilpotentMatrix(lg)).matrix();
    check_floor(back, "exp(log u)");
    require(back.equal_at_precision(u), "exp(log u) != u");
    MatrixK nil = random_strictly_upper(f, n, rng);
    MatrixK lg2 = matrix_log(matrix_exp(NilpotentMatrix(nil))).matrix();
    check_floor(lg2, "log(exp n)");
    require(lg2.equal_at_precision(nil), "log(exp n) != n");
  }
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rand_below(rng, 5));
    std::vector<MatrixK> nils = random_commuting_nilpotents(f, n, 2, rng);
    MatrixK ua = matrix_exp(NilpotentMatrix(nils[0])).matrix();
    MatrixK ub = matrix_exp(NilpotentMatrix(nils[1])).matrix();
    MatrixK sum_exp = matrix_exp(NilpotentMatrix(nils[0] + nils[1])).matrix();
    check_floor(sum_exp, "exp(n + n')");
    require(sum_exp.equal_at_precision(ua * ub), "exp(n + n') != exp(n) exp(n')");
    MatrixK log_prod = matrix_log(UnipotentMatrix(ua * ub)).matrix();
    check_floor(log_prod, "log(u u')");
    require(log_prod.equal_at_precision(nils[0] + nils[1]), "log(uu') != log u + log u'");
  }
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rand_below(rng, 5));
    bool commuting = trial % 2 == 0;
    MatrixK nil(f, n, n), uni(f, n, n);
    if (commuting) {
      std::vector<MatrixK> nils = random_commuting_nilpotents(f, n, 2, rng);
      nil = nils[0];
      uni = matrix_exp(NilpotentMatrix(nils[1])).matrix();
    } else {
      nil = random_strictly_upper(f, n, rng);
      uni = MatrixK::identity(f, n) + random_strictly_upper(f, n, rng).transpose();
      if (!is_unipotent(uni) || !is_nilpotent(nil)) continue;
    }
    bool c1 = commute(uni, nil);
    bool c2 = commute(uni, matrix_exp(NilpotentMatrix(nil)).matrix());
    bool c3 = commute(matrix_log(UnipotentMatrix(uni)).matrix(), nil);
    require(c1 == c2 && c2 == c3, "commutation equivalences disagree");
  }
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rand_below(rng, 5));
    UnipotentMatrix u(MatrixK::identity(f, n) + random_strictly_upper(f, n, rng));
    ZpElement g1 = ZpElement::from_integer(f, BigInt(rand_below(rng, 1 << 20)));
    ZpElement g2 = ZpElement::from_integer(f, BigInt(rand_below(rng, 1 << 20)));
    MatrixK lhs = unipotent_power(u, g1 + g2).matrix();
    MatrixK rhs = unipotent_power(u, g1).matrix() * unipotent_power(u, g2).matrix();
    check_floor(lhs, "u^(g1+g2)");
    require(lhs.equal_at_precision(rhs), "u^(g1+g2) != u^g1 u^g2");
  }
}

// ---------------------------------------------------------------------------
// 4 & 5. Decomposition with exact character/block recovery plus hom vanishing
//        between the recovered blocks.
std::vector<ConstructedRep> decomposition_instances(FieldPtr f, std::mt19937_64& rng) {
  std::vector<ConstructedRep> out;
  const std::vector<std::vector<int>> shapes = {{2, 1}, {1, 1}, {2, 2}, {3, 1}, {2, 1, 1}, {1, 1, 1}};
  for (int trial = 0; trial < 30; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 2));
    out.push_back(random_block_rep(f, g, shapes[rand_below(rng, shapes.size())], rng));
  }
  return out;
}

void criterion_decomposition(const std::vector<ConstructedRep>& instances,
                             std::mt19937_64& rng) {
  for (const ConstructedRep& made : instances) {
    BlockDecomposition d = decompose_rep(made.rep);
    require(d.blocks.size() == made.characters.size(), "block count mismatch");
    std::vector<bool> used(d.blocks.size(), false);
    for (std::size_t i = 0; i < made.characters.size(); ++i) {
      bool matched = false;
      for (std::size_t k = 0; k < d.blocks.size() && !matched; ++k) {
        if (used[k]) continue;
        if (!d.blocks[k].character.equal_at_precision(made.characters[i])) continue;
        require(d.blocks[k].unipotent.n == made.unipotent_parts[i].n, "block size mismatch");
        require(find_invertible_intertwiner(made.unipotent_parts[i], d.blocks[k].unipotent, rng)
                    .has_value(),
                "unipotent parts not isomorphic (forward)");
        require(find_invertible_intertwiner(d.blocks[k].unipotent, made.unipotent_parts[i], rng)
                    .has_value(),
                "unipotent parts not isomorphic (backward)");
        used[k] = true;
        matched = true;
      }
      require(matched, "constructed character not recovered");
    }
  }
}

void criterion_hom_vanishing(const std::vector<ConstructedRep>& instances) {
  for (const ConstructedRep& made : instances) {
    FieldPtr f = made.rep.field();
    for (std::size_t i = 0; i < made.characters.size(); ++i) {
      for (std::size_t j = 0; j < made.characters.size(); ++j) {
        if (i == j || made.characters[i].equal_at_precision(made.characters[j])) continue;
        PadicRep bi, bj;
        bi.n = made.unipotent_parts[i].n;
        bj.n = made.unipotent_parts[j].n;
        for (int k = 0; k < made.rep.num_generators(); ++k) {
          bi.generators.push_back(
              made.unipotent_parts[i].generators[k].scaled(made.characters[i].values[k]));
          bj.generators.push_back(
              made.unipotent_parts[j].generators[k].scaled(made.characters[j].values[k]));
        }
        require(hom_space(bi, bj).dimension == 0,
                "hom between distinct-character blocks is nonzero");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 6. Main correspondence round trip plus tensor functoriality.
void criterion_roundtrip() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng(1006);
  const std::vector<std::vector<int>> shapes = {{2, 1}, {1}, {3, 2}, {2, 2, 1}, {4, 1}, {5}};
  for (int trial = 0; trial < 50; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 2));
    AbeloidModel model = random_model(f, g, rng);
    if (trial % 2 == 0) {
      ConstructedRep made = random_block_rep(f, g, shapes[rand_below(rng, shapes.size())], rng);
      HiggsModel h = rep_to_higgs(made.rep, model);
      PadicRep back = higgs_to_rep(h, model);
      require(find_invertible_intertwiner(made.rep, back, rng).has_value(),
              "higgs_to_rep(rep_to_higgs(rho)) not isomorphic to rho");
    } else {
      std::vector<int> shape = shapes[rand_below(rng, shapes.size())];
      HiggsModel h = random_higgs_model(f, model, shape, rng);
      HiggsModel back = rep_to_higgs(higgs_to_rep(h, model), model);
      require(higgs_isomorphic(h, back, model, rng),
              "rep_to_higgs(higgs_to_rep(H)) not isomorphic to H");
    }
  }
  std::mt19937_64 rng2(1106);
  const std::vector<std::pair<int, int>> pair_ranks = {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {2, 2}};
  for (int trial = 0; trial < 10; ++trial) {
    AbeloidModel model = random_model(f, 1, rng2);
    auto [ra, rb] = pair_ranks[rand_below(rng2, pair_ranks.size())];
    ConstructedRep a = random_block_rep(f, 1, std::vector<int>{ra}, rng2);
    ConstructedRep b = random_block_rep(f, 1, std::vector<int>{rb}, rng2);
    HiggsModel lhs = rep_to_higgs(tensor_rep(a.rep, b.rep), model);
    HiggsModel rhs =
        higgs_tensor(rep_to_higgs(a.rep, model), rep_to_higgs(b.rep, model), model);
    require(higgs_isomorphic(lhs, rhs, model, rng2), "tensor functoriality fails");
  }
}

// ---------------------------------------------------------------------------
// 7. Analyticity criterion on ordinary models.
void criterion_analyticity() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng(1007);
  for (int trial = 0; trial < 20; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 2));
    // random canonical directions
    std::vector<int> all(2 * g);
    for (int i = 0; i < 2 * g; ++i) all[i] = i + 1;
    for (int i = 2 * g - 1; i > 0; --i) std::swap(all[i], all[rand_below(rng, i + 1)]);
    std::vector<int> dirs(all.begin(), all.begin() + g);
    AbeloidModel model = AbeloidModel::standard_ordinary(f, g, dirs);
    int n = 2 + static_cast<int>(rand_below(rng, 3));
    // Theta vanishing on the canonical directions: identity there, a
    // commuting unipotent family elsewhere
    std::vector<MatrixK> nils = random_commuting_nilpotents(f, n, g, rng);
    PadicRep rho = PadicRep::trivial(f, n, 2 * g);
    int k = 0;
    std::vector<bool> is_dir(2 * g + 1, false);
    for (int d : dirs) is_dir[d] = true;
    for (int j = 1; j <= 2 * g; ++j)
      if (!is_dir[j]) rho.generators[j - 1] = matrix_exp(NilpotentMatrix(nils[k++])).matrix();
    AnalyticWitness w = analytic_test_unipotent(rho, model);
    require(w.analytic, "rep built off the canonical directions tested non-analytic");
    HiggsModel h = rep_to_higgs(rho, model);
    for (const HiggsBlock& b : h.blocks) {
      for (const Scalar& t : b.line.theta_line)
        require(t.is_zero_at_precision(), "analytic rep produced nonzero theta_line");
      for (const MatrixK& m : b.unipotent.higgs_fields)
        require(m.is_zero_at_precision(), "analytic rep produced nonzero higgs_fields");
    }
  }
  std::mt19937_64 rng2(1107);
  for (int trial = 0; trial < 20; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng2, 2));
    std::vector<int> all(2 * g);
    for (int i = 0; i < 2 * g; ++i) all[i] = i + 1;
    for (int i = 2 * g - 1; i > 0; --i) std::swap(all[i], all[rand_below(rng2, i + 1)]);
    std::vector<int> dirs(all.begin(), all.begin() + g);
    AbeloidModel model = AbeloidModel::standard_ordinary(f, g, dirs);
    int n = 2 + static_cast<int>(rand_below(rng2, 3));
    PadicRep rho = PadicRep::trivial(f, n, 2 * g);
    MatrixK jordan = MatrixK::identity(f, n);
    jordan.at(0, 1) = Scalar::one(f);
    rho.generators[dirs[0] - 1] = jordan;
    AnalyticWitness w = analytic_test_unipotent(rho, model);
    require(!w.analytic, "canonical-direction Jordan block tested analytic");
    require(w.witness.has_value() && !w.witness->is_zero_at_precision(),
            "missing or zero witness");
  }
}

// ---------------------------------------------------------------------------
// 8. Extension splitting branches.
void criterion_split() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng(1008);
  for (int trial = 0; trial < 20; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 3));
    Scalar c = Scalar::from_integer(f, BigInt(rand_below(rng, 3000)));
    std::vector<Scalar> theta, b, rho(2 * g, Scalar::zero(f));
    for (int i = 0; i < g; ++i)
      theta.push_back(Scalar::from_integer(f, BigInt(rand_below(rng, 12000))));
    bool has_unit = false;
    for (const Scalar& t : theta)
      if (t.distinguishable_from_zero()) has_unit = true;
    if (!has_unit) theta[0] = Scalar::from_integer(f, 5);
    for (int i = 0; i < g; ++i) b.push_back(c * theta[i]);
    SplitResult r = split_higgs_extension(b, theta, rho);
    require(r.split, "theta != 0 branch did not split");
    Scalar got = r.conjugation->at(0, 1);
    for (int i = 0; i < g; ++i)
      require((b[i] - got * theta[i]).is_zero_at_precision(),
              "conjugation does not clear b at the floor");
    for (const Scalar& x : rho)
      require(x.is_zero_at_precision(), "rep off-diagonal not trivial after the split");
  }
  for (int trial = 0; trial < 20; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 3));
    std::vector<Scalar> theta(g, Scalar::zero(f)), b, rho(2 * g, Scalar::zero(f));
    for (int i = 0; i < g; ++i)
      b.push_back(Scalar::from_integer(f, BigInt(rand_below(rng, 100))));
    bool nonzero = false;
    for (const Scalar& x : b)
      if (x.distinguishable_from_zero()) nonzero = true;
    if (!nonzero) b[0] = Scalar::one(f);
    SplitResult r = split_higgs_extension(b, theta, rho);
    require(!r.split, "theta = 0 with b != 0 must be NonSplit");
  }
}

// ---------------------------------------------------------------------------
// 9. theta data is independent of the chosen complement.
void criterion_splitting_independence() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng(1009);
  for (int trial = 0; trial < 10; ++trial) {
    int g = 1 + static_cast<int>(rand_below(rng, 2));
    AbeloidModel m1 = random_model(f, g, rng);
    AbeloidModel m2 = with_random_complement(m1, rng);
    ConstructedRep made = random_block_rep(f, g, {2, 1}, rng);
    HiggsModel h1 = rep_to_higgs(made.rep, m1);
    HiggsModel h2 = rep_to_higgs(made.rep, m2);
    require(h1.blocks.size() == h2.blocks.size(), "block count depends on the splitting");
    for (std::size_t i = 0; i < h1.blocks.size(); ++i) {
      for (int k = 0; k < g; ++k) {
        require(h1.blocks[i].line.theta_line[k].equal_at_precision(
                    h2.blocks[i].line.theta_line[k]),
                "theta_line depends on the splitting");
        require(h1.blocks[i].unipotent.higgs_fields[k].equal_at_precision(
                    h2.blocks[i].unipotent.higgs_fields[k]),
                "higgs_fields depend on the splitting");
      }
    }
  }
}

struct Criterion {
  std::string name;
  std::function<void()> run;
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
  FieldPtr f = qp(16);
  std::mt19937_64 rng45(1004);
  std::vector<ConstructedRep> instances = decomposition_instances(f, rng45);

  std::vector<Criterion> criteria = {
      {"1. koszul dimensions (trivial binomials, 50 nontrivial zeros)", criterion_koszul, 10.0},
      {"2. ext1 dichotomy over 30 random pairs, g in {1,2,3}", criterion_ext1, 0.0},
      {"3. matrix calculus laws on 100+ instances, floors >= N-4", criterion_matrix_calculus,
       30.0},
      {"4. decomposition recovery on 30 constructed reps",
       [&] { criterion_decomposition(instances, rng45); }, 0.0},
      {"5. hom vanishing between distinct-character blocks",
       [&] { criterion_hom_vanishing(instances); }, 0.0},
      {"6. correspondence round trips (50) + tensor functoriality (10)", criterion_roundtrip,
       120.0},
      {"7. analyticity criterion on ordinary models, 20 + 20", criterion_analyticity, 0.0},
      {"8. extension splitting branches, 20 + 20", criterion_split, 0.0},
      {"9. splitting-independence of theta on 10 instances", criterion_splitting_independence,
       0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.run();
    } catch (const Failure& fail) {
      verdict = "FAIL";
      detail = fail.what;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verdict == "PASS" && c.budget_seconds > 0 && secs > c.budget_seconds) {
      verdict = "FAIL";
      std::ostringstream os;
      os << "runtime " << secs << "s exceeded the " << c.budget_seconds << "s budget";
      detail = os.str();
    }
    if (verdict == "FAIL") ++failures;
    std::ostringstream line;
    line << "[" << verdict << "] " << c.name << " (" << static_cast<int>(secs * 1000) << " ms)";
    if (!detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
  }
  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
