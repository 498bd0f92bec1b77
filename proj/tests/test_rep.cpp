#include <doctest.h>

#include <random>

#include "abeloid/linalg.hpp"
#include "abeloid/random.hpp"
#include "abeloid/rep.hpp"
#include "abeloid/unipotent.hpp"

using namespace abeloid;

namespace {

FieldPtr qp(long p = 5, int prec = 16) {
  FieldConfig cfg;
  cfg.p = p;
  cfg.precision = prec;
  return Field::make(cfg);
}

PadicRep jordan_unipotent_2(FieldPtr f) {
  // two commuting unipotent generators sharing a Jordan cell
  PadicRep u;
  u.n = 2;
  MatrixK a = MatrixK::identity(f, 2);
  a.at(0, 1) = Scalar::one(f);
  MatrixK b = MatrixK::identity(f, 2);
  b.at(0, 1) = Scalar::from_integer(f, 3);
  u.generators = {a, b};
  return u;
}

}  // namespace

TEST_SUITE("validate_rep") {
  TEST_CASE("trivial rank-3 passes") {
    FieldPtr f = qp();
    CHECK(validate_rep(PadicRep::trivial(f, 3, 2)).pass);
  }

  TEST_CASE("non-commuting generators flagged") {
    FieldPtr f = qp();
    PadicRep rho;
    rho.n = 2;
    MatrixK a = MatrixK::identity(f, 2);
    a.at(1, 1) = Scalar::from_integer(f, 6);
    MatrixK b = MatrixK::identity(f, 2);
    b.at(0, 1) = Scalar::one(f);
    rho.generators = {a, b};
    ValidationReport r = validate_rep(rho);
    CHECK(!r.pass);
    CHECK(r.first_violation.find("commute") != std::string::npos);
  }

  TEST_CASE("eigenvalue 2 fails admissibility at p = 5") {
    FieldPtr f = qp();
    PadicRep rho;
    rho.n = 2;
    MatrixK a = MatrixK::identity(f, 2);
    a.at(0, 0) = Scalar::from_integer(f, 2);
    rho.generators = {a, MatrixK::identity(f, 2)};
    ValidationReport r = validate_rep(rho);
    CHECK(!r.pass);
    CHECK(r.first_violation.find("admissibility") != std::string::npos);
  }
}

TEST_SUITE("decompose_rep") {
  TEST_CASE("rank-1 character is a single block") {
    FieldPtr f = qp();
    std::mt19937_64 rng(89);
    CharacterTuple chi = random_character(f, 2, rng);
    BlockDecomposition d = decompose_rep(chi.as_rep());
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].character.equal_at_precision(chi));
    CHECK(d.blocks[0].unipotent.n == 1);
  }

  TEST_CASE("constructed two-block rep is recovered") {
    FieldPtr f = qp();
    std::mt19937_64 rng(97);
    ConstructedRep made = random_block_rep(f, 1, {2, 1}, rng);
    BlockDecomposition d = decompose_rep(made.rep);
    REQUIRE(d.blocks.size() == 2);
    std::vector<int> sizes = {d.blocks[0].unipotent.n, d.blocks[1].unipotent.n};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2});
    // characters recovered exactly (digit equality at the floor)
    for (const CharacterTuple& chi : made.characters) {
      bool found = false;
      for (const RepBlock& b : d.blocks)
        if (b.character.equal_at_precision(chi)) found = true;
      CHECK(found);
    }
    // unipotent parts isomorphic via an invertible intertwiner
    for (std::size_t i = 0; i < made.characters.size(); ++i) {
      for (const RepBlock& b : d.blocks) {
        if (!b.character.equal_at_precision(made.characters[i])) continue;
        CHECK(find_invertible_intertwiner(made.unipotent_parts[i], b.unipotent, rng).has_value());
        CHECK(find_invertible_intertwiner(b.unipotent, made.unipotent_parts[i], rng).has_value());
      }
    }
  }

  TEST_CASE("non-split unipotent part stays a single full block") {
    FieldPtr f = qp();
    std::mt19937_64 rng(101);
    // exp of a single nilpotent Jordan block scaled by the generators
    MatrixK nil(f, 3, 3);
    nil.at(0, 1) = Scalar::one(f);
    nil.at(1, 2) = Scalar::one(f);
    CharacterTuple chi = random_character(f, 2, rng);
    PadicRep rho;
    rho.n = 3;
    rho.generators = {
        matrix_exp(NilpotentMatrix(nil)).matrix().scaled(chi.values[0]),
        matrix_exp(NilpotentMatrix(nil.scaled(Scalar::from_integer(f, 2)))).matrix().scaled(
            chi.values[1])};
    BlockDecomposition d = decompose_rep(rho);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].unipotent.n == 3);
    CHECK(d.blocks[0].character.equal_at_precision(chi));
  }

  TEST_CASE("similarity invariance and reassembly") {
    FieldPtr f = qp();
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 6; ++trial) {
      ConstructedRep made = random_block_rep(f, 1, {2, 2, 1}, rng);
      BlockDecomposition d = decompose_rep(made.rep);
      // conjugating the input by a fresh invertible matrix preserves the
      // character multiset and block sizes
      MatrixK q = random_invertible_matrix(f, made.rep.n, rng);
      MatrixK qi = inverse(q);
      PadicRep conj;
      conj.n = made.rep.n;
      for (const MatrixK& gen : made.rep.generators) conj.generators.push_back(q * gen * qi);
      BlockDecomposition d2 = decompose_rep(conj);
      REQUIRE(d.blocks.size() == d2.blocks.size());
      for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        CHECK(d.blocks[i].unipotent.n == d2.blocks[i].unipotent.n);
        CHECK(d.blocks[i].character.equal_at_precision(d2.blocks[i].character));
      }
      // reassembly: the change of basis really conjugates the input to the
      // block-diagonal form
      std::vector<MatrixK> rebuilt = reassemble(d);
      for (int j = 0; j < made.rep.num_generators(); ++j)
        CHECK(rebuilt[j].equal_at_precision(made.rep.generators[j]));
    }
  }

  TEST_CASE("tensor compatibility: chi tensor rho shifts every block character") {
    FieldPtr f = qp();
    std::mt19937_64 rng(107);
    ConstructedRep made = random_block_rep(f, 1, {2, 1}, rng);
    CharacterTuple chi = random_character(f, 2, rng);
    PadicRep twisted = tensor_rep(chi.as_rep(), made.rep);
    BlockDecomposition base = decompose_rep(made.rep);
    BlockDecomposition tw = decompose_rep(twisted);
    REQUIRE(base.blocks.size() == tw.blocks.size());
    for (const RepBlock& b : base.blocks) {
      CharacterTuple expect = chi.tensor(b.character);
      bool found = false;
      for (const RepBlock& t : tw.blocks)
        if (t.character.equal_at_precision(expect) && t.unipotent.n == b.unipotent.n)
          found = true;
      CHECK(found);
    }
  }
}

TEST_SUITE("tensor, dual, direct sum") {
  TEST_CASE("tensor with the trivial rank-1 is the identity") {
    FieldPtr f = qp();
    std::mt19937_64 rng(109);
    ConstructedRep made = random_block_rep(f, 1, {2}, rng);
    PadicRep t = tensor_rep(made.rep, PadicRep::trivial(f, 1, 2));
    for (int j = 0; j < 2; ++j)
      CHECK(t.generators[j].equal_at_precision(made.rep.generators[j]));
  }

  TEST_CASE("dual is an involution") {
    FieldPtr f = qp();
    std::mt19937_64 rng(113);
    ConstructedRep made = random_block_rep(f, 1, {2}, rng);
    PadicRep dd = dual_rep(dual_rep(made.rep));
    for (int j = 0; j < 2; ++j)
      CHECK(dd.generators[j].equal_at_precision(made.rep.generators[j]));
  }

  TEST_CASE("character tensor multiplies values") {
    FieldPtr f = qp();
    std::mt19937_64 rng(127);
    CharacterTuple a = random_character(f, 4, rng), b = random_character(f, 4, rng);
    PadicRep t = tensor_rep(a.as_rep(), b.as_rep());
    for (int j = 0; j < 4; ++j)
      CHECK(t.generators[j].at(0, 0).equal_at_precision(a.values[j] * b.values[j]));
  }
}

TEST_SUITE("hom spaces") {
  TEST_CASE("trivial against trivial is one-dimensional") {
    FieldPtr f = qp();
    CHECK(hom_space(PadicRep::trivial(f, 1, 2), PadicRep::trivial(f, 1, 2)).dimension == 1);
  }

  TEST_CASE("distinct rank-1 characters have no homs") {
    FieldPtr f = qp();
    std::mt19937_64 rng(131);
    CharacterTuple a = random_character(f, 2, rng);
    CharacterTuple b = random_character(f, 2, rng);
    REQUIRE(!a.equal_at_precision(b));
    CHECK(hom_space(a.as_rep(), b.as_rep()).dimension == 0);
  }

  TEST_CASE("jordan rank-2 endomorphisms: dimension 2") {
    // brute-force oracle on the 4-unknown system T u = u T for
    // u = [[1,1],[0,1]]: c = 0, a = d, b free => dimension 2
    FieldPtr f = qp();
    PadicRep u = jordan_unipotent_2(f);
    HomSpace h = hom_space(u, u);
    CHECK(h.dimension == 2);
    std::mt19937_64 rng(137);
    CHECK(find_invertible_intertwiner(u, u, rng).has_value());
  }

  TEST_CASE("hom vanishing between distinct-character blocks") {
    FieldPtr f = qp();
    std::mt19937_64 rng(139);
    for (int trial = 0; trial < 10; ++trial) {
      ConstructedRep made = random_block_rep(f, 1, {2, 2}, rng);
      PadicRep b0, b1;
      b0.n = b1.n = 2;
      for (int j = 0; j < 2; ++j) {
        b0.generators.push_back(
            made.unipotent_parts[0].generators[j].scaled(made.characters[0].values[j]));
        b1.generators.push_back(
            made.unipotent_parts[1].generators[j].scaled(made.characters[1].values[j]));
      }
      CHECK(hom_space(b0, b1).dimension == 0);
      CHECK(hom_space(b1, b0).dimension == 0);
    }
  }
}

TEST_SUITE("analyticity tests") {
  TEST_CASE("trivial rep is analytic") {
    FieldPtr f = qp();
    AbeloidModel model = AbeloidModel::standard_ordinary(f, 1, {2});
    CHECK(analytic_test_unipotent(PadicRep::trivial(f, 2, 2), model).analytic);
    CHECK(analytic_test_character(CharacterTuple::trivial(f, 2), model));
  }

  TEST_CASE("ordinary model: identity on canonical directions passes") {
    FieldPtr f = qp();
    std::mt19937_64 rng(149);
    AbeloidModel model = AbeloidModel::standard_ordinary(f, 2, {3, 4});
    PadicRep rho = PadicRep::trivial(f, 3, 4);
    std::vector<MatrixK> nils = random_commuting_nilpotents(f, 3, 2, rng);
    rho.generators[0] = matrix_exp(NilpotentMatrix(nils[0])).matrix();
    rho.generators[1] = matrix_exp(NilpotentMatrix(nils[1])).matrix();
    CHECK(analytic_test_unipotent(rho, model).analytic);
  }

  TEST_CASE("jordan generator on a canonical direction is witnessed") {
    FieldPtr f = qp();
    AbeloidModel model = AbeloidModel::standard_ordinary(f, 1, {2});
    PadicRep rho = PadicRep::trivial(f, 2, 2);
    MatrixK u = MatrixK::identity(f, 2);
    u.at(0, 1) = Scalar::one(f);
    rho.generators[1] = u;
    AnalyticWitness w = analytic_test_unipotent(rho, model);
    CHECK(!w.analytic);
    REQUIRE(w.witness.has_value());
    // the witness is Theta(e_2) = N_2 = log(u)
    CHECK(w.witness->at(0, 1).equal_at_precision(Scalar::one(f)));
  }

  TEST_CASE("character tests read only the Hodge directions") {
    FieldPtr f = qp();
    AbeloidModel model = AbeloidModel::standard_ordinary(f, 1, {2});
    CharacterTuple chi = CharacterTuple::trivial(f, 2);
    chi.values[0] = Scalar::from_integer(f, 6);
    CHECK(analytic_test_character(chi, model));
    chi = CharacterTuple::trivial(f, 2);
    chi.values[1] = Scalar::from_integer(f, 6);
    CHECK(!analytic_test_character(chi, model));
  }

  TEST_CASE("unipotent test is independent of the chosen complement") {
    FieldPtr f = qp();
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 6; ++trial) {
      AbeloidModel m1 = random_model(f, 1, rng);
      AbeloidModel m2 = with_random_complement(m1, rng);
      PadicRep rho = random_commuting_unipotent_rep(f, 3, 2, rng);
      CHECK(analytic_test_unipotent(rho, m1).analytic ==
            analytic_test_unipotent(rho, m2).analytic);
    }
  }
}
