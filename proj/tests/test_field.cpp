#include <doctest.h>

#include "abeloid/field.hpp"

using namespace abeloid;

TEST_SUITE("field config") {
  TEST_CASE("q_p accepts defaults") {
    FieldConfig cfg;
    FieldPtr f = Field::make(cfg);
    CHECK(f->degree() == 1);
    CHECK(f->ram_index() == 1);
    CHECK(f->residue_size() == 5);
  }

  TEST_CASE("composite p rejected") {
    FieldConfig cfg;
    cfg.p = 6;
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
  }

  TEST_CASE("precision below 4 rejected") {
    FieldConfig cfg;
    cfg.precision = 3;
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
  }

  TEST_CASE("unramified requires irreducibility mod p") {
    FieldConfig cfg;
    cfg.p = 5;
    cfg.poly = {BigInt(-1), BigInt(0), BigInt(1)};  // x^2 - 1 = (x-1)(x+1)
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
    cfg.poly = {BigInt(2), BigInt(0), BigInt(1)};  // x^2 + 2 irreducible mod 5
    FieldPtr f = Field::make(cfg);
    CHECK(f->degree() == 2);
    CHECK(f->ram_index() == 1);
    CHECK(f->residue_size() == 25);
  }

  TEST_CASE("eisenstein shape enforced") {
    FieldConfig cfg;
    cfg.p = 5;
    cfg.mode = RamificationMode::eisenstein;
    cfg.poly = {BigInt(-25), BigInt(0), BigInt(1)};  // constant term valuation 2
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
    cfg.poly = {BigInt(-5), BigInt(1), BigInt(1)};  // middle coefficient a unit
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
    cfg.poly = {BigInt(-5), BigInt(5), BigInt(1)};
    FieldPtr f = Field::make(cfg);
    CHECK(f->ram_index() == 2);
    CHECK(f->residue_size() == 5);
  }

  TEST_CASE("oversized residue field rejected") {
    FieldConfig cfg;
    cfg.p = 5;
    cfg.poly = {BigInt(3), BigInt(3), BigInt(0), BigInt(1)};  // degree 3: 125 > 64
    CHECK_THROWS_AS(Field::make(cfg), ConfigError);
  }
}
