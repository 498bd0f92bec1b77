#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <string>
#include <vector>

#include "abeloid/errors.hpp"
#include "abeloid/valuation.hpp"

namespace abeloid {

using BigInt = boost::multiprecision::cpp_int;

enum class RamificationMode { unramified, eisenstein };

// Configuration of K = Q_p[x]/(f) at finite precision.
//
// `precision` is the absolute precision cap N, counted in powers of the
// uniformizer: p in the unramified case, the class of x in the Eisenstein
// case.  `poly` is the monic integral defining polynomial, ascending
// coefficients; {0, 1} (= x) gives K = Q_p.
struct FieldConfig {
  long p = 5;
  int precision = 16;
  std::vector<BigInt> poly = {BigInt(0), BigInt(1)};
  RamificationMode mode = RamificationMode::unramified;
};

// Residue-field element: polynomial of degree < d with coefficients in
// [0, p), length d for unramified fields and length 1 (F_p) for Eisenstein
// ones.
using ResidueElem = std::vector<long>;

class Field : public std::enable_shared_from_this<Field> {
public:
  // Validates the configuration: p prime, precision >= 4, f monic of the
  // declared shape (irreducible mod p, or Eisenstein at p), residue field of
  // size at most 64 so digit enumeration stays cheap.
  static std::shared_ptr<const Field> make(FieldConfig cfg);

  long p() const { return cfg_.p; }
  int degree() const { return degree_; }
  int ram_index() const { return ram_index_; }
  // Absolute precision cap N, in uniformizer powers.
  int precision_cap() const { return cfg_.precision; }
  RamificationMode mode() const { return cfg_.mode; }
  const std::vector<BigInt>& defining_poly() const { return cfg_.poly; }
  long residue_size() const { return residue_size_; }
  int residue_degree() const { return mode() == RamificationMode::unramified ? degree_ : 1; }

  Valuation units_to_valuation(int units) const { return Valuation(units, ram_index_); }

  const BigInt& p_pow(int k) const;

  // --- integer helpers -----------------------------------------------------
  // p-adic valuation of an integer; returns `cap` (not more) for multiples of
  // p^cap, and cap for zero.
  int int_valuation(const BigInt& n, int cap) const;
  BigInt mod_p_pow(const BigInt& n, int k) const;  // representative in [0, p^k)
  BigInt invert_unit_mod_p_pow(const BigInt& u, int k) const;

  // --- coordinate-vector helpers (polynomials of degree < d) ---------------
  // All vectors have length `degree()` and represent sum c_i x^i in Z[x]/(f).
  std::vector<BigInt> poly_mul_mod_f(const std::vector<BigInt>& a,
                                     const std::vector<BigInt>& b, int mod_pow) const;
  void reduce_coords(std::vector<BigInt>& c, int mod_pow) const;

  // Observed valuation, in uniformizer units, of a coordinate vector whose
  // entries are exact below p^coord_cap; results >= cap_units only mean
  // "at least cap_units".
  int coord_val_units(const std::vector<BigInt>& c, int cap_units) const;

  // Exact multiplication/division by the uniformizer.  Division requires the
  // value to be divisible (valuation >= 1 in uniformizer units) and
  // `mod_pow` head-room for the Eisenstein constant-coefficient inverse.
  std::vector<BigInt> coords_mul_uniformizer(const std::vector<BigInt>& c, int mod_pow) const;
  std::vector<BigInt> coords_div_uniformizer(const std::vector<BigInt>& c, int mod_pow) const;
  // Multiplication by the power-basis generator xbar (differs from the
  // uniformizer in the unramified case).
  std::vector<BigInt> coords_mul_x(const std::vector<BigInt>& c, int mod_pow) const;

  // --- residue field --------------------------------------------------------
  ResidueElem residue_zero() const;
  ResidueElem residue_from_index(long idx) const;  // enumeration, 0 <= idx < residue_size
  bool residue_is_zero(const ResidueElem& a) const;
  ResidueElem residue_add(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem residue_sub(const ResidueElem& a, const ResidueElem& b) const;
  ResidueElem residue_mul(const ResidueElem& a, const ResidueElem& b) const;

  // Structural identity: two separately constructed fields with the same
  // configuration are interchangeable.
  bool same_as(const Field& other) const {
    return this == &other ||
           (cfg_.p == other.cfg_.p && cfg_.precision == other.cfg_.precision &&
            cfg_.mode == other.cfg_.mode && cfg_.poly == other.cfg_.poly);
  }

private:
  explicit Field(FieldConfig cfg);
  void validate() const;

  FieldConfig cfg_;
  int degree_ = 1;
  int ram_index_ = 1;
  long residue_size_ = 0;
  mutable std::vector<BigInt> p_pow_cache_;
  std::vector<long> f_mod_p_;  // defining polynomial reduced mod p
};

using FieldPtr = std::shared_ptr<const Field>;

// Throws ConfigError unless a and b are the same field object.
void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* operation);

}  // namespace abeloid
