#include "abeloid/field.hpp"

#include <algorithm>
#include <mutex>

namespace abeloid {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

// F_p[x] helpers for the unramified irreducibility test.
using FpPoly = std::vector<long>;  // ascending, no trailing-zero guarantee

FpPoly fp_trim(FpPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
  a = fp_trim(std::move(a));
  FpPoly mm = fp_trim(m);
  while (a.size() >= mm.size() && !a.empty()) {
    long lead = a.back();
    // m is monic in our usage
    std::size_t off = a.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i) {
      a[off + i] = ((a[off + i] - lead * mm[i]) % p + p * p) % p;
    }
    a = fp_trim(std::move(a));
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return fp_mod(std::move(r), m, p);
}

FpPoly fp_powmod(FpPoly base, long exp, const FpPoly& m, long p) {
  FpPoly r = {1};
  base = fp_mod(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    exp >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (!b.empty()) {
    // make b monic before dividing
    long lead = b.back();
    long inv = 1;
    for (long t = 1; t < p; ++t)
      if (t * lead % p == 1) {
        inv = t;
        break;
      }
    for (auto& c : b) c = c * inv % p;
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  return fp_trim(std::move(a));
}

// x^(p^k) mod (f, p), by k successive p-th powers.
FpPoly frobenius_power(const FpPoly& f, long p, int k) {
  FpPoly t = {0, 1};
  for (int i = 0; i < k; ++i) t = fp_powmod(t, p, f, p);
  return t;
}

bool irreducible_mod_p(const FpPoly& f, long p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  // f irreducible over F_p iff x^(p^d) = x mod f and gcd(x^(p^(d/q)) - x, f) = 1
  // for every prime q | d.
  FpPoly x = {0, 1};
  if (fp_mod(fp_sub(frobenius_power(f, p, d), x, p), f, p) != FpPoly{}) return false;
  for (int q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool q_prime = is_prime(q);
    if (!q_prime) continue;
    FpPoly g = fp_gcd(f, fp_sub(frobenius_power(f, p, d / q), x, p), p);
    if (fp_trim(g).size() > 1) return false;
  }
  return true;
}

}  // namespace

Field::Field(FieldConfig cfg) : cfg_(std::move(cfg)) {
  degree_ = static_cast<int>(cfg_.poly.size()) - 1;
  ram_index_ = cfg_.mode == RamificationMode::eisenstein ? degree_ : 1;
  residue_size_ = 1;
  int rd = cfg_.mode == RamificationMode::unramified ? degree_ : 1;
  for (int i = 0; i < rd; ++i) {
    residue_size_ *= cfg_.p;
    if (residue_size_ > 64) break;
  }
  f_mod_p_.resize(cfg_.poly.size());
  for (std::size_t i = 0; i < cfg_.poly.size(); ++i) {
    BigInt r = cfg_.poly[i] % cfg_.p;
    if (r < 0) r += cfg_.p;
    f_mod_p_[i] = static_cast<long>(r);
  }
}

std::shared_ptr<const Field> Field::make(FieldConfig cfg) {
  auto field = std::shared_ptr<Field>(new Field(std::move(cfg)));
  field->validate();
  return field;
}

void Field::validate() const {
  if (!is_prime(cfg_.p)) throw ConfigError("field", "p must be prime");
  if (cfg_.precision < 4) throw ConfigError("field", "precision cap must be at least 4");
  if (cfg_.precision > 512) throw ConfigError("field", "precision cap above 512 is unsupported");
  if (degree_ < 1) throw ConfigError("field", "defining polynomial must have degree >= 1");
  if (cfg_.poly.back() != 1) throw ConfigError("field", "defining polynomial must be monic");
  if (residue_size_ > 64)
    throw ConfigError("field", "residue field larger than 64 elements; digit enumeration "
                               "would be too expensive at this scale");
  if (cfg_.mode == RamificationMode::unramified) {
    if (!irreducible_mod_p(f_mod_p_, cfg_.p))
      throw ConfigError("field", "unramified mode requires f irreducible modulo p");
  } else {
    // Eisenstein: constant term of valuation exactly 1, others >= 1.
    if (degree_ < 2)
      throw ConfigError("field", "eisenstein mode requires degree >= 2");
    if (int_valuation(cfg_.poly[0], 2) != 1)
      throw ConfigError("field", "eisenstein mode requires constant term of valuation exactly 1");
    for (int i = 1; i < degree_; ++i)
      if (int_valuation(cfg_.poly[i], 1) < 1)
        throw ConfigError("field", "eisenstein mode requires all lower coefficients divisible by p");
  }
}

const BigInt& Field::p_pow(int k) const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (p_pow_cache_.empty()) p_pow_cache_.push_back(BigInt(1));
  while (static_cast<int>(p_pow_cache_.size()) <= k)
    p_pow_cache_.push_back(p_pow_cache_.back() * cfg_.p);
  return p_pow_cache_[k];
}

int Field::int_valuation(const BigInt& n, int cap) const {
  if (n == 0) return cap;
  BigInt m = n;
  int v = 0;
  while (v < cap && m % cfg_.p == 0) {
    m /= cfg_.p;
    ++v;
  }
  return v;
}

BigInt Field::mod_p_pow(const BigInt& n, int k) const {
  if (k <= 0) return BigInt(0);
  BigInt r = n % p_pow(k);
  if (r < 0) r += p_pow(k);
  return r;
}

BigInt Field::invert_unit_mod_p_pow(const BigInt& u, int k) const {
  // extended Euclid against p^k; u must be a p-unit
  BigInt a = mod_p_pow(u, k), m = p_pow(k);
  if (a % cfg_.p == 0) throw Error("field", "attempt to invert a non-unit integer");
  BigInt r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  return mod_p_pow(t0, k);
}

void Field::reduce_coords(std::vector<BigInt>& c, int mod_pow) const {
  for (auto& x : c) x = mod_p_pow(x, mod_pow);
}

std::vector<BigInt> Field::poly_mul_mod_f(const std::vector<BigInt>& a,
                                          const std::vector<BigInt>& b, int mod_pow) const {
  const int d = degree_;
  std::vector<BigInt> prod(2 * d - 1, BigInt(0));
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  // reduce by the monic f
  for (int k = 2 * d - 2; k >= d; --k) {
    if (prod[k] == 0) continue;
    BigInt lead = prod[k];
    prod[k] = 0;
    for (int i = 0; i < d; ++i) prod[k - d + i] -= lead * cfg_.poly[i];
  }
  prod.resize(d);
  reduce_coords(prod, mod_pow);
  return prod;
}

int Field::coord_val_units(const std::vector<BigInt>& c, int cap_units) const {
  const int d = degree_;
  const int e = ram_index_;
  int best = cap_units;
  for (int i = 0; i < d; ++i) {
    if (c[i] == 0) continue;
    int vp = int_valuation(c[i], (cap_units / e) + 2);
    int units = e == 1 ? vp : e * vp + i;
    best = std::min(best, units);
  }
  return best;
}

std::vector<BigInt> Field::coords_mul_x(const std::vector<BigInt>& c, int mod_pow) const {
  const int d = degree_;
  std::vector<BigInt> r(d, BigInt(0));
  for (int i = 0; i + 1 < d; ++i) r[i + 1] = c[i];
  BigInt lead = c[d - 1];
  if (lead != 0)
    for (int i = 0; i < d; ++i) r[i] -= lead * cfg_.poly[i];
  reduce_coords(r, mod_pow);
  return r;
}

std::vector<BigInt> Field::coords_mul_uniformizer(const std::vector<BigInt>& c, int mod_pow) const {
  if (cfg_.mode == RamificationMode::unramified) {
    std::vector<BigInt> r(c);
    for (auto& x : r) x *= cfg_.p;
    reduce_coords(r, mod_pow);
    return r;
  }
  return coords_mul_x(c, mod_pow);
}

std::vector<BigInt> Field::coords_div_uniformizer(const std::vector<BigInt>& c, int mod_pow) const {
  const int d = degree_;
  if (cfg_.mode == RamificationMode::unramified) {
    std::vector<BigInt> r(c);
    for (auto& x : r) {
      if (x % cfg_.p != 0)
        throw Error("field", "exact division by the uniformizer on a non-divisible value");
      x /= cfg_.p;
    }
    reduce_coords(r, mod_pow);
    return r;
  }
  // c / x = (c - c_0)/x + c_0/x; with f = x^d + ... + a_0 Eisenstein,
  // 1/x = -(1/a_0)(x^{d-1} + a_{d-1} x^{d-2} + ... + a_1), a_0 = p*w.
  if (c[0] % cfg_.p != 0)
    throw Error("field", "exact division by the uniformizer on a non-divisible value");
  BigInt c0_over_p = c[0] / cfg_.p;
  BigInt w = cfg_.poly[0] / cfg_.p;
  BigInt w_inv = invert_unit_mod_p_pow(w, mod_pow + 2);
  BigInt scale = mod_p_pow(-c0_over_p * w_inv, mod_pow + 2);
  std::vector<BigInt> r(d, BigInt(0));
  for (int i = 1; i < d; ++i) r[i - 1] = c[i];
  // scale * (x^{d-1} + a_{d-1} x^{d-2} + ... + a_1)
  r[d - 1] += scale;
  for (int i = 1; i < d; ++i) r[i - 1] += scale * cfg_.poly[i];
  reduce_coords(r, mod_pow);
  return r;
}

ResidueElem Field::residue_zero() const { return ResidueElem(residue_degree(), 0); }

ResidueElem Field::residue_from_index(long idx) const {
  ResidueElem r(residue_degree(), 0);
  for (int i = 0; i < residue_degree(); ++i) {
    r[i] = idx % cfg_.p;
    idx /= cfg_.p;
  }
  return r;
}

bool Field::residue_is_zero(const ResidueElem& a) const {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

ResidueElem Field::residue_add(const ResidueElem& a, const ResidueElem& b) const {
  ResidueElem r(residue_degree());
  for (int i = 0; i < residue_degree(); ++i) r[i] = (a[i] + b[i]) % cfg_.p;
  return r;
}

ResidueElem Field::residue_sub(const ResidueElem& a, const ResidueElem& b) const {
  ResidueElem r(residue_degree());
  for (int i = 0; i < residue_degree(); ++i) r[i] = ((a[i] - b[i]) % cfg_.p + cfg_.p) % cfg_.p;
  return r;
}

ResidueElem Field::residue_mul(const ResidueElem& a, const ResidueElem& b) const {
  const long p = cfg_.p;
  if (residue_degree() == 1) return {a[0] * b[0] % p};
  FpPoly prod(2 * residue_degree() - 1, 0);
  for (int i = 0; i < residue_degree(); ++i)
    for (int j = 0; j < residue_degree(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  FpPoly red = fp_mod(std::move(prod), f_mod_p_, p);
  red.resize(residue_degree(), 0);
  return red;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* operation) {
  if (!a || !b || !a->same_as(*b))
    throw ConfigError(operation, "operands belong to different field configurations");
}

}  // namespace abeloid
