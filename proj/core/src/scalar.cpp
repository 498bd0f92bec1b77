#include "abeloid/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace abeloid {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Newton inversion of a unit coordinate vector modulo p^mod_pow: start from
// an inverse modulo the maximal ideal, then v <- v(2 - uv) doubles the
// uniformizer-valuation of the error each round.
std::vector<BigInt> invert_unit_coords(const Field& f, const std::vector<BigInt>& u, int mod_pow) {
  const int d = f.degree();
  std::vector<BigInt> v(d, BigInt(0));
  if (f.mode() == RamificationMode::eisenstein || d == 1) {
    v[0] = f.invert_unit_mod_p_pow(u[0], 1);
  } else {
    // inverse in F_{p^d} by brute force over the (small, <= 64) residue field
    ResidueElem ur(d);
    for (int i = 0; i < d; ++i) ur[i] = static_cast<long>(f.mod_p_pow(u[i], 1));
    bool found = false;
    for (long idx = 1; idx < f.residue_size(); ++idx) {
      ResidueElem cand = f.residue_from_index(idx);
      ResidueElem prod = f.residue_mul(ur, cand);
      if (prod[0] == 1 &&
          std::all_of(prod.begin() + 1, prod.end(), [](long x) { return x == 0; })) {
        for (int i = 0; i < d; ++i) v[i] = cand[i];
        found = true;
        break;
      }
    }
    if (!found) throw Error("scalar", "residue inverse not found for a unit");
  }
  int target_units = f.ram_index() * mod_pow;
  int err_units = 1;
  while (err_units < target_units) {
    // v <- v * (2 - u*v)
    std::vector<BigInt> uv = f.poly_mul_mod_f(u, v, mod_pow);
    std::vector<BigInt> two_minus(uv.size());
    for (std::size_t i = 0; i < uv.size(); ++i) two_minus[i] = -uv[i];
    two_minus[0] += 2;
    f.reduce_coords(two_minus, mod_pow);
    v = f.poly_mul_mod_f(v, two_minus, mod_pow);
    err_units *= 2;
  }
  return v;
}

}  // namespace

Scalar::Scalar(FieldPtr field, std::vector<BigInt> coords, int shift, int prec)
    : field_(std::move(field)), coords_(std::move(coords)), shift_(shift), prec_(prec) {
  normalize();
}

int Scalar::coord_cap() const { return ceil_div(std::max(prec_ - shift_, 1), field_->ram_index()); }

void Scalar::normalize() {
  const Field& f = *field_;
  if (prec_ > f.precision_cap()) prec_ = f.precision_cap();
  if (prec_ <= 0)
    throw PrecisionExhausted("scalar", "result carries no significant digits", prec_);
  if (shift_ > 0) {
    int cap = ceil_div(prec_, f.ram_index()) + shift_;
    for (int i = 0; i < shift_; ++i) coords_ = f.coords_mul_uniformizer(coords_, cap);
    shift_ = 0;
  }
  if (prec_ <= shift_) {  // nothing known beyond "zero at precision"
    std::fill(coords_.begin(), coords_.end(), BigInt(0));
    shift_ = 0;
    return;
  }
  f.reduce_coords(coords_, coord_cap());
  int rel_units = prec_ - shift_;
  int v = f.coord_val_units(coords_, rel_units);
  if (v >= rel_units) {  // zero at precision: canonical form
    std::fill(coords_.begin(), coords_.end(), BigInt(0));
    shift_ = 0;
    return;
  }
  if (shift_ < 0 && v > 0) {
    int k = std::min(v, -shift_);
    int cap = coord_cap() + 2;
    for (int i = 0; i < k; ++i) coords_ = f.coords_div_uniformizer(coords_, cap);
    shift_ += k;
    f.reduce_coords(coords_, coord_cap());
  }
}

Scalar Scalar::zero(FieldPtr field) { return zero(field, field->precision_cap()); }

Scalar Scalar::zero(FieldPtr field, int prec_units) {
  std::vector<BigInt> c(field->degree(), BigInt(0));
  return Scalar(std::move(field), std::move(c), 0, prec_units);
}

Scalar Scalar::one(FieldPtr field) { return from_integer(std::move(field), BigInt(1)); }

Scalar Scalar::from_integer(FieldPtr field, const BigInt& n) {
  std::vector<BigInt> c(field->degree(), BigInt(0));
  c[0] = n;
  int cap = field->precision_cap();
  return Scalar(std::move(field), std::move(c), 0, cap);
}

Scalar Scalar::from_rational(FieldPtr field, const BigInt& num, const BigInt& den) {
  const Field& f = *field;
  if (den == 0) throw InvalidInput("scalar", "rational literal with zero denominator");
  if (num == 0) return zero(std::move(field));
  const int N = f.precision_cap();
  const int e = f.ram_index();
  int guard = 2 * N + 4;
  int vn = f.int_valuation(num, guard);
  int vd = f.int_valuation(den, guard);
  BigInt nu = num, de = den;
  for (int i = 0; i < vn; ++i) nu /= f.p();
  for (int i = 0; i < vd; ++i) de /= f.p();
  int shift = e * (vn - vd);
  int cap = ceil_div(std::max(N - shift, 1), e) + 1;
  BigInt unit = f.mod_p_pow(nu * f.invert_unit_mod_p_pow(de, cap), cap);
  std::vector<BigInt> c(f.degree(), BigInt(0));
  c[0] = unit;
  return Scalar(std::move(field), std::move(c), shift, N);
}

Scalar Scalar::from_coords(FieldPtr field,
                           const std::vector<std::pair<BigInt, BigInt>>& coords) {
  const Field& f = *field;
  if (static_cast<int>(coords.size()) != f.degree())
    throw InvalidInput("scalar", "coordinate literal has wrong length for the field degree");
  Scalar acc = zero(field);
  std::vector<BigInt> mono(f.degree(), BigInt(0));
  mono[0] = 1;
  for (int i = 0; i < f.degree(); ++i) {
    if (coords[i].first != 0) {
      Scalar coeff = from_rational(field, coords[i].first, coords[i].second);
      Scalar term = coeff * Scalar(field, mono, 0, f.precision_cap());
      acc = acc + term;
    }
    if (i + 1 < f.degree()) mono = f.coords_mul_x(mono, 4 * f.precision_cap() + 4);
  }
  return acc;
}

Scalar Scalar::from_term_data(FieldPtr field,
                              const std::vector<std::pair<int, std::vector<BigInt>>>& terms,
                              int prec_units) {
  const Field& f = *field;
  if (terms.empty()) return zero(std::move(field), prec_units);
  int start = terms.front().first;
  for (const auto& [expo, unused] : terms) start = std::min(start, expo);
  int cap = ceil_div(std::max(prec_units - start, 1), f.ram_index()) + 2;
  std::vector<BigInt> acc(f.degree(), BigInt(0));
  for (const auto& [expo, poly] : terms) {
    std::vector<BigInt> c(f.degree(), BigInt(0));
    for (std::size_t i = 0; i < poly.size() && i < c.size(); ++i) c[i] = poly[i];
    for (int k = 0; k < expo - start; ++k) c = f.coords_mul_uniformizer(c, cap);
    for (int i = 0; i < f.degree(); ++i) acc[i] += c[i];
  }
  return Scalar(std::move(field), std::move(acc), start, prec_units);
}

Scalar Scalar::uniformizer(FieldPtr field) {
  const Field& f = *field;
  std::vector<BigInt> c(f.degree(), BigInt(0));
  if (f.mode() == RamificationMode::unramified)
    c[0] = f.p();
  else
    c[1] = 1;
  int cap = f.precision_cap();
  return Scalar(std::move(field), std::move(c), 0, cap);
}

int Scalar::valuation_units() const {
  int rel = field_->coord_val_units(coords_, prec_ - shift_);
  return std::min(shift_ + rel, prec_);
}

bool Scalar::is_zero_at_precision() const { return valuation_units() >= prec_; }

Valuation Scalar::valuation() const {
  if (is_zero_at_precision()) return Valuation::infinity();
  return field_->units_to_valuation(valuation_units());
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  require_same_field(field_, rhs.field_, "scalar add");
  int shift = std::min(shift_, rhs.shift_);
  int prec = std::min(prec_, rhs.prec_);
  int cap = ceil_div(std::max(prec - shift, 1), field_->ram_index()) + 2;
  std::vector<BigInt> a = coords_, b = rhs.coords_;
  for (int i = 0; i < shift_ - shift; ++i) a = field_->coords_mul_uniformizer(a, cap);
  for (int i = 0; i < rhs.shift_ - shift; ++i) b = field_->coords_mul_uniformizer(b, cap);
  for (int i = 0; i < field_->degree(); ++i) a[i] += b[i];
  return Scalar(field_, std::move(a), shift, prec);
}

Scalar Scalar::operator-() const {
  std::vector<BigInt> c = coords_;
  for (auto& x : c) x = -x;
  return Scalar(field_, std::move(c), shift_, prec_);
}

Scalar Scalar::operator-(const Scalar& rhs) const { return *this + (-rhs); }

Scalar Scalar::operator*(const Scalar& rhs) const {
  require_same_field(field_, rhs.field_, "scalar mul");
  int va = valuation_units(), vb = rhs.valuation_units();
  int prec = std::min({prec_ + vb, rhs.prec_ + va, field_->precision_cap()});
  if (prec <= 0)
    throw PrecisionExhausted("scalar mul", "product carries no significant digits", prec);
  int shift = shift_ + rhs.shift_;
  int cap = ceil_div(std::max(prec - shift, 1), field_->ram_index()) + 1;
  std::vector<BigInt> c = field_->poly_mul_mod_f(coords_, rhs.coords_, cap);
  return Scalar(field_, std::move(c), shift, prec);
}

Scalar Scalar::operator/(const Scalar& rhs) const {
  require_same_field(field_, rhs.field_, "scalar div");
  const Field& f = *field_;
  if (rhs.is_zero_at_precision())
    throw DivisionBelowPrecision("scalar div",
                                 "divisor is indistinguishable from zero at precision",
                                 rhs.prec_);
  int va = valuation_units(), vb = rhs.valuation_units();
  // quotient precision: the divisor contributes its relative precision, the
  // dividend its absolute one shifted by v(b)
  int prec = std::min({prec_ - vb, rhs.prec_ - 2 * vb + va, f.precision_cap()});
  if (prec <= 0)
    throw PrecisionExhausted("scalar div", "quotient carries no significant digits", prec);
  // strip the divisor to pi^t * unit and invert the unit only; forming the
  // standalone inverse could underflow the cap even when the quotient is fine
  std::vector<BigInt> u = rhs.coords_;
  int rel = rhs.prec_ - rhs.shift_;
  int t = f.coord_val_units(u, rel);
  int work_cap = ceil_div(rel, f.ram_index()) + t + 2;
  for (int i = 0; i < t; ++i) u = f.coords_div_uniformizer(u, work_cap);
  int shift = shift_ - rhs.shift_ - t;
  int coord_cap = ceil_div(std::max(prec - shift, 1), f.ram_index()) + 1;
  std::vector<BigInt> w = invert_unit_coords(f, u, coord_cap);
  std::vector<BigInt> c = f.poly_mul_mod_f(coords_, w, coord_cap);
  return Scalar(field_, std::move(c), shift, prec);
}

Scalar Scalar::inverse() const { return one(field_) / *this; }

Scalar Scalar::pow(unsigned long k) const {
  Scalar acc = one(field_);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1UL) acc = acc * base;
    base = base * base;
    k >>= 1UL;
  }
  return acc;
}

Scalar Scalar::shifted_by_uniformizer(int k) const {
  if (is_zero_at_precision()) {
    int prec = std::min(prec_ + k, field_->precision_cap());
    return zero(field_, std::max(prec, 1));
  }
  int prec = std::min(prec_ + k, field_->precision_cap());
  return Scalar(field_, coords_, shift_ + k, prec);
}

Scalar Scalar::with_precision_cap(int prec_units) const {
  return Scalar(field_, coords_, shift_, std::min(prec_, prec_units));
}

bool Scalar::equal_at_precision(const Scalar& rhs) const {
  return (*this - rhs).is_zero_at_precision();
}

ResidueElem Scalar::residue() const {
  const Field& f = *field_;
  ResidueElem r = f.residue_zero();
  if (is_zero_at_precision()) return r;
  if (valuation_units() < 0) throw Error("scalar", "residue of a non-integral value");
  if (valuation_units() >= 1) return r;
  // shift_ <= 0 and valuation 0 force shift_ == 0 after normalization
  for (int i = 0; i < f.residue_degree(); ++i)
    r[i] = static_cast<long>(f.mod_p_pow(coords_[i], 1));
  return r;
}

Scalar::Digits Scalar::digit_expansion() const {
  const Field& f = *field_;
  Digits out;
  out.precision = prec_;
  out.start = shift_;
  if (is_zero_at_precision()) {
    out.start = prec_;
    return out;
  }
  std::vector<BigInt> c = coords_;
  int cap = coord_cap() + 2;
  for (int k = shift_; k < prec_; ++k) {
    ResidueElem digit(f.residue_degree(), 0);
    if (f.mode() == RamificationMode::unramified) {
      for (int i = 0; i < f.degree(); ++i) digit[i] = static_cast<long>(f.mod_p_pow(c[i], 1));
      for (int i = 0; i < f.degree(); ++i) c[i] = (c[i] - digit[i]) / f.p();
    } else {
      digit[0] = static_cast<long>(f.mod_p_pow(c[0], 1));
      c[0] -= digit[0];
      c = f.coords_div_uniformizer(c, cap);
    }
    out.digits.push_back(std::move(digit));
  }
  return out;
}

std::string Scalar::to_digit_string() const {
  const Field& f = *field_;
  Digits d = digit_expansion();
  std::ostringstream os;
  bool first = true;
  auto render_digit = [&](const ResidueElem& digit) {
    if (f.residue_degree() == 1) return std::to_string(digit[0]);
    bool composite = false;
    for (int i = 1; i < f.residue_degree(); ++i)
      if (digit[i] != 0) composite = true;
    if (!composite) return std::to_string(digit[0]);
    std::string s = "(";
    bool inner_first = true;
    for (int i = 0; i < f.residue_degree(); ++i) {
      if (digit[i] == 0) continue;
      if (!inner_first) s += "+";
      inner_first = false;
      if (i == 0)
        s += std::to_string(digit[i]);
      else if (digit[i] == 1)
        s += (i == 1 ? "x" : "x^" + std::to_string(i));
      else
        s += std::to_string(digit[i]) + "*" + (i == 1 ? "x" : "x^" + std::to_string(i));
    }
    return s + ")";
  };
  for (std::size_t k = 0; k < d.digits.size(); ++k) {
    const ResidueElem& digit = d.digits[k];
    if (f.residue_is_zero(digit)) continue;
    int expo = d.start + static_cast<int>(k);
    if (!first) os << " + ";
    first = false;
    if (expo == 0)
      os << render_digit(digit);
    else if (expo == 1)
      os << render_digit(digit) << "*π";
    else
      os << render_digit(digit) << "*π^" << expo;
  }
  if (first) os << "0";
  os << " + O(π^" << d.precision << ")";
  return os.str();
}

int Scalar::compare_digits(const Scalar& a, const Scalar& b, int floor_units) {
  Digits da = a.digit_expansion(), db = b.digit_expansion();
  int lo = std::min(da.start, db.start);
  int hi = std::min({floor_units, da.precision, db.precision});
  auto digit_at = [](const Digits& d, int expo) -> ResidueElem {
    int idx = expo - d.start;
    if (idx < 0 || idx >= static_cast<int>(d.digits.size())) return {};
    return d.digits[idx];
  };
  for (int k = lo; k < hi; ++k) {
    ResidueElem xa = digit_at(da, k), xb = digit_at(db, k);
    std::size_t n = std::max(xa.size(), xb.size());
    for (std::size_t i = 0; i < n; ++i) {
      long va = i < xa.size() ? xa[i] : 0;
      long vb = i < xb.size() ? xb[i] : 0;
      if (va != vb) return va < vb ? -1 : 1;
    }
  }
  return 0;
}

// --- log / exp ---------------------------------------------------------------

namespace {

int ilog_p(long p, long k) {
  int r = 0;
  while (k >= p) {
    k /= p;
    ++r;
  }
  return r;
}

}  // namespace

Scalar padic_log(const Scalar& a) {
  const Field& f = *a.field();
  Scalar x = a - Scalar::one(a.field());
  if (x.is_zero_at_precision()) return Scalar::zero(a.field(), x.precision_units());
  int w = x.valuation_units();
  if (w <= 0)
    throw LogDomainError("padic_log", "argument is not congruent to 1 modulo the maximal ideal",
                         a.precision_units());
  const int e = f.ram_index();
  const int target = f.precision_cap();
  Scalar sum = Scalar::zero(a.field());
  Scalar power = Scalar::one(a.field());
  long k = 0;
  while (true) {
    ++k;
    // terms with k*w - e*log_p(k) >= target contribute nothing; past
    // 2*ceil(e/w) the bound is increasing, so we may stop for good.
    if (k > 2 * ceil_div(e, w) &&
        k * static_cast<long>(w) - static_cast<long>(e) * (ilog_p(f.p(), k) + 1) >= target)
      break;
    power = power * x;
    Scalar term = power / Scalar::from_integer(a.field(), BigInt(k));
    if (k % 2 == 0) term = -term;
    sum = sum + term;
    if (k > 16 * target + 64)
      throw Error("padic_log", "series failed to terminate (internal bound exceeded)");
  }
  return sum;
}

Scalar padic_exp(const Scalar& a) {
  const Field& f = *a.field();
  const int e = f.ram_index();
  const long p = f.p();
  int w = a.valuation_units();
  if (!a.is_zero_at_precision() && static_cast<long>(w) * (p - 1) <= e)
    throw ExpDomainError("padic_exp", "argument valuation is not above 1/(p-1)",
                         a.precision_units());
  if (a.is_zero_at_precision() && static_cast<long>(a.precision_units()) * (p - 1) <= e)
    throw ExpDomainError("padic_exp",
                         "argument is zero at a precision too low to certify convergence",
                         a.precision_units());
  const int target = f.precision_cap();
  Scalar sum = Scalar::one(a.field());
  Scalar term = Scalar::one(a.field());
  long k = 0;
  while (true) {
    ++k;
    // v(a^k / k!) >= k*w - e*(k-1)/(p-1), increasing in k on the domain
    if (k * (static_cast<long>(w) * (p - 1) - e) + e >= static_cast<long>(p - 1) * target) break;
    term = term * a / Scalar::from_integer(a.field(), BigInt(k));
    sum = sum + term;
    if (k > 16L * target * (p - 1) + 64)
      throw Error("padic_exp", "series failed to terminate (internal bound exceeded)");
  }
  return sum;
}

// --- Z_p ----------------------------------------------------------------------

ZpElement ZpElement::from_integer(FieldPtr field, const BigInt& n) {
  BigInt v = field->mod_p_pow(n, field->precision_cap());
  return ZpElement(std::move(field), std::move(v));
}

ZpElement ZpElement::from_digits(FieldPtr field, const std::vector<long>& digits) {
  if (static_cast<int>(digits.size()) > field->precision_cap())
    throw InvalidInput("zp", "digit vector longer than the precision cap");
  BigInt v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < 0 || digits[i] >= field->p())
      throw InvalidInput("zp", "digit out of range");
    v = v * field->p() + digits[i];
  }
  return ZpElement(std::move(field), std::move(v));
}

std::vector<long> ZpElement::digits() const {
  std::vector<long> out(field_->precision_cap());
  BigInt v = value_;
  for (int i = 0; i < field_->precision_cap(); ++i) {
    out[i] = static_cast<long>(v % field_->p());
    v /= field_->p();
  }
  return out;
}

ZpElement ZpElement::operator+(const ZpElement& rhs) const {
  require_same_field(field_, rhs.field_, "zp add");
  return from_integer(field_, value_ + rhs.value_);
}

ZpElement ZpElement::operator-(const ZpElement& rhs) const {
  require_same_field(field_, rhs.field_, "zp sub");
  return from_integer(field_, value_ - rhs.value_);
}

ZpElement ZpElement::operator*(const ZpElement& rhs) const {
  require_same_field(field_, rhs.field_, "zp mul");
  return from_integer(field_, value_ * rhs.value_);
}

Scalar ZpElement::embed() const { return Scalar::from_integer(field_, value_); }

Scalar binomial_zp(const ZpElement& gamma, unsigned k) {
  const FieldPtr& field = gamma.field();
  if (k == 0) return Scalar::one(field);
  if (k > 4096) throw InvalidInput("binomial_zp", "k exceeds the supported cap");
  // exact integer binomial of the representative; correct modulo
  // p^(N - v_p(k!)) for the underlying Z_p element
  BigInt num = 1;
  const BigInt& r = gamma.representative();
  for (unsigned j = 0; j < k; ++j) num *= (r - j);
  BigInt fact = 1;
  for (unsigned j = 2; j <= k; ++j) fact *= j;
  int vfact = field->int_valuation(fact, field->precision_cap());
  Scalar result = Scalar::from_rational(field, num, fact);
  int prec = field->ram_index() * (field->precision_cap() - vfact);
  return result.with_precision_cap(prec);
}

bool is_admissible_character_value(const Scalar& lambda) {
  const Field& f = *lambda.field();
  Scalar x = lambda - Scalar::one(lambda.field());
  int need = f.p() == 2 ? 2 * f.ram_index() : f.ram_index();
  return x.valuation_units() >= need;
}

Scalar zp_scalar_power(const Scalar& lambda, const ZpElement& z) {
  require_same_field(lambda.field(), z.field(), "zp_scalar_power");
  if (!is_admissible_character_value(lambda))
    throw CharacterAdmissibilityError(
        "zp_scalar_power", "base is not congruent to 1 modulo p (modulo 4 when p = 2)",
        lambda.precision_units());
  return padic_exp(z.embed() * padic_log(lambda));
}

}  // namespace abeloid
