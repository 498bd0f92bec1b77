#include "abeloid/poly.hpp"

#include <algorithm>

#include "abeloid/errors.hpp"

namespace abeloid {

PolyK::PolyK(FieldPtr field, std::vector<Scalar> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Scalar::zero(field_));
}

PolyK PolyK::from_roots(FieldPtr field, const std::vector<Scalar>& roots) {
  std::vector<Scalar> c = {Scalar::one(field)};
  for (const Scalar& r : roots) {
    std::vector<Scalar> next(c.size() + 1, Scalar::zero(field));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = next[i + 1] + c[i];
      next[i] = next[i] - r * c[i];
    }
    c = std::move(next);
  }
  return PolyK(std::move(field), std::move(c));
}

bool PolyK::is_monic_at_precision() const {
  return coeffs_.back().equal_at_precision(Scalar::one(field_));
}

Scalar PolyK::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

PolyK PolyK::derivative() const {
  if (degree() <= 0) return PolyK(field_, {Scalar::zero(field_)});
  std::vector<Scalar> d(coeffs_.size() - 1, Scalar::zero(field_));
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * Scalar::from_integer(field_, BigInt(static_cast<long>(k)));
  return PolyK(field_, std::move(d));
}

PolyK PolyK::shifted(const Scalar& c) const {
  const int n = degree();
  std::vector<Scalar> b = coeffs_;
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) b[j] = b[j] + c * b[j + 1];
  return PolyK(field_, std::move(b));
}

PolyK PolyK::deflate(const Scalar& r) const {
  const int n = degree();
  if (n < 1) throw InvalidInput("poly deflate", "cannot deflate a constant");
  std::vector<Scalar> q(n, Scalar::zero(field_));
  q[n - 1] = coeffs_[n];
  for (int k = n - 1; k >= 1; --k) q[k - 1] = coeffs_[k] + r * q[k];
  return PolyK(field_, std::move(q));
}

int PolyK::precision_floor_units() const {
  int floor = field_->precision_cap();
  for (const Scalar& s : coeffs_) floor = std::min(floor, s.precision_units());
  return floor;
}

PolyK charpoly(const MatrixK& m) {
  if (m.rows() != m.cols()) throw InvalidInput("charpoly", "matrix not square");
  const FieldPtr& field = m.field();
  const int n = m.rows();
  // Berkowitz: iterate c <- T_k c over the leading principal submatrices,
  // where T_k is the (k+1) x k lower-triangular Toeplitz matrix generated by
  // (1, -a_kk, -R S, -R A S, -R A^2 S, ...).
  std::vector<Scalar> c = {Scalar::one(field)};  // highest-degree first
  for (int k = 1; k <= n; ++k) {
    std::vector<Scalar> q(k + 1, Scalar::zero(field));
    q[0] = Scalar::one(field);
    q[1] = -m.at(k - 1, k - 1);
    if (k >= 2) {
      // w iterates A^j S on the leading (k-1)-block
      std::vector<Scalar> w(k - 1, Scalar::zero(field));
      for (int i = 0; i < k - 1; ++i) w[i] = m.at(i, k - 1);
      for (int j = 2; j <= k; ++j) {
        Scalar dot = Scalar::zero(field);
        for (int i = 0; i < k - 1; ++i) dot = dot + m.at(k - 1, i) * w[i];
        q[j] = -dot;
        if (j < k) {
          std::vector<Scalar> next(k - 1, Scalar::zero(field));
          for (int i = 0; i < k - 1; ++i)
            for (int t = 0; t < k - 1; ++t) next[i] = next[i] + m.at(i, t) * w[t];
          w = std::move(next);
        }
      }
    }
    std::vector<Scalar> cn(k + 1, Scalar::zero(field));
    for (int i = 0; i <= k; ++i) {
      int jlo = std::max(0, i - k);
      int jhi = std::min(i, static_cast<int>(c.size()) - 1);
      for (int j = jlo; j <= jhi; ++j) cn[i] = cn[i] + q[i - j] * c[j];
    }
    c = std::move(cn);
  }
  std::reverse(c.begin(), c.end());
  return PolyK(field, std::move(c));
}

namespace {

using ResPoly = std::vector<ResidueElem>;  // ascending coefficients

ResPoly residue_poly(const PolyK& h) {
  ResPoly r;
  r.reserve(h.coeffs().size());
  for (const Scalar& c : h.coeffs()) r.push_back(c.residue());
  return r;
}

int res_degree(const Field& f, const ResPoly& r) {
  for (int k = static_cast<int>(r.size()) - 1; k >= 0; --k)
    if (!f.residue_is_zero(r[k])) return k;
  return -1;
}

ResidueElem res_eval(const Field& f, const ResPoly& r, const ResidueElem& x) {
  ResidueElem acc = f.residue_zero();
  for (int k = static_cast<int>(r.size()) - 1; k >= 0; --k)
    acc = f.residue_add(f.residue_mul(acc, x), r[k]);
  return acc;
}

ResPoly res_derivative(const Field& f, const ResPoly& r) {
  ResPoly d;
  for (std::size_t k = 1; k < r.size(); ++k) {
    ResidueElem scaled(r[k].size());
    long kmod = static_cast<long>(k % f.p());
    for (std::size_t i = 0; i < r[k].size(); ++i) scaled[i] = r[k][i] * kmod % f.p();
    d.push_back(std::move(scaled));
  }
  if (d.empty()) d.push_back(f.residue_zero());
  return d;
}

Scalar lift_residue(const FieldPtr& field, const ResidueElem& r) {
  std::vector<std::pair<BigInt, BigInt>> coords(field->degree(), {BigInt(0), BigInt(1)});
  for (std::size_t i = 0; i < r.size(); ++i) coords[i].first = r[i];
  return Scalar::from_coords(field, coords);
}

// A Hensel-lifted value approximates the true root only up to the residual
// bound |h(y)| / |h'(y)|, so its precision is capped at the coefficient floor
// rather than at the arithmetic bookkeeping.
Scalar hensel_lift(const PolyK& h, Scalar y) {
  PolyK dh = h.derivative();
  for (int iter = 0; iter < 64; ++iter) {
    Scalar fy = h.eval(y);
    if (fy.is_zero_at_precision()) break;
    y = y - fy / dh.eval(y);
  }
  return y.with_precision_cap(h.precision_floor_units());
}

// multiplicity of the residue root c in hr, by repeated synthetic division
int residue_multiplicity(const Field& f, ResPoly hr, const ResidueElem& c) {
  int mult = 0;
  while (true) {
    int deg = res_degree(f, hr);
    if (deg < 1) return mult;
    // synthetic division by (y - c) over the residue field
    ResPoly q(deg);
    ResidueElem carry = hr[deg];
    for (int k = deg - 1; k >= 0; --k) {
      q[k] = carry;
      carry = f.residue_add(hr[k], f.residue_mul(carry, c));
    }
    if (!f.residue_is_zero(carry)) return mult;
    ++mult;
    q.resize(deg == 0 ? 1 : deg);
    hr = std::move(q);
  }
}

// Full digit-tree exploration.  Every distinct root is carried along its own
// shift/scale path of the original polynomial (no deflation between roots, so
// one cluster's precision loss never contaminates another), and a repeated
// root is emitted once per multiplicity when its branch bottoms out at the
// precision floor.  Hensel acceleration kicks in as soon as a branch's
// residue root is simple.
void explore_branch(const PolyK& h, const Scalar& prefix, int s,
                    std::vector<Scalar>& out) {
  const FieldPtr& field = h.field();
  const Field& f = *field;
  const int cap = f.precision_cap();
  ResPoly hr = residue_poly(h);
  int hd = res_degree(f, hr);
  if (hd < 0) {
    // every coefficient vanished at precision: all branch roots agree with
    // the prefix as far as the data can tell
    if (s == 0) throw PrecisionExhausted("roots", "coefficients vanish at precision", 0);
    for (int i = 0; i < h.degree(); ++i) out.push_back(prefix.with_precision_cap(s));
    return;
  }
  if (hd == 0)
    throw RootsNotInField("roots",
                          "no residue digit annihilates the reduced polynomial; some root "
                          "lies outside the configured field");
  ResPoly dhr = res_derivative(f, hr);
  int found_mult = 0;
  for (long idx = 0; idx < f.residue_size(); ++idx) {
    ResidueElem x = f.residue_from_index(idx);
    if (!f.residue_is_zero(res_eval(f, hr, x))) continue;
    Scalar digit = lift_residue(field, x);
    if (!f.residue_is_zero(res_eval(f, dhr, x))) {
      // simple residue root: quadratic convergence to the floor
      Scalar y = hensel_lift(h, digit);
      out.push_back(prefix + y.shifted_by_uniformizer(s));
      found_mult += 1;
      continue;
    }
    int mult = residue_multiplicity(f, hr, x);
    found_mult += mult;
    Scalar next_prefix = prefix + digit.shifted_by_uniformizer(s);
    if (s + 1 >= cap) {
      for (int i = 0; i < mult; ++i) out.push_back(next_prefix);
      continue;
    }
    // h(digit + pi*y), then strip the uniformizer content
    PolyK shifted = h.shifted(digit);
    std::vector<Scalar> coeffs = shifted.coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      coeffs[k] = coeffs[k].shifted_by_uniformizer(static_cast<int>(k));
    int content = f.precision_cap();
    for (const Scalar& ck : coeffs) content = std::min(content, ck.valuation_units());
    bool exhausted = false;
    if (content > 0) {
      for (const Scalar& ck : coeffs)
        if (ck.precision_units() - content <= 0) exhausted = true;
      if (!exhausted)
        for (auto& ck : coeffs) ck = ck.shifted_by_uniformizer(-content);
    }
    if (exhausted) {
      for (int i = 0; i < mult; ++i) out.push_back(next_prefix.with_precision_cap(s + 1));
      continue;
    }
    explore_branch(PolyK(field, std::move(coeffs)), next_prefix, s + 1, out);
  }
  if (found_mult < hd)
    throw RootsNotInField("roots",
                          "the reduced polynomial does not split over the residue field; some "
                          "root lies outside the configured field");
}

}  // namespace

std::vector<Scalar> roots_in_principal_units(const PolyK& f) {
  if (!f.is_monic_at_precision())
    throw InvalidInput("roots", "polynomial must be monic");
  for (const Scalar& c : f.coeffs())
    if (c.valuation_units() < 0)
      throw RootsNotInField("roots",
                            "monic polynomial with non-integral coefficients has roots outside "
                            "the ring of integers");
  if (f.degree() < 1) return {};
  if (f.precision_floor_units() <= 0)
    throw PrecisionExhausted("roots", "polynomial carries no significant digits", 0);
  std::vector<Scalar> roots;
  explore_branch(f, Scalar::zero(f.field()), 0, roots);
  if (static_cast<int>(roots.size()) != f.degree())
    throw RootsNotInField("roots", "root multiplicities do not sum to the degree");
  return roots;
}

}  // namespace abeloid
