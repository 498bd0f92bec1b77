#pragma once

// Independent oracles for the DERIVED expected values: exact rational
// arithmetic (boost cpp_rational / cpp_int) with no dependence on the Scalar
// implementation path being checked.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <vector>

#include "abeloid/scalar.hpp"

namespace oracle {

using abeloid::BigInt;
using BigRat = boost::multiprecision::cpp_rational;

inline abeloid::Scalar embed(const abeloid::FieldPtr& field, const BigRat& r) {
  return abeloid::Scalar::from_rational(field, numerator(r), denominator(r));
}

inline int rat_valuation(const BigRat& r, long p) {
  if (r == 0) return 1 << 20;
  int v = 0;
  BigInt num = numerator(r), den = denominator(r);
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

inline int ilog_p(long p, long k) {
  int r = 0;
  while (k >= p) {
    k /= p;
    ++r;
  }
  return r;
}

// log(a) = sum (-1)^(k+1) (a-1)^k / k over exact rationals; stops once every
// remaining term has p-valuation >= target (true for k*w - log_p(k) >= target
// past the small-k dip).
inline BigRat rational_log(const BigRat& a, long p, int target) {
  BigRat x = a - 1, sum = 0, power = 1;
  int w = rat_valuation(x, p);
  long k = 0;
  while (true) {
    ++k;
    if (k > 4 && k * w - ilog_p(p, k) - 1 >= target) break;
    power *= x;
    BigRat term = power / k;
    if (k % 2 == 0) term = -term;
    sum += term;
  }
  return sum;
}

// exp(a) truncated the same way; requires v_p(a) >= 1 (p odd).
inline BigRat rational_exp(const BigRat& a, long p, int target) {
  BigRat sum = 1, term = 1;
  int w = rat_valuation(a, p);
  for (long k = 1;; ++k) {
    if (k * (w * (p - 1) - 1) + 1 >= static_cast<long>(p - 1) * target) break;
    term = term * a / k;
    sum += term;
  }
  return sum;
}

// Dense integer polynomial arithmetic for the charpoly oracle.
using ZPoly = std::vector<BigInt>;  // ascending

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline ZPoly zp_add(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline ZPoly zp_neg(ZPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

// det(xI - M) by Laplace expansion over Z[x]; M given as integer entries.
inline ZPoly charpoly_cofactor(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<ZPoly>> a(n, std::vector<ZPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        a[i][j] = {-m[i][j], BigInt(1)};
      else
        a[i][j] = {-m[i][j]};
    }
  std::function<ZPoly(const std::vector<std::vector<ZPoly>>&)> det =
      [&](const std::vector<std::vector<ZPoly>>& b) -> ZPoly {
    if (b.size() == 1) return b[0][0];
    ZPoly acc = {BigInt(0)};
    for (std::size_t c = 0; c < b.size(); ++c) {
      std::vector<std::vector<ZPoly>> minor;
      for (std::size_t i = 1; i < b.size(); ++i) {
        std::vector<ZPoly> row;
        for (std::size_t j = 0; j < b.size(); ++j)
          if (j != c) row.push_back(b[i][j]);
        minor.push_back(std::move(row));
      }
      ZPoly term = zp_mul(b[0][c], det(minor));
      acc = zp_add(std::move(acc), c % 2 == 0 ? term : zp_neg(term));
    }
    return acc;
  };
  return det(a);
}

}  // namespace oracle
