#include "abeloid/koszul.hpp"

#include <algorithm>
#include <map>

#include "abeloid/errors.hpp"
#include "abeloid/linalg.hpp"

namespace abeloid {

std::vector<std::vector<int>> colex_subsets(int r, int d) {
  std::vector<std::vector<int>> out;
  if (d < 0 || d > r) return out;
  if (d == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> s(d);
  for (int i = 0; i < d; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    // next subset in colex: bump the lowest index that can move
    int i = 0;
    while (i < d && s[i] + 1 == (i + 1 < d ? s[i + 1] : r)) ++i;
    if (i == d) break;
    ++s[i];
    for (int j = 0; j < i; ++j) s[j] = j;
  }
  return out;
}

KoszulComplex build_koszul(const std::vector<Scalar>& gammas) {
  if (gammas.empty()) throw InvalidInput("build_koszul", "need at least one gamma");
  const FieldPtr& field = gammas.front().field();
  for (const Scalar& gmm : gammas) {
    Scalar x = gmm - Scalar::one(field);
    if (x.distinguishable_from_zero() && x.valuation_units() < 1)
      throw CharacterAdmissibilityError("build_koszul",
                                        "gamma is not congruent to 1 modulo the maximal ideal");
  }
  const int r = static_cast<int>(gammas.size());
  KoszulComplex k;
  k.r = r;
  k.gammas = gammas;
  std::vector<Scalar> units;
  units.reserve(gammas.size());
  for (const Scalar& gmm : gammas) units.push_back(gmm - Scalar::one(field));
  for (int d = 0; d < r; ++d) {
    std::vector<std::vector<int>> lo = colex_subsets(r, d);
    std::vector<std::vector<int>> hi = colex_subsets(r, d + 1);
    std::map<std::vector<int>, int> hi_index;
    for (std::size_t t = 0; t < hi.size(); ++t) hi_index[hi[t]] = static_cast<int>(t);
    MatrixK m(field, static_cast<int>(hi.size()), static_cast<int>(lo.size()));
    for (std::size_t c = 0; c < lo.size(); ++c) {
      const std::vector<int>& s = lo[c];
      for (int i = 0; i < r; ++i) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        std::vector<int> t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), i), i);
        int below = static_cast<int>(std::lower_bound(s.begin(), s.end(), i) - s.begin());
        Scalar entry = units[i];
        if (below % 2 == 1) entry = -entry;
        m.at(hi_index[t], static_cast<int>(c)) = entry;
      }
    }
    k.differentials.push_back(std::move(m));
  }
  // d o d = 0, exact at the precision floor
  for (int d = 0; d + 1 < r; ++d)
    if (!(k.differentials[d + 1] * k.differentials[d]).is_zero_at_precision())
      throw Error("build_koszul", "differential square is nonzero (internal sign error)");
  return k;
}

std::vector<int> koszul_cohomology_dims(const std::vector<Scalar>& gammas,
                                        std::optional<int> tol_units) {
  KoszulComplex k = build_koszul(gammas);
  const int r = k.r;
  // nullity and rank per differential; wedge^r -> 0 has full nullity 1
  std::vector<int> nullity(r + 1), rk(r + 1, 0);
  std::vector<long> binom(r + 1);
  binom[0] = 1;
  for (int d = 1; d <= r; ++d) binom[d] = binom[d - 1] * (r - d + 1) / d;
  for (int d = 0; d < r; ++d) {
    int ker = kernel_basis(k.differentials[d], tol_units).cols();
    nullity[d] = ker;
    rk[d] = static_cast<int>(binom[d]) - ker;
  }
  nullity[r] = 1;
  std::vector<int> dims(r + 1);
  for (int d = 0; d <= r; ++d) dims[d] = nullity[d] - (d > 0 ? rk[d - 1] : 0);
  return dims;
}

int ext1_line(const CharacterTuple& chi1, const CharacterTuple& chi2,
              std::optional<int> tol_units) {
  if (chi1.length() != chi2.length())
    throw InvalidInput("ext1_line", "characters have different lengths");
  if (!chi1.is_admissible() || !chi2.is_admissible())
    throw CharacterAdmissibilityError("ext1_line", "characters must be admissible");
  std::vector<Scalar> gammas;
  gammas.reserve(chi1.values.size());
  for (int j = 0; j < chi1.length(); ++j) gammas.push_back(chi2.values[j] / chi1.values[j]);
  return koszul_cohomology_dims(gammas, tol_units)[1];
}

}  // namespace abeloid
