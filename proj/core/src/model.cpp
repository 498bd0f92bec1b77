#include "abeloid/model.hpp"

#include <algorithm>

#include "abeloid/errors.hpp"
#include "abeloid/linalg.hpp"

namespace abeloid {

ValidationReport AbeloidModel::validate() const {
  if (g < 1) return ValidationReport::fail("g must be positive");
  if (omega_basis.rows() != 2 * g || omega_basis.cols() != g)
    return ValidationReport::fail("omega_basis must be 2g x g");
  if (analytic_basis.rows() != 2 * g || analytic_basis.cols() != g)
    return ValidationReport::fail("analytic_basis must be 2g x g");
  if (!is_invertible(combined_basis()))
    return ValidationReport::fail("[omega_basis | analytic_basis] is not invertible at precision");
  if (ordinary) {
    if (static_cast<int>(canonical_directions.size()) != g)
      return ValidationReport::fail("ordinary models need g canonical directions");
    std::vector<int> dirs = canonical_directions;
    std::sort(dirs.begin(), dirs.end());
    if (std::unique(dirs.begin(), dirs.end()) != dirs.end())
      return ValidationReport::fail("canonical directions must be distinct");
    if (dirs.front() < 1 || dirs.back() > 2 * g)
      return ValidationReport::fail("canonical directions out of range");
    const FieldPtr& f = field();
    for (int j = 0; j < g; ++j) {
      for (int i = 0; i < 2 * g; ++i) {
        Scalar expect = (i == canonical_directions[j] - 1) ? Scalar::one(f) : Scalar::zero(f);
        if (!omega_basis.at(i, j).equal_at_precision(expect))
          return ValidationReport::fail(
              "ordinary model requires omega_basis columns to be the standard vectors at the "
              "canonical directions");
      }
    }
  }
  return ValidationReport::ok();
}

AbeloidModel AbeloidModel::standard_ordinary(FieldPtr field, int g,
                                             const std::vector<int>& directions) {
  if (static_cast<int>(directions.size()) != g)
    throw InvalidInput("abeloid model", "need exactly g canonical directions");
  std::vector<bool> is_dir(2 * g, false);
  for (int d : directions) {
    if (d < 1 || d > 2 * g) throw InvalidInput("abeloid model", "direction out of range");
    is_dir[d - 1] = true;
  }
  MatrixK omega(field, 2 * g, g);
  MatrixK analytic(field, 2 * g, g);
  for (int j = 0; j < g; ++j) omega.at(directions[j] - 1, j) = Scalar::one(field);
  int col = 0;
  for (int i = 0; i < 2 * g; ++i) {
    if (is_dir[i]) continue;
    analytic.at(i, col) = Scalar::one(field);
    ++col;
  }
  AbeloidModel m(g, std::move(omega), std::move(analytic));
  m.ordinary = true;
  m.canonical_directions = directions;
  return m;
}

}  // namespace abeloid
