#include "abeloid/linalg.hpp"

#include <algorithm>
#include <climits>

#include "abeloid/errors.hpp"

namespace abeloid {

namespace {

// Valuation-pivoted elimination with row normalization.
//
// Dividing by a pivot of positive valuation costs 2 v(pivot) of absolute
// precision per eliminated entry; done naively this erodes the floor below
// the rank tolerance on systems whose invariant factors carry valuation.
// Every working row is therefore kept at unit content: whenever a row becomes
// divisible by the uniformizer it is shifted down exactly and the shift is
// recorded in row_strip.  Row scaling leaves kernels and solution sets
// unchanged; the zero/pivot decisions compare the original-scale valuation
// val + strip against the tolerance, so the only precision spent is what the
// invariant factors themselves demand.

struct Echelon {
  MatrixK u;
  std::vector<int> pivot_rows;
  std::vector<int> pivot_cols;
  std::vector<int> free_cols;
  std::vector<int> row_strip;  // uniformizer powers divided out of each row
};

Echelon eliminate(const MatrixK& m, int tol_units, int pivot_col_limit) {
  Echelon ech{m, {}, {}, {}, std::vector<int>(m.rows(), 0)};
  MatrixK& u = ech.u;
  std::vector<bool> row_used(m.rows(), false);
  std::vector<bool> col_done(m.cols(), false);
  const int limit = pivot_col_limit < 0 ? m.cols() : pivot_col_limit;

  auto normalize_row = [&](int i) {
    // content may be negative: rows picked up from ill-conditioned data are
    // lifted back to unit scale, which is exact and regains capped precision
    int c = INT_MAX;
    bool all_zero = true;
    for (int j = 0; j < m.cols(); ++j) {
      const Scalar& x = u.at(i, j);
      if (x.distinguishable_from_zero()) {
        c = std::min(c, x.valuation_units());
        all_zero = false;
      } else {
        c = std::min(c, std::max(x.precision_units() - 1, 0));
      }
    }
    if (all_zero || c == INT_MAX || c == 0) return;
    for (int j = 0; j < m.cols(); ++j)
      u.at(i, j) = u.at(i, j).shifted_by_uniformizer(-c);
    ech.row_strip[i] += c;
  };

  for (int i = 0; i < m.rows(); ++i) normalize_row(i);

  while (true) {
    // pivot of minimal original-scale valuation; ties break by (col, row)
    int best_i = -1, best_j = -1, best_v = 0;
    for (int j = 0; j < limit; ++j) {
      if (col_done[j]) continue;
      for (int i = 0; i < m.rows(); ++i) {
        if (row_used[i]) continue;
        const Scalar& x = u.at(i, j);
        if (!x.distinguishable_from_zero()) continue;
        int v = x.valuation_units() + ech.row_strip[i];
        if (v >= tol_units) continue;
        if (best_i == -1 || v < best_v) {
          best_i = i;
          best_j = j;
          best_v = v;
        }
      }
    }
    if (best_i == -1) break;
    row_used[best_i] = true;
    ech.pivot_rows.push_back(best_i);
    ech.pivot_cols.push_back(best_j);
    col_done[best_j] = true;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == best_i) continue;
      const Scalar& x = u.at(i, best_j);
      if (x.is_zero_at_precision()) continue;
      Scalar factor = x / u.at(best_i, best_j);
      for (int j = 0; j < m.cols(); ++j)
        u.at(i, j) = u.at(i, j) - factor * u.at(best_i, j);
      if (!row_used[i]) normalize_row(i);
    }
  }

  for (int j = 0; j < limit; ++j) {
    if (col_done[j]) continue;
    for (int i = 0; i < m.rows(); ++i) {
      if (row_used[i]) continue;
      const Scalar& x = u.at(i, j);
      if (x.valuation_units() + ech.row_strip[i] >= tol_units) continue;
      // distinguishable entries below tol would have become pivots, so this
      // one is zero at its precision with too little of it
      throw PrecisionExhausted("elimination",
                               "cannot distinguish a pivot from zero within the floor",
                               tol_units);
    }
    ech.free_cols.push_back(j);
  }
  return ech;
}

}  // namespace

int default_tol_units(const MatrixK& m) {
  return std::max(m.precision_floor_units() - 2, 1);
}

MatrixK kernel_basis(const MatrixK& m, std::optional<int> tol_units) {
  int tol = tol_units.value_or(default_tol_units(m));
  Echelon ech = eliminate(m, tol, -1);
  const FieldPtr& field = m.field();
  MatrixK basis(field, m.cols(), static_cast<int>(ech.free_cols.size()));
  for (int k = 0; k < static_cast<int>(ech.free_cols.size()); ++k) {
    int fc = ech.free_cols[k];
    basis.at(fc, k) = Scalar::one(field);
    // pivot rows are fully reduced: each pivot variable is determined by the
    // free column's entry in its row
    for (std::size_t t = 0; t < ech.pivot_cols.size(); ++t) {
      int pc = ech.pivot_cols[t];
      int pr = ech.pivot_rows[t];
      const Scalar& coef = ech.u.at(pr, fc);
      if (coef.is_zero_at_precision()) continue;
      basis.at(pc, k) = -(coef / ech.u.at(pr, pc));
    }
  }
  return basis;
}

int rank(const MatrixK& m, std::optional<int> tol_units) {
  int tol = tol_units.value_or(default_tol_units(m));
  Echelon ech = eliminate(m, tol, -1);
  return static_cast<int>(ech.pivot_cols.size());
}

MatrixK solve_linear(const MatrixK& a, const MatrixK& b, std::optional<int> tol_units) {
  if (a.rows() != b.rows()) throw InvalidInput("solve", "row mismatch");
  int tol = tol_units.value_or(std::min(default_tol_units(a), default_tol_units(b)));
  MatrixK aug = MatrixK::hcat(a, b);
  Echelon ech = eliminate(aug, tol, a.cols());
  if (static_cast<int>(ech.pivot_cols.size()) != a.cols())
    throw PrecisionExhausted("solve", "coefficient matrix is rank-deficient at tolerance", tol);
  // consistency: rows without pivot must carry a right-hand side that is zero
  // at tolerance or at least zero at its own precision
  std::vector<bool> row_used(a.rows(), false);
  for (int r : ech.pivot_rows) row_used[r] = true;
  for (int i = 0; i < a.rows(); ++i) {
    if (row_used[i]) continue;
    for (int j = 0; j < b.cols(); ++j) {
      const Scalar& r = ech.u.at(i, a.cols() + j);
      if (r.valuation_units() + ech.row_strip[i] >= tol) continue;
      if (r.is_zero_at_precision()) continue;
      throw PrecisionExhausted("solve", "inconsistent linear system at tolerance", tol);
    }
  }
  const FieldPtr& field = a.field();
  MatrixK x(field, a.cols(), b.cols());
  for (std::size_t t = 0; t < ech.pivot_cols.size(); ++t) {
    int pc = ech.pivot_cols[t], pr = ech.pivot_rows[t];
    for (int j = 0; j < b.cols(); ++j)
      x.at(pc, j) = ech.u.at(pr, a.cols() + j) / ech.u.at(pr, pc);
  }
  return x;
}

bool is_invertible(const MatrixK& a, std::optional<int> tol_units) {
  if (a.rows() != a.cols()) return false;
  try {
    return rank(a, tol_units) == a.rows();
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

MatrixK inverse(const MatrixK& a, std::optional<int> tol_units) {
  if (a.rows() != a.cols()) throw InvalidInput("inverse", "matrix not square");
  return solve_linear(a, MatrixK::identity(a.field(), a.rows()), tol_units);
}

MatrixK generalized_eigenspace(const MatrixK& m, const Scalar& lambda,
                               std::optional<int> tol_units) {
  if (m.rows() != m.cols()) throw InvalidInput("generalized_eigenspace", "matrix not square");
  MatrixK shifted = m - MatrixK::identity(m.field(), m.rows()).scaled(lambda);
  MatrixK powered = shifted.pow(static_cast<unsigned>(m.rows()));
  return kernel_basis(powered, tol_units);
}

}  // namespace abeloid
