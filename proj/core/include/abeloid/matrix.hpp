#pragma once

#include <functional>
#include <vector>

#include "abeloid/scalar.hpp"

namespace abeloid {

// Dense matrix over K with per-entry tracked precision.  The precision floor
// of a matrix is the minimum over its entries; all matrix equalities are
// congruences at the floor.
class MatrixK {
public:
  MatrixK(FieldPtr field, int rows, int cols);  // zero-filled at the field cap
  static MatrixK identity(FieldPtr field, int n);
  static MatrixK from_rows(FieldPtr field, const std::vector<std::vector<Scalar>>& rows);

  const FieldPtr& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  MatrixK operator+(const MatrixK& rhs) const;
  MatrixK operator-(const MatrixK& rhs) const;
  MatrixK operator-() const;
  MatrixK operator*(const MatrixK& rhs) const;
  MatrixK scaled(const Scalar& c) const;
  MatrixK transpose() const;
  MatrixK pow(unsigned k) const;  // square matrices
  MatrixK kron(const MatrixK& rhs) const;
  MatrixK direct_sum(const MatrixK& rhs) const;
  Scalar trace() const;

  MatrixK column(int j) const;
  MatrixK columns(const std::vector<int>& idx) const;
  static MatrixK hcat(const MatrixK& a, const MatrixK& b);

  int precision_floor_units() const;
  bool is_zero_at_precision() const;
  bool equal_at_precision(const MatrixK& rhs) const;

private:
  FieldPtr field_;
  int rows_;
  int cols_;
  std::vector<Scalar> entries_;
};

}  // namespace abeloid
