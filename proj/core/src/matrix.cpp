#include "abeloid/matrix.hpp"

#include <algorithm>

#include "abeloid/errors.hpp"

namespace abeloid {

MatrixK::MatrixK(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("matrix", "negative dimension");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Scalar::zero(field_));
}

MatrixK MatrixK::identity(FieldPtr field, int n) {
  MatrixK m(field, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
  return m;
}

MatrixK MatrixK::from_rows(FieldPtr field, const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixK m(std::move(field), r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw InvalidInput("matrix", "ragged row lengths");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatrixK MatrixK::operator+(const MatrixK& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw InvalidInput("matrix add", "shape mismatch");
  MatrixK m(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i] + rhs.entries_[i];
  return m;
}

MatrixK MatrixK::operator-(const MatrixK& rhs) const { return *this + (-rhs); }

MatrixK MatrixK::operator-() const {
  MatrixK m(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = -entries_[i];
  return m;
}

MatrixK MatrixK::operator*(const MatrixK& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix mul", "shape mismatch");
  MatrixK m(field_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) {
      Scalar acc = Scalar::zero(field_);
      for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * rhs.at(k, j);
      m.at(i, j) = acc;
    }
  return m;
}

MatrixK MatrixK::scaled(const Scalar& c) const {
  MatrixK m(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i] * c;
  return m;
}

MatrixK MatrixK::transpose() const {
  MatrixK m(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

MatrixK MatrixK::pow(unsigned k) const {
  if (rows_ != cols_) throw InvalidInput("matrix pow", "matrix not square");
  MatrixK acc = identity(field_, rows_);
  MatrixK base = *this;
  while (k > 0) {
    if (k & 1U) acc = acc * base;
    base = base * base;
    k >>= 1U;
  }
  return acc;
}

MatrixK MatrixK::kron(const MatrixK& rhs) const {
  MatrixK m(field_, rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      for (int a = 0; a < rhs.rows_; ++a)
        for (int b = 0; b < rhs.cols_; ++b)
          m.at(i * rhs.rows_ + a, j * rhs.cols_ + b) = at(i, j) * rhs.at(a, b);
  return m;
}

MatrixK MatrixK::direct_sum(const MatrixK& rhs) const {
  MatrixK m(field_, rows_ + rhs.rows_, cols_ + rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (int i = 0; i < rhs.rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) m.at(rows_ + i, cols_ + j) = rhs.at(i, j);
  return m;
}

Scalar MatrixK::trace() const {
  if (rows_ != cols_) throw InvalidInput("matrix trace", "matrix not square");
  Scalar acc = Scalar::zero(field_);
  for (int i = 0; i < rows_; ++i) acc = acc + at(i, i);
  return acc;
}

MatrixK MatrixK::column(int j) const {
  MatrixK m(field_, rows_, 1);
  for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, j);
  return m;
}

MatrixK MatrixK::columns(const std::vector<int>& idx) const {
  MatrixK m(field_, rows_, static_cast<int>(idx.size()));
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
  return m;
}

MatrixK MatrixK::hcat(const MatrixK& a, const MatrixK& b) {
  if (a.rows_ != b.rows_) throw InvalidInput("matrix hcat", "row mismatch");
  MatrixK m(a.field_, a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
  }
  return m;
}

int MatrixK::precision_floor_units() const {
  int floor = field_->precision_cap();
  for (const Scalar& s : entries_) floor = std::min(floor, s.precision_units());
  return floor;
}

bool MatrixK::is_zero_at_precision() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Scalar& s) { return s.is_zero_at_precision(); });
}

bool MatrixK::equal_at_precision(const MatrixK& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!entries_[i].equal_at_precision(rhs.entries_[i])) return false;
  return true;
}

}  // namespace abeloid
