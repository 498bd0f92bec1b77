#include "abeloid/unipotent.hpp"

#include "abeloid/errors.hpp"

namespace abeloid {

bool is_nilpotent(const MatrixK& m) {
  if (m.rows() != m.cols()) return false;
  return m.pow(static_cast<unsigned>(m.rows())).is_zero_at_precision();
}

bool is_unipotent(const MatrixK& u) {
  if (u.rows() != u.cols()) return false;
  return is_nilpotent(u - MatrixK::identity(u.field(), u.rows()));
}

NilpotentMatrix::NilpotentMatrix(MatrixK m) : m_(std::move(m)) {
  if (!is_nilpotent(m_))
    throw InvalidInput("nilpotent", "matrix is not nilpotent: m^n != 0 at precision");
}

UnipotentMatrix::UnipotentMatrix(MatrixK u) : u_(std::move(u)) {
  if (!is_unipotent(u_))
    throw InvalidInput("unipotent", "matrix is not unipotent: (u-1)^n != 0 at precision");
}

NilpotentMatrix matrix_log(const UnipotentMatrix& u) {
  const MatrixK& m = u.matrix();
  const FieldPtr& field = m.field();
  const int n = m.rows();
  MatrixK s = m - MatrixK::identity(field, n);
  MatrixK acc(field, n, n);
  MatrixK power = MatrixK::identity(field, n);
  for (int k = 1; k <= n - 1; ++k) {
    power = power * s;
    Scalar coeff = Scalar::one(field) / Scalar::from_integer(field, BigInt(k));
    if (k % 2 == 0) coeff = -coeff;
    acc = acc + power.scaled(coeff);
  }
  return NilpotentMatrix(std::move(acc));
}

UnipotentMatrix matrix_exp(const NilpotentMatrix& m) {
  const MatrixK& a = m.matrix();
  const FieldPtr& field = a.field();
  const int n = a.rows();
  MatrixK acc = MatrixK::identity(field, n);
  MatrixK term = MatrixK::identity(field, n);
  for (int k = 1; k <= n - 1; ++k) {
    term = term * a;
    Scalar coeff = Scalar::one(field) / Scalar::from_integer(field, BigInt(k));
    term = term.scaled(coeff);
    acc = acc + term;
  }
  return UnipotentMatrix(std::move(acc));
}

UnipotentMatrix unipotent_power(const UnipotentMatrix& u, const ZpElement& gamma) {
  const MatrixK& m = u.matrix();
  const FieldPtr& field = m.field();
  const int n = m.rows();
  MatrixK s = m - MatrixK::identity(field, n);
  MatrixK acc = MatrixK::identity(field, n);
  MatrixK power = MatrixK::identity(field, n);
  for (int k = 1; k <= n - 1; ++k) {
    power = power * s;
    acc = acc + power.scaled(binomial_zp(gamma, static_cast<unsigned>(k)));
  }
  return UnipotentMatrix(std::move(acc));
}

bool commute(const MatrixK& a, const MatrixK& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InvalidInput("commute", "operands must be square of equal dimension");
  return (a * b - b * a).is_zero_at_precision();
}

}  // namespace abeloid
