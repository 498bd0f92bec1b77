#pragma once

#include "abeloid/matrix.hpp"

namespace abeloid {

// Wrappers enforcing the exact finite-power invariants (u - I)^n = 0 and
// m^n = 0; construction verifies them by n-fold powering at the precision
// floor.

class NilpotentMatrix {
public:
  explicit NilpotentMatrix(MatrixK m);
  const MatrixK& matrix() const { return m_; }
  int dim() const { return m_.rows(); }

private:
  MatrixK m_;
};

class UnipotentMatrix {
public:
  explicit UnipotentMatrix(MatrixK u);
  const MatrixK& matrix() const { return u_; }
  int dim() const { return u_.rows(); }

private:
  MatrixK u_;
};

bool is_nilpotent(const MatrixK& m);
bool is_unipotent(const MatrixK& u);

// The finite log/exp dictionary.  The series truncate at k = n-1; the only
// divisions are by k <= n-1, so log loses at most v_p(lcm(1..n-1)) precision.
NilpotentMatrix matrix_log(const UnipotentMatrix& u);
UnipotentMatrix matrix_exp(const NilpotentMatrix& m);

// u^gamma by the binomial form sum_k binom(gamma, k) (u-1)^k, k < n.
UnipotentMatrix unipotent_power(const UnipotentMatrix& u, const ZpElement& gamma);

// AB - BA = 0 at the precision floor.
bool commute(const MatrixK& a, const MatrixK& b);

}  // namespace abeloid
