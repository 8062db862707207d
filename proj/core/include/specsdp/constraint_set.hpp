#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "specsdp/linalg.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// The constraint data A_1..A_m, right-hand side b and cost C, exposed through
// the three matrix-implicit products the solver needs: expand (sum y_i A_i),
// project ([A_i . X]_i) and normal_solve ((A^T A)^{-1} v) where A stacks
// vec(A_i) column-wise.
//
// A^T A is assembled sparsely at construction; when it is diagonal (matrix
// completion data) the factorization is skipped and the exact diagonal is
// used. Full column rank of the stacked operator is validated here once.
class ConstraintSet {
 public:
  ConstraintSet(Index n, std::vector<SparseSymMatrix> constraints, Vector b,
                Matrix C);

  Index n() const { return n_; }
  Index m() const { return m_; }
  const Vector& b() const { return b_; }
  const Matrix& C() const { return C_; }
  const std::vector<SparseSymMatrix>& constraints() const { return A_; }

  // sum_i y_i A_i as a dense symmetric matrix.
  Matrix expand(const Vector& y) const;
  void expand_into(const Vector& y, Matrix& out) const;

  // [A_i . X]_i. X need not be symmetric; A_i . X = tr(A_i X^T) uses the
  // symmetric expansion of A_i, which equals A_i . sym(X).
  Vector project(const Matrix& X) const;

  // (A^T A) y without forming anything dense.
  Vector gram_multiply(const Vector& y) const;

  // (A^T A)^{-1} v.
  Vector normal_solve(const Vector& v) const;

  const SparseMatrix& gram() const { return gram_; }
  bool gram_is_diagonal() const { return gram_diag_.has_value(); }

  // The n^2-by-m operator with column i = vec(A_i), full symmetric entries.
  const SparseMatrix& vec_operator() const { return avec_; }

 private:
  Index n_ = 0;
  Index m_ = 0;
  std::vector<SparseSymMatrix> A_;
  Vector b_;
  Matrix C_;
  SparseMatrix avec_;  // n^2 x m
  SparseMatrix gram_;  // A^T A, m x m
  std::optional<Vector> gram_diag_;
  std::unique_ptr<SparseCholesky> normal_factor_;
};

}  // namespace specsdp
