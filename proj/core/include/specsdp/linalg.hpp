#pragma once

#include <Eigen/SparseCholesky>

#include "specsdp/types.hpp"

namespace specsdp {

// Eigendecomposition with eigenvalues sorted descending (largest first) and
// orthonormal eigenvectors in matching column order.
struct SymEig {
  Vector eigenvalues;
  Matrix eigenvectors;
};

SymEig sym_eig(const Matrix& M);

// Lower Cholesky factor L with L*L^T = M. Throws NotPositiveDefiniteError.
Matrix cholesky_spd(const Matrix& M);

// Sparse SPD factorization with a fill-reducing (AMD) ordering.
// Rejects singular or indefinite input, naming the offending pivot.
class SparseCholesky {
 public:
  explicit SparseCholesky(const SparseMatrix& M, double pivot_tol = 0.0);
  explicit SparseCholesky(const SparseSymMatrix& M, double pivot_tol = 0.0);

  Vector solve(const Vector& v) const;
  Index size() const { return ldlt_.rows(); }

 private:
  void check_pivots(double pivot_tol);

  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
};

// Unpivoted LDL^T of a symmetric quasi-definite matrix (SPD leading block,
// negative definite trailing block under the caller's layout). Any symmetric
// fill-reducing permutation is legal for such matrices; the solve is
// permutation-invariant, the factor is not.
class QuasiDefLdl {
 public:
  explicit QuasiDefLdl(const SparseMatrix& K, double zero_pivot_tol = 0.0);
  explicit QuasiDefLdl(const SparseSymMatrix& K, double zero_pivot_tol = 0.0);

  Vector solve(const Vector& v) const;
  Index size() const { return ldlt_.rows(); }

  // Signed pivots; for a quasi-definite input the number of negative entries
  // equals the trailing block dimension.
  const Vector& vector_d() const { return d_; }
  Index negative_pivots() const { return negative_pivots_; }
  SparseMatrix matrix_l() const;  // unit lower-triangular
  Eigen::VectorXi permutation() const;

 private:
  void check_pivots(double zero_pivot_tol);

  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  Vector d_;
  Index negative_pivots_ = 0;
};

void require_finite(const Matrix& M, const char* what);
void require_square_symmetric(const Matrix& M, const char* what,
                              double tol = 0.0);

}  // namespace specsdp
