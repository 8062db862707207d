#include "specsdp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace specsdp {

SparseSymMatrix::SparseSymMatrix(Index dim, std::vector<Triplet> entries)
    : n(dim), upper(std::move(entries)) {
  if (n < 0) throw InvalidInputError("SparseSymMatrix: negative dimension");
  for (const auto& t : upper) {
    if (t.row() < 0 || t.col() < 0 || t.row() >= n || t.col() >= n)
      throw InvalidInputError("SparseSymMatrix: index out of range");
    if (t.row() > t.col())
      throw InvalidInputError("SparseSymMatrix: entry below the diagonal");
    if (t.value() == 0.0)
      throw InvalidInputError("SparseSymMatrix: explicit zero entry");
    if (!std::isfinite(t.value()))
      throw InvalidInputError("SparseSymMatrix: non-finite entry");
  }
  std::sort(upper.begin(), upper.end(), [](const Triplet& a, const Triplet& b) {
    return a.col() != b.col() ? a.col() < b.col() : a.row() < b.row();
  });
  for (std::size_t i = 1; i < upper.size(); ++i) {
    if (upper[i].row() == upper[i - 1].row() &&
        upper[i].col() == upper[i - 1].col())
      throw InvalidInputError("SparseSymMatrix: duplicate (row, col) entry");
  }
}

Matrix SparseSymMatrix::to_dense() const {
  Matrix M = Matrix::Zero(n, n);
  for (const auto& t : upper) {
    M(t.row(), t.col()) = t.value();
    M(t.col(), t.row()) = t.value();
  }
  return M;
}

SparseMatrix SparseSymMatrix::to_sparse() const {
  std::vector<Triplet> full = expanded();
  SparseMatrix M(n, n);
  M.setFromTriplets(full.begin(), full.end());
  M.makeCompressed();
  return M;
}

std::vector<Triplet> SparseSymMatrix::expanded() const {
  std::vector<Triplet> full;
  full.reserve(2 * upper.size());
  for (const auto& t : upper) {
    full.push_back(t);
    if (t.row() != t.col()) full.emplace_back(t.col(), t.row(), t.value());
  }
  return full;
}

void require_finite(const Matrix& M, const char* what) {
  if (!M.allFinite())
    throw InvalidInputError(std::string(what) + ": non-finite entries");
}

void require_square_symmetric(const Matrix& M, const char* what, double tol) {
  if (M.rows() != M.cols())
    throw InvalidInputError(std::string(what) + ": matrix not square");
  require_finite(M, what);
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if (asym > tol + 1e-12 * scale)
    throw InvalidInputError(std::string(what) + ": matrix not symmetric");
}

SymEig sym_eig(const Matrix& M) {
  require_square_symmetric(M, "sym_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  if (es.info() != Eigen::Success)
    throw NumericalBreakdownError("sym_eig: eigensolver did not converge");
  SymEig out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Matrix cholesky_spd(const Matrix& M) {
  require_square_symmetric(M, "cholesky_spd");
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError(
        "cholesky_spd: matrix is not positive definite");
  return llt.matrixL();
}

namespace {

SparseMatrix lower_view(const SparseMatrix& M) {
  if (M.rows() != M.cols())
    throw InvalidInputError("sparse factorization: matrix not square");
  SparseMatrix L = M.triangularView<Eigen::Lower>();
  L.makeCompressed();
  return L;
}

}  // namespace

SparseCholesky::SparseCholesky(const SparseMatrix& M, double pivot_tol) {
  ldlt_.compute(lower_view(M));
  if (ldlt_.info() != Eigen::Success)
    throw FactorizationError("sparse_cholesky: factorization failed", 0);
  check_pivots(pivot_tol);
}

SparseCholesky::SparseCholesky(const SparseSymMatrix& M, double pivot_tol)
    : SparseCholesky(M.to_sparse(), pivot_tol) {}

void SparseCholesky::check_pivots(double pivot_tol) {
  const Vector d = ldlt_.vectorD();
  for (Index i = 0; i < d.size(); ++i) {
    if (!(d[i] > pivot_tol)) {
      const Index original = ldlt_.permutationPinv().indices()[i];
      throw FactorizationError(
          "sparse_cholesky: non-positive pivot at index " +
              std::to_string(original) + " (matrix singular or indefinite)",
          original);
    }
  }
}

Vector SparseCholesky::solve(const Vector& v) const {
  if (v.size() != ldlt_.rows())
    throw InvalidInputError("sparse_cholesky solve: length mismatch");
  return ldlt_.solve(v);
}

QuasiDefLdl::QuasiDefLdl(const SparseMatrix& K, double zero_pivot_tol) {
  ldlt_.compute(lower_view(K));
  if (ldlt_.info() != Eigen::Success)
    throw StructuralError("ldl_quasidef: factorization failed");
  check_pivots(zero_pivot_tol);
}

QuasiDefLdl::QuasiDefLdl(const SparseSymMatrix& K, double zero_pivot_tol)
    : QuasiDefLdl(K.to_sparse(), zero_pivot_tol) {}

void QuasiDefLdl::check_pivots(double zero_pivot_tol) {
  d_ = ldlt_.vectorD();
  negative_pivots_ = 0;
  for (Index i = 0; i < d_.size(); ++i) {
    if (!std::isfinite(d_[i]) || std::abs(d_[i]) <= zero_pivot_tol)
      throw StructuralError(
          "ldl_quasidef: zero pivot at index " + std::to_string(i) +
          " (input is not symmetric quasi-definite)");
    if (d_[i] < 0.0) ++negative_pivots_;
  }
}

Vector QuasiDefLdl::solve(const Vector& v) const {
  if (v.size() != ldlt_.rows())
    throw InvalidInputError("ldl_quasidef solve: length mismatch");
  return ldlt_.solve(v);
}

SparseMatrix QuasiDefLdl::matrix_l() const {
  SparseMatrix L = ldlt_.matrixL();
  L.makeCompressed();
  return L;
}

Eigen::VectorXi QuasiDefLdl::permutation() const {
  return ldlt_.permutationP().indices();
}

}  // namespace specsdp
