#include "specsdp/scaling.hpp"

#include <cmath>

namespace specsdp {

namespace {

void require_pd_eigs(const Vector& eigs, const char* what) {
  // eigs descending, so the last entry is the minimum.
  if (eigs.size() == 0 || !(eigs[eigs.size() - 1] > 0.0))
    throw NotPositiveDefiniteError(std::string(what) +
                                   ": matrix is not positive definite");
}

Matrix spectral_power(const SymEig& eig, double exponent, const char* what) {
  require_pd_eigs(eig.eigenvalues, what);
  Vector powered = eig.eigenvalues.array().pow(exponent);
  return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.transpose();
}

}  // namespace

Matrix compute_scaling(const Matrix& X, const Matrix& S, ScalingKind kind) {
  require_square_symmetric(X, "compute_scaling X");
  require_square_symmetric(S, "compute_scaling S");
  if (X.rows() != S.rows())
    throw InvalidInputError("compute_scaling: dimension mismatch");

  switch (kind) {
    case ScalingKind::Primal: {
      Eigen::LLT<Matrix> llt(X);
      if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError(
            "compute_scaling X: matrix is not positive definite");
      return X;
    }
    case ScalingKind::Dual: {
      SymEig es = sym_eig(S);
      return spectral_power(es, -1.0, "compute_scaling S");
    }
    case ScalingKind::NT: {
      SymEig es = sym_eig(S);
      Matrix s_half = spectral_power(es, 0.5, "compute_scaling S");
      Matrix s_inv_half = spectral_power(es, -0.5, "compute_scaling S");
      Matrix inner = s_half * X * s_half;
      inner = 0.5 * (inner + inner.transpose()).eval();
      SymEig ei = sym_eig(inner);
      Matrix inner_half = spectral_power(ei, 0.5, "compute_scaling X");
      Matrix W = s_inv_half * inner_half * s_inv_half;
      return 0.5 * (W + W.transpose()).eval();
    }
  }
  throw InvalidInputError("compute_scaling: unknown scaling kind");
}

Index estimate_rank(const Vector& eigvals_desc, Index kmax, double eta) {
  const Index n = eigvals_desc.size();
  if (n == 0) throw InvalidInputError("estimate_rank: empty spectrum");
  if (!(eigvals_desc[n - 1] > 0.0))
    throw InvalidInputError("estimate_rank: spectrum must be positive");
  if (kmax < 0 || kmax >= n)
    throw InvalidInputError("estimate_rank: kmax must satisfy 0 <= kmax < n");
  if (!(eta > 1.0)) throw InvalidInputError("estimate_rank: eta must be > 1");

  Index ktilde = 0;
  for (Index i = 1; i <= kmax; ++i) {
    if (eigvals_desc[i - 1] >= eta * eigvals_desc[i]) ktilde = i;
  }
  return ktilde;
}

SpectralSplit split(const Matrix& W, Index ktilde) {
  return split(W, sym_eig(W), ktilde);
}

SpectralSplit split(const Matrix& W, const SymEig& eig, Index ktilde) {
  const Index n = W.rows();
  if (ktilde < 0 || ktilde >= n)
    throw InvalidInputError("split: need 0 <= ktilde < n");
  require_pd_eigs(eig.eigenvalues, "split");

  SpectralSplit s;
  s.W = W;
  s.eigenvalues = eig.eigenvalues;
  s.eigenvectors = eig.eigenvectors;
  s.ktilde = ktilde;
  s.tau = eig.eigenvalues[n - 1];

  Vector clipped = eig.eigenvalues;
  clipped.head(ktilde).setConstant(s.tau);
  s.W0 = eig.eigenvectors * clipped.asDiagonal() *
         eig.eigenvectors.transpose();
  s.W0 = 0.5 * (s.W0 + s.W0.transpose()).eval();

  s.U.resize(n, ktilde);
  for (Index j = 0; j < ktilde; ++j) {
    s.U.col(j) =
        eig.eigenvectors.col(j) * std::sqrt(eig.eigenvalues[j] - s.tau);
  }

  // 2 W0 + U U^T = W + W0.
  s.Zf = cholesky_spd(0.5 * ((s.W + s.W0) + (s.W + s.W0).transpose()));
  return s;
}

double SpectralSplit::kappa_w0() const {
  const Index nn = eigenvalues.size();
  const double lo = eigenvalues[nn - 1];
  const double hi = ktilde < nn ? eigenvalues[ktilde] : lo;
  return hi / lo;
}

Vector apply_wtilde_inv(const SpectralSplit& s, const Vector& x) {
  if (x.size() != s.n())
    throw InvalidInputError("apply_wtilde_inv: length mismatch");
  if (s.ktilde == 0) return x / s.tau;
  Matrix schur = s.tau * Matrix::Identity(s.ktilde, s.ktilde) +
                 s.U.transpose() * s.U;
  Eigen::LLT<Matrix> llt(schur);
  if (llt.info() != Eigen::Success)
    throw NumericalBreakdownError("apply_wtilde_inv: Schur complement not PD");
  Vector ut_x = s.U.transpose() * x;
  return (x - s.U * llt.solve(ut_x)) / s.tau;
}

}  // namespace specsdp
