#pragma once

#include "specsdp/linalg.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

enum class ScalingKind { Primal, Dual, NT };

// Primal: W = X. Dual: W = S^{-1}. NT: the unique W > 0 with X = W S W,
// computed as S^{-1/2} (S^{1/2} X S^{1/2})^{1/2} S^{-1/2} from two dense
// eigendecompositions.
Matrix compute_scaling(const Matrix& X, const Matrix& S, ScalingKind kind);

// Largest index i in {0, ..., kmax} with lambda_i >= eta * lambda_{i+1}
// (1-based eigenvalue indexing, descending order, i = 0 always qualifies).
Index estimate_rank(const Vector& eigvals_desc, Index kmax, double eta);

// W = W0 + U U^T with the ktilde largest eigenvalues clipped to
// tau = lambda_min(W); Zf is a lower Cholesky factor of 2 W0 + U U^T.
struct SpectralSplit {
  Matrix W;
  Vector eigenvalues;  // of W, descending
  Matrix eigenvectors;
  Index ktilde = 0;
  double tau = 0.0;
  Matrix U;   // n x ktilde, column j = v_j * sqrt(lambda_j - tau)
  Matrix W0;  // well-conditioned remainder
  Matrix Zf;  // lower triangular, Zf Zf^T = 2 W0 + U U^T

  Index n() const { return W.rows(); }
  // lambda_{ktilde+1}(W) / lambda_n(W)
  double kappa_w0() const;
};

SpectralSplit split(const Matrix& W, Index ktilde);
SpectralSplit split(const Matrix& W, const SymEig& eig, Index ktilde);

// (tau I + U U^T)^{-1} x through the small Schur complement tau I + U^T U.
Vector apply_wtilde_inv(const SpectralSplit& s, const Vector& x);

}  // namespace specsdp
