#pragma once

#include <Eigen/Cholesky>
#include <memory>

#include "specsdp/constraint_set.hpp"
#include "specsdp/hessian.hpp"
#include "specsdp/scaling.hpp"

namespace specsdp {

// Sherman-Morrison-Woodbury preconditioner for
//   Htilde = tau^2 A^T A + Ubold Ubold^T,
// inverted through the nk x nk Schur complement
//   S = tau^2 I + Ubold^T (A^T A)^{-1} Ubold.
class SmwPreconditioner {
 public:
  SmwPreconditioner(const ConstraintSet& cs, const SpectralSplit& split,
                    int refine_steps = 1);

  Vector apply(const Vector& r) const;
  Vector target_matvec(const Vector& v) const;  // Htilde v

  double tau() const { return tau_; }
  const Matrix& schur() const { return schur_; }

 private:
  Vector apply_once(const Vector& r) const;

  const ConstraintSet& cs_;
  const SpectralSplit& split_;
  double tau_;
  Matrix schur_;
  Eigen::LLT<Matrix> schur_llt_;
  int refine_steps_;
};

// Augmented-system preconditioner for
//   Hhat = tau^2 A^T A + 2 tau A^T (U U^T kron I) A,
// applied by solving the sparse symmetric quasi-definite system
//   [ tau^2 A^T A            tau^{3/2} A^T (U kron I) ] [x]   [r]
//   [ tau^{3/2} (U kron I)^T A   -(tau^2/2) I_{nk}    ] [y] = [0]
// and returning the x block.
class AugPreconditioner {
 public:
  AugPreconditioner(const ConstraintSet& cs, const SpectralSplit& split,
                    int refine_steps = 1);

  Vector apply(const Vector& r) const;
  Vector target_matvec(const Vector& v) const;  // Hhat v

  double tau() const { return tau_; }
  const SparseMatrix& system() const { return K_; }
  const QuasiDefLdl& factor() const { return *factor_; }

 private:
  const ConstraintSet& cs_;
  const SpectralSplit& split_;
  double tau_;
  SparseMatrix K_;
  std::unique_ptr<QuasiDefLdl> factor_;
  int refine_steps_;
};

// Exact dense Hessian solve; the direct-factorization baseline.
class DensePreconditioner {
 public:
  DensePreconditioner(const ConstraintSet& cs, const Matrix& W,
                      Index oracle_cap);
  Vector apply(const Vector& r) const;

 private:
  Eigen::LLT<Matrix> llt_;
};

}  // namespace specsdp
