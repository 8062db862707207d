#pragma once

#include "specsdp/constraint_set.hpp"
#include "specsdp/scaling.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// Newton right-hand side r_i = b_i + A_i . W (C - Z) W, computed with one
// sandwich product followed by a projection.
Vector residual_rhs(const ConstraintSet& cs, const Matrix& W, const Matrix& Z);

// H y = project(W expand(y) W); two dense n x n multiplies dominate.
Vector hess_matvec(const ConstraintSet& cs, const Matrix& W, const Vector& y);

// Workspace-backed form of the same operator for hot loops.
class HessianOperator {
 public:
  HessianOperator(const ConstraintSet& cs, const Matrix& W);
  Vector operator()(const Vector& y) const;

 private:
  const ConstraintSet& cs_;
  const Matrix& W_;
  mutable Matrix expanded_, half_, sandwich_;
};

// Dense m x m Hessian H_{ij} = A_i . W A_j W; test oracle and direct-solve
// baseline, gated by a size cap.
Matrix dense_hessian(const ConstraintSet& cs, const Matrix& W,
                     Index oracle_cap = 2000);

// The m x (n ktilde) low-rank factor Ubold = A^T (U kron Zf), applied through
// its Kronecker structure. The argument x is vec of an n x ktilde matrix,
// column-major.
Vector lowrank_matvec(const ConstraintSet& cs, const SpectralSplit& s,
                      const Vector& x);
Vector lowrank_matvec_adjoint(const ConstraintSet& cs, const SpectralSplit& s,
                              const Vector& y);

struct RecoveredPair {
  Matrix S;
  Matrix X;
};

// S = C - sum y_i A_i and X = W (Z - S) W, with X symmetrized to scrub
// roundoff.
RecoveredPair recover(const ConstraintSet& cs, const Matrix& W,
                      const Matrix& Z, const Vector& y);

}  // namespace specsdp
