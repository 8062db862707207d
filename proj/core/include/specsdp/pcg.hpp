#pragma once

#include <functional>
#include <vector>

#include "specsdp/types.hpp"

namespace specsdp {

using LinearOperator = std::function<Vector(const Vector&)>;

enum class KrylovStatus { Converged, MaxIter, Stagnated };

const char* to_string(KrylovStatus status);

struct KrylovReport {
  Index iterations = 0;
  double relative_residual = 0.0;  // ||r|| / ||b||, 2-norm
  KrylovStatus status = KrylovStatus::Converged;
  // Preconditioned residual norms sqrt(r^T P^{-1} r), relative to the initial
  // one; entry 0 is 1.
  std::vector<double> residual_history;
};

struct PcgResult {
  Vector y;
  KrylovReport report;
};

// Classical preconditioned conjugate gradients from a zero initial guess.
// Convergence is declared on the true relative residual; stagnation when the
// preconditioned residual norm fails to shrink by at least stagnation_drop
// (relative) over stagnation_window consecutive iterations, or when an
// iterate stops being finite. Stagnation is a status, not an exception.
PcgResult pcg_solve(const LinearOperator& apply_h,
                    const LinearOperator& apply_p, const Vector& rhs,
                    double tol, Index maxit, Index stagnation_window = 20,
                    double stagnation_drop = 1e-3);

}  // namespace specsdp
