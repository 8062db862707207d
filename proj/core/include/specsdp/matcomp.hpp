#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "specsdp/constraint_set.hpp"
#include "specsdp/ipm.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// A random matrix-completion problem: observe m entries of M = G1 G2^T at
// positions Omega. Indices are 0-based in memory (the file format is
// 1-based). The generator factors are kept when the instance was produced
// by generate() or when a file's stored values match regeneration from its
// seed; they are what makes the nuclear-norm error metric computable.
struct MatrixCompletionInstance {
  Index p = 0, q = 0, k = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<Index, Index>> omega;  // sorted row-major
  Vector values;
  std::optional<Matrix> g1, g2;

  Index m() const { return static_cast<Index>(omega.size()); }
  Matrix observed_dense() const;  // p x q, zeros off Omega
};

// Deterministic for a fixed seed: G1 then G2 are drawn row-major from the
// standard normal, Omega by partial Fisher-Yates over linear indices
// (uniform over m-subsets), then sorted.
MatrixCompletionInstance generate(Index p, Index q, Index k, Index m,
                                  std::uint64_t seed);

// The trace-minimization SDP: n = p + q, C = I, and for each observation
// (i, j) a constraint with two entries of value 1/2 at (i, p + j) and its
// mirror, right-hand side M_ij.
ConstraintSet to_sdp(const MatrixCompletionInstance& inst);

// Strictly feasible start: y = 0, S = C = I, and
// X = [[alpha I, Zbar], [Zbar^T, alpha I]] with Zbar the observed entries and
// alpha = 1.1 sigma_max(Zbar) + 1.
Iterate feasible_start(const MatrixCompletionInstance& inst,
                       const ConstraintSet& cs);

struct RecoveryMetrics {
  // abs(||Z||_* - ||M||_*) / ||M||_*; absent without generator factors.
  std::optional<double> objective_error;
  // sqrt(sum_Omega (Z_ij - M_ij)^2 / sum_Omega M_ij^2)
  double relative_residual = 0.0;
};

RecoveryMetrics metrics(const MatrixCompletionInstance& inst, const Matrix& X);

}  // namespace specsdp
