#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specsdp/constraint_set.hpp"
#include "specsdp/pcg.hpp"
#include "specsdp/scaling.hpp"
#include "specsdp/types.hpp"

namespace specsdp {

// Strictly feasible primal-dual point. mu = tr(X S) / n.
struct Iterate {
  Matrix X;
  Matrix S;
  Vector y;
  double mu = 0.0;
};

enum class PrecondKind { Aug, Smw, Dense };

PrecondKind precond_from_string(const std::string& name);
const char* to_string(PrecondKind kind);
ScalingKind scaling_from_string(const std::string& name);
const char* to_string(ScalingKind kind);

struct SolverOptions {
  double gamma = 1e-3;    // neighborhood parameter, in (0,1)
  double sigma = 0.3;     // centering parameter, in (0,1)
  double gap_tol = 1e-9;  // stop when n mu <= gap_tol (1 + |C.X| + |b'y|)
  Index max_iter = 100;
  ScalingKind scaling = ScalingKind::NT;
  PrecondKind precond = PrecondKind::Aug;
  Index kmax = -1;     // rank-estimate cap; -1 means floor(n / 4)
  double eta = 10.0;   // rank-estimate eigenvalue ratio
  double pcg_tol_factor = 0.1;  // tol_t = clamp(factor * mu_t / mu_0, ...)
  double pcg_tol_min = 1e-11;
  double pcg_tol_max = 1e-1;
  Index pcg_maxit = 1000;
  Index oracle_cap = 2000;  // dense Hessian size gate
  double ls_shrink = 0.8;
  double ls_min_alpha = 1e-7;
  Index precenter_max = 20;
  double drift_tol = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
  Index effective_kmax(Index n) const;
};

struct IterationRecord {
  Index iter = 0;
  double mu = 0.0;
  double gap = 0.0;  // C.X - b'y
  double pinf = 0.0;
  double dinf = 0.0;
  Index ktilde = 0;
  double tau = 0.0;
  double kappa_w0 = 0.0;
  Index pcg_iterations = 0;
  std::string pcg_status;
  double alpha = 0.0;
  double time_ms = 0.0;
};

// lambda_min and trace of L_X^T S L_X (similar to X S); the product is formed
// in extended precision because near convergence the double-precision forming
// error is comparable to gamma * mu.
struct XsSpectrumResult {
  bool positive_definite = false;  // X admitted a Cholesky factor
  double lambda_min = 0.0;
  double trace = 0.0;
};

XsSpectrumResult xs_spectrum(const Matrix& X, const Matrix& S);

// lambda_min(X S) >= (gamma / n) tr(X S), via the symmetric similarity.
// Non-PD input counts as outside.
bool in_neighborhood(const Matrix& X, const Matrix& S, double gamma);

// Z = S + sigma mu X^{-1}.
Matrix newton_target(const Iterate& it, double sigma);

struct StepControl {
  double mu0 = -1.0;     // reference mu for the PCG tolerance rule
  Index iter = 0;        // outer iteration index, for the record
  double sigma = -1.0;   // override of opts.sigma (pre-centering uses 1)
  bool require_neighborhood = true;
  bool require_mu_decrease = true;
};

struct StepResult {
  bool accepted = false;
  std::string failure;
  Iterate next;
  IterationRecord record;
};

StepResult ipm_step(const ConstraintSet& cs, const Iterate& it,
                    const SolverOptions& opts, const StepControl& ctl = {});

enum class SolveStatus { Optimal, MaxIter, NumericalFailure };

const char* to_string(SolveStatus status);

struct SolveResult {
  Iterate solution;
  SolveStatus status = SolveStatus::NumericalFailure;
  std::string message;
  std::vector<IterationRecord> log;
};

using IterationCallback = std::function<void(const IterationRecord&)>;

SolveResult solve(const ConstraintSet& cs, const Iterate& start,
                  const SolverOptions& opts,
                  const IterationCallback& on_iteration = {});

}  // namespace specsdp
