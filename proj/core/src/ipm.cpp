#include "specsdp/ipm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "specsdp/hessian.hpp"
#include "specsdp/preconditioner.hpp"

namespace specsdp {

namespace {

using MatrixLD =
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

double clamp(double value, double lo, double hi) {
  return std::min(hi, std::max(lo, value));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

PrecondKind precond_from_string(const std::string& name) {
  if (name == "aug") return PrecondKind::Aug;
  if (name == "smw") return PrecondKind::Smw;
  if (name == "dense") return PrecondKind::Dense;
  throw InvalidInputError("unknown preconditioner '" + name +
                          "' (expected aug, smw or dense)");
}

const char* to_string(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::Aug: return "aug";
    case PrecondKind::Smw: return "smw";
    case PrecondKind::Dense: return "dense";
  }
  return "unknown";
}

ScalingKind scaling_from_string(const std::string& name) {
  if (name == "nt") return ScalingKind::NT;
  if (name == "primal") return ScalingKind::Primal;
  if (name == "dual") return ScalingKind::Dual;
  throw InvalidInputError("unknown scaling '" + name +
                          "' (expected nt, primal or dual)");
}

const char* to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::Primal: return "primal";
    case ScalingKind::Dual: return "dual";
    case ScalingKind::NT: return "nt";
  }
  return "unknown";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "maxiter";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidInputError("SolverOptions: gamma must lie in (0, 1)");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw InvalidInputError("SolverOptions: sigma must lie in (0, 1)");
  if (!(gap_tol > 0.0))
    throw InvalidInputError("SolverOptions: gap_tol must be > 0");
  if (max_iter < 1)
    throw InvalidInputError("SolverOptions: max_iter must be >= 1");
  if (!(eta > 1.0)) throw InvalidInputError("SolverOptions: eta must be > 1");
  if (!(pcg_tol_factor > 0.0) || !(pcg_tol_min > 0.0) ||
      !(pcg_tol_max >= pcg_tol_min))
    throw InvalidInputError("SolverOptions: bad PCG tolerance rule");
  if (pcg_maxit < 1)
    throw InvalidInputError("SolverOptions: pcg_maxit must be >= 1");
  if (!(ls_shrink > 0.0 && ls_shrink < 1.0))
    throw InvalidInputError("SolverOptions: ls_shrink must lie in (0, 1)");
}

Index SolverOptions::effective_kmax(Index n) const {
  Index k = kmax < 0 ? n / 4 : kmax;
  return std::max<Index>(0, std::min(k, n - 1));
}

XsSpectrumResult xs_spectrum(const Matrix& X, const Matrix& S) {
  XsSpectrumResult out;
  Eigen::LLT<Matrix> llt(X);
  if (llt.info() != Eigen::Success) return out;
  out.positive_definite = true;

  const Matrix L = llt.matrixL();
  MatrixLD l_ext = L.cast<long double>();
  MatrixLD s_ext = S.cast<long double>();
  MatrixLD similarity = l_ext.transpose() * (s_ext * l_ext);

  out.trace = static_cast<double>(similarity.trace());
  Matrix sim_d = similarity.cast<double>();
  sim_d = 0.5 * (sim_d + sim_d.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sim_d,
                                           Eigen::EigenvaluesOnly);
  out.lambda_min = es.eigenvalues().minCoeff();
  return out;
}

bool in_neighborhood(const Matrix& X, const Matrix& S, double gamma) {
  if (X.rows() != S.rows()) return false;
  const XsSpectrumResult xs = xs_spectrum(X, S);
  if (!xs.positive_definite) return false;
  const double n = static_cast<double>(X.rows());
  return xs.lambda_min >= gamma / n * xs.trace && xs.lambda_min > 0.0;
}

Matrix newton_target(const Iterate& it, double sigma) {
  if (sigma < 0.0) throw InvalidInputError("newton_target: sigma must be >= 0");
  if (sigma == 0.0) return it.S;
  Eigen::LLT<Matrix> llt(it.X);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError("newton_target: X is not positive definite");
  Matrix x_inv = llt.solve(Matrix::Identity(it.X.rows(), it.X.cols()));
  x_inv = 0.5 * (x_inv + x_inv.transpose()).eval();
  return it.S + sigma * it.mu * x_inv;
}

namespace {

struct FeasibilityResiduals {
  double pinf;
  double dinf;
};

FeasibilityResiduals residuals(const ConstraintSet& cs, const Iterate& it) {
  FeasibilityResiduals out;
  out.pinf = (cs.project(it.X) - cs.b()).norm() / (1.0 + cs.b().norm());
  out.dinf = (cs.expand(it.y) + it.S - cs.C()).norm() / (1.0 + cs.C().norm());
  return out;
}

}  // namespace

StepResult ipm_step(const ConstraintSet& cs, const Iterate& it,
                    const SolverOptions& opts, const StepControl& ctl) {
  const auto t0 = std::chrono::steady_clock::now();
  const Index n = cs.n();
  const double sigma = ctl.sigma < 0.0 ? opts.sigma : ctl.sigma;
  const double mu0 = ctl.mu0 > 0.0 ? ctl.mu0 : it.mu;

  StepResult out;
  out.record.iter = ctl.iter;

  // (1)-(3) scaling, rank estimate, spectral split.
  const Matrix W = compute_scaling(it.X, it.S, opts.scaling);
  const SymEig eig = sym_eig(W);
  const Index kmax = opts.effective_kmax(n);
  const Index ktilde = estimate_rank(eig.eigenvalues, kmax, opts.eta);
  const SpectralSplit sp = split(W, eig, ktilde);
  out.record.ktilde = ktilde;
  out.record.tau = sp.tau;
  out.record.kappa_w0 = sp.kappa_w0();

  // (4) preconditioner for this iteration's scaling.
  std::unique_ptr<SmwPreconditioner> smw;
  std::unique_ptr<AugPreconditioner> aug;
  std::unique_ptr<DensePreconditioner> dense;
  LinearOperator apply_p;
  switch (opts.precond) {
    case PrecondKind::Smw:
      smw = std::make_unique<SmwPreconditioner>(cs, sp);
      apply_p = [&p = *smw](const Vector& v) { return p.apply(v); };
      break;
    case PrecondKind::Aug:
      aug = std::make_unique<AugPreconditioner>(cs, sp);
      apply_p = [&p = *aug](const Vector& v) { return p.apply(v); };
      break;
    case PrecondKind::Dense:
      dense = std::make_unique<DensePreconditioner>(cs, W, opts.oracle_cap);
      apply_p = [&p = *dense](const Vector& v) { return p.apply(v); };
      break;
  }

  // (5) Newton target and right-hand side.
  const Matrix Z = newton_target(it, sigma);
  const Vector rhs = residual_rhs(cs, W, Z);

  // (6) inner solve.
  HessianOperator hess(cs, W);
  LinearOperator apply_h = [&hess](const Vector& v) { return hess(v); };
  const double tol =
      clamp(opts.pcg_tol_factor * it.mu / mu0, opts.pcg_tol_min,
            opts.pcg_tol_max);

  PcgResult pcg = pcg_solve(apply_h, apply_p, rhs, tol, opts.pcg_maxit);
  Index pcg_total = pcg.report.iterations;
  std::string pcg_status = to_string(pcg.report.status);
  if (pcg.report.status != KrylovStatus::Converged) {
    PcgResult retry =
        pcg_solve(apply_h, apply_p, rhs, tol * 10.0, opts.pcg_maxit);
    pcg_total += retry.report.iterations;
    if (retry.report.status == KrylovStatus::Converged) {
      pcg = std::move(retry);
      pcg_status = "converged-retry";
    } else if (cs.m() <= opts.oracle_cap) {
      Matrix H = dense_hessian(cs, W, opts.oracle_cap);
      Eigen::LLT<Matrix> llt(H);
      if (llt.info() != Eigen::Success) {
        out.failure = "dense fallback Hessian not positive definite";
        out.record.pcg_iterations = pcg_total;
        out.record.pcg_status = "dense-fallback-failed";
        return out;
      }
      pcg.y = llt.solve(rhs);
      pcg_status = "dense-fallback";
    } else {
      out.failure = "PCG " + std::string(to_string(pcg.report.status)) +
                    " and instance exceeds the dense fallback cap";
      out.record.pcg_iterations = pcg_total;
      out.record.pcg_status = pcg_status;
      return out;
    }
  }
  out.record.pcg_iterations = pcg_total;
  out.record.pcg_status = pcg_status;

  // (7) candidate recovery, then exact re-projection of the primal candidate
  // onto the affine constraint set (the recovery inherits the inner solve's
  // residual as primal infeasibility).
  RecoveredPair cand = recover(cs, W, Z, pcg.y);
  const Vector drift = cs.project(cand.X) - cs.b();
  cand.X -= cs.expand(cs.normal_solve(drift));
  cand.X = 0.5 * (cand.X + cand.X.transpose()).eval();

  // (8) backtracking line search on the segment to the candidate.
  double alpha = 1.0;
  Iterate trial;
  bool accepted = false;
  while (alpha >= opts.ls_min_alpha) {
    trial.X = it.X + alpha * (cand.X - it.X);
    trial.S = it.S + alpha * (cand.S - it.S);
    trial.y = it.y + alpha * (pcg.y - it.y);
    const XsSpectrumResult xs = xs_spectrum(trial.X, trial.S);
    if (xs.positive_definite && xs.lambda_min > 0.0) {
      trial.mu = xs.trace / static_cast<double>(n);
      const bool in_nei =
          !ctl.require_neighborhood ||
          xs.lambda_min >= opts.gamma / static_cast<double>(n) * xs.trace;
      const bool mu_ok = ctl.require_mu_decrease
                             ? trial.mu < it.mu
                             : trial.mu <= it.mu * (1.0 + 1e-6);
      if (in_nei && mu_ok) {
        accepted = true;
        break;
      }
    }
    alpha *= opts.ls_shrink;
  }
  if (!accepted) {
    out.failure = "line search failed below alpha = " +
                  std::to_string(opts.ls_min_alpha);
    return out;
  }

  // (9) bookkeeping.
  out.accepted = true;
  out.next = std::move(trial);
  out.record.alpha = alpha;
  out.record.mu = out.next.mu;
  out.record.gap =
      cs.C().cwiseProduct(out.next.X).sum() - cs.b().dot(out.next.y);
  const FeasibilityResiduals res = residuals(cs, out.next);
  out.record.pinf = res.pinf;
  out.record.dinf = res.dinf;
  out.record.time_ms = elapsed_ms(t0);
  return out;
}

SolveResult solve(const ConstraintSet& cs, const Iterate& start,
                  const SolverOptions& opts,
                  const IterationCallback& on_iteration) {
  opts.validate();
  const Index n = cs.n();
  if (start.X.rows() != n || start.S.rows() != n || start.y.size() != cs.m())
    throw InvalidInputError("solve: start iterate dimension mismatch");

  SolveResult out;
  out.solution = start;

  {
    const XsSpectrumResult xs = xs_spectrum(start.X, start.S);
    if (!xs.positive_definite || xs.lambda_min <= 0.0)
      throw InvalidInputError("solve: start iterate is not strictly positive "
                              "definite");
    out.solution.mu = xs.trace / static_cast<double>(n);
    const FeasibilityResiduals res = residuals(cs, out.solution);
    if (res.pinf > opts.drift_tol || res.dinf > opts.drift_tol)
      throw InvalidInputError(
          "solve: start iterate is not feasible (this is a feasible-start "
          "method)");
  }
  const double mu0 = out.solution.mu;

  Index iter = 0;
  auto record_step = [&](StepResult& step) {
    out.log.push_back(step.record);
    if (on_iteration) on_iteration(step.record);
  };

  // Pre-centering: pure sigma = 1 steps until the iterate enters N(gamma).
  Index centering = 0;
  while (!in_neighborhood(out.solution.X, out.solution.S, opts.gamma)) {
    if (centering++ >= opts.precenter_max) {
      out.status = SolveStatus::NumericalFailure;
      out.message = "pre-centering failed to reach the neighborhood";
      return out;
    }
    StepControl ctl;
    ctl.iter = ++iter;
    ctl.mu0 = mu0;
    ctl.sigma = 1.0;
    ctl.require_neighborhood = false;
    ctl.require_mu_decrease = false;
    StepResult step = ipm_step(cs, out.solution, opts, ctl);
    if (!step.accepted) {
      out.status = SolveStatus::NumericalFailure;
      out.message = "pre-centering step failed: " + step.failure;
      return out;
    }
    out.solution = std::move(step.next);
    record_step(step);
  }

  while (true) {
    const double gap_scale =
        1.0 + std::abs(cs.C().cwiseProduct(out.solution.X).sum()) +
        std::abs(cs.b().dot(out.solution.y));
    if (static_cast<double>(n) * out.solution.mu <=
        opts.gap_tol * gap_scale) {
      out.status = SolveStatus::Optimal;
      return out;
    }
    if (iter >= opts.max_iter) {
      out.status = SolveStatus::MaxIter;
      out.message = "iteration limit reached";
      return out;
    }

    StepControl ctl;
    ctl.iter = ++iter;
    ctl.mu0 = mu0;
    StepResult step = ipm_step(cs, out.solution, opts, ctl);
    if (!step.accepted) {
      out.status = SolveStatus::NumericalFailure;
      out.message = step.failure;
      return out;
    }
    if (step.record.pinf > opts.drift_tol ||
        step.record.dinf > opts.drift_tol) {
      out.status = SolveStatus::NumericalFailure;
      out.message = "feasibility drift exceeded the tracked bound";
      out.solution = std::move(step.next);
      record_step(step);
      return out;
    }
    out.solution = std::move(step.next);
    record_step(step);
  }
}

}  // namespace specsdp
