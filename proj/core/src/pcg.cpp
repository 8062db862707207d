#include "specsdp/pcg.hpp"

#include <cmath>

namespace specsdp {

const char* to_string(KrylovStatus status) {
  switch (status) {
    case KrylovStatus::Converged: return "converged";
    case KrylovStatus::MaxIter: return "maxiter";
    case KrylovStatus::Stagnated: return "stagnated";
  }
  return "unknown";
}

PcgResult pcg_solve(const LinearOperator& apply_h,
                    const LinearOperator& apply_p, const Vector& rhs,
                    double tol, Index maxit, Index stagnation_window,
                    double stagnation_drop) {
  if (!(tol > 0.0)) throw InvalidInputError("pcg_solve: tol must be > 0");
  if (maxit < 1) throw InvalidInputError("pcg_solve: maxit must be >= 1");

  const Index m = rhs.size();
  PcgResult out;
  out.y = Vector::Zero(m);

  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0 || !std::isfinite(rhs_norm)) {
    out.report.status = std::isfinite(rhs_norm) ? KrylovStatus::Converged
                                                : KrylovStatus::Stagnated;
    out.report.relative_residual = 0.0;
    out.report.residual_history.push_back(std::isfinite(rhs_norm) ? 0.0 : 1.0);
    return out;
  }

  Vector r = rhs;
  Vector z = apply_p(r);
  double rho = r.dot(z);
  const double pnorm0 = std::sqrt(std::abs(rho));
  out.report.residual_history.push_back(1.0);
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    out.report.status = KrylovStatus::Stagnated;
    out.report.relative_residual = 1.0;
    return out;
  }

  Vector p = z;
  double rel = 1.0;
  for (Index it = 1; it <= maxit; ++it) {
    Vector hp = apply_h(p);
    const double curvature = p.dot(hp);
    if (!(curvature > 0.0) || !std::isfinite(curvature)) {
      out.report.iterations = it - 1;
      out.report.relative_residual = rel;
      out.report.status = KrylovStatus::Stagnated;
      return out;
    }
    const double alpha = rho / curvature;
    out.y += alpha * p;
    r -= alpha * hp;

    rel = r.norm() / rhs_norm;
    z = apply_p(r);
    const double rho_next = r.dot(z);
    const double pnorm = std::sqrt(std::abs(rho_next));
    out.report.residual_history.push_back(pnorm / pnorm0);
    out.report.iterations = it;

    if (!std::isfinite(rel) || !std::isfinite(rho_next)) {
      out.report.relative_residual = rel;
      out.report.status = KrylovStatus::Stagnated;
      return out;
    }
    if (rel <= tol) {
      out.report.relative_residual = rel;
      out.report.status = KrylovStatus::Converged;
      return out;
    }
    if (it >= stagnation_window) {
      const double before =
          out.report.residual_history[it - stagnation_window];
      const double now = out.report.residual_history[it];
      if (!(now <= before * (1.0 - stagnation_drop))) {
        out.report.relative_residual = rel;
        out.report.status = KrylovStatus::Stagnated;
        return out;
      }
    }
    if (!(rho_next > 0.0)) {
      out.report.relative_residual = rel;
      out.report.status = KrylovStatus::Stagnated;
      return out;
    }
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }

  out.report.relative_residual = rel;
  out.report.status = KrylovStatus::MaxIter;
  return out;
}

}  // namespace specsdp
