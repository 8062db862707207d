#include "specsdp/hessian.hpp"

#include <string>

namespace specsdp {

Vector residual_rhs(const ConstraintSet& cs, const Matrix& W,
                    const Matrix& Z) {
  const Index n = cs.n();
  if (W.rows() != n || W.cols() != n || Z.rows() != n || Z.cols() != n)
    throw InvalidInputError("residual_rhs: shape mismatch");
  Matrix sandwich = W * (cs.C() - Z) * W;
  return cs.b() + cs.project(sandwich);
}

Vector hess_matvec(const ConstraintSet& cs, const Matrix& W, const Vector& y) {
  HessianOperator op(cs, W);
  return op(y);
}

HessianOperator::HessianOperator(const ConstraintSet& cs, const Matrix& W)
    : cs_(cs), W_(W) {
  if (W.rows() != cs.n() || W.cols() != cs.n())
    throw InvalidInputError("HessianOperator: scaling dimension mismatch");
  const Index n = cs.n();
  expanded_.resize(n, n);
  half_.resize(n, n);
  sandwich_.resize(n, n);
}

Vector HessianOperator::operator()(const Vector& y) const {
  cs_.expand_into(y, expanded_);
  half_.noalias() = W_ * expanded_;
  sandwich_.noalias() = half_ * W_;
  return cs_.project(sandwich_);
}

Matrix dense_hessian(const ConstraintSet& cs, const Matrix& W,
                     Index oracle_cap) {
  const Index m = cs.m();
  if (m > oracle_cap)
    throw OracleRefusedError("dense_hessian: m = " + std::to_string(m) +
                             " exceeds the oracle cap " +
                             std::to_string(oracle_cap));
  if (W.rows() != cs.n() || W.cols() != cs.n())
    throw InvalidInputError("dense_hessian: scaling dimension mismatch");

  std::vector<std::vector<Triplet>> expanded(m);
  for (Index i = 0; i < m; ++i) expanded[i] = cs.constraints()[i].expanded();

  // H_{ij} = A_i . (W A_j W) = sum over entries (a,b) of A_i and (c,d) of
  // A_j of v_ab * v_cd * W(a,c) * W(d,b).
  Matrix H(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      double acc = 0.0;
      for (const auto& e : expanded[i]) {
        for (const auto& f : expanded[j]) {
          acc += e.value() * f.value() * W(e.row(), f.row()) *
                 W(f.col(), e.col());
        }
      }
      H(i, j) = acc;
      H(j, i) = acc;
    }
  }
  return H;
}

Vector lowrank_matvec(const ConstraintSet& cs, const SpectralSplit& s,
                      const Vector& x) {
  const Index n = cs.n();
  const Index k = s.ktilde;
  if (x.size() != n * k)
    throw InvalidInputError("lowrank_matvec: expected length n * ktilde");
  if (k == 0) return Vector::Zero(cs.m());
  Eigen::Map<const Matrix> Xmat(x.data(), n, k);
  Matrix product = s.Zf * Xmat * s.U.transpose();
  return cs.project(product);
}

Vector lowrank_matvec_adjoint(const ConstraintSet& cs, const SpectralSplit& s,
                              const Vector& y) {
  const Index n = cs.n();
  const Index k = s.ktilde;
  if (y.size() != cs.m())
    throw InvalidInputError("lowrank_matvec_adjoint: length mismatch");
  if (k == 0) return Vector::Zero(0);
  Matrix expanded = cs.expand(y);
  Matrix out = s.Zf.transpose() * expanded * s.U;
  return Eigen::Map<const Vector>(out.data(), n * k);
}

RecoveredPair recover(const ConstraintSet& cs, const Matrix& W,
                      const Matrix& Z, const Vector& y) {
  const Index n = cs.n();
  if (W.rows() != n || Z.rows() != n)
    throw InvalidInputError("recover: shape mismatch");
  RecoveredPair out;
  out.S = cs.C() - cs.expand(y);
  Matrix X = W * (Z - out.S) * W;
  out.X = 0.5 * (X + X.transpose());
  return out;
}

}  // namespace specsdp
