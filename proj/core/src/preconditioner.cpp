#include "specsdp/preconditioner.hpp"

#include <cmath>

namespace specsdp {

SmwPreconditioner::SmwPreconditioner(const ConstraintSet& cs,
                                     const SpectralSplit& split,
                                     int refine_steps)
    : cs_(cs), split_(split), tau_(split.tau), refine_steps_(refine_steps) {
  const Index nk = cs.n() * split.ktilde;
  if (nk == 0) return;

  schur_.resize(nk, nk);
  Vector unit = Vector::Zero(nk);
  for (Index j = 0; j < nk; ++j) {
    unit[j] = 1.0;
    Vector uj = lowrank_matvec(cs_, split_, unit);
    Vector wj = cs_.normal_solve(uj);
    schur_.col(j) = lowrank_matvec_adjoint(cs_, split_, wj);
    unit[j] = 0.0;
  }
  schur_.diagonal().array() += tau_ * tau_;
  schur_ = 0.5 * (schur_ + schur_.transpose()).eval();

  schur_llt_.compute(schur_);
  if (schur_llt_.info() != Eigen::Success)
    throw NumericalBreakdownError(
        "build_smw: Schur complement is not positive definite");
}

Vector SmwPreconditioner::apply_once(const Vector& r) const {
  const double tau2 = tau_ * tau_;
  Vector t = cs_.normal_solve(r);
  if (split_.ktilde == 0) return t / tau2;
  Vector g = lowrank_matvec_adjoint(cs_, split_, t);
  Vector h = schur_llt_.solve(g);
  Vector corrected = r - lowrank_matvec(cs_, split_, h);
  return cs_.normal_solve(corrected) / tau2;
}

Vector SmwPreconditioner::target_matvec(const Vector& v) const {
  Vector out = tau_ * tau_ * cs_.gram_multiply(v);
  if (split_.ktilde > 0) {
    Vector ut_v = lowrank_matvec_adjoint(cs_, split_, v);
    out += lowrank_matvec(cs_, split_, ut_v);
  }
  return out;
}

Vector SmwPreconditioner::apply(const Vector& r) const {
  if (r.size() != cs_.m())
    throw InvalidInputError("apply_smw: length mismatch");
  Vector x = apply_once(r);
  for (int step = 0; step < refine_steps_; ++step) {
    Vector resid = r - target_matvec(x);
    x += apply_once(resid);
  }
  return x;
}

AugPreconditioner::AugPreconditioner(const ConstraintSet& cs,
                                     const SpectralSplit& split,
                                     int refine_steps)
    : cs_(cs), split_(split), tau_(split.tau), refine_steps_(refine_steps) {
  const Index n = cs.n();
  const Index m = cs.m();
  const Index k = split.ktilde;
  const Index nk = n * k;
  const double tau2 = tau_ * tau_;
  const double tau32 = std::pow(tau_, 1.5);

  std::vector<Triplet> entries;
  const SparseMatrix& gram = cs.gram();
  entries.reserve(gram.nonZeros() + 4 * k * m + nk);
  for (Index col = 0; col < gram.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(gram, col); it; ++it)
      entries.emplace_back(it.row(), it.col(), tau2 * it.value());
  }
  // Off-diagonal block: row i of A^T (U kron I) is vec(A_i U); entry (a, c)
  // of A_i U lands at column c * n + a.
  for (Index i = 0; i < m; ++i) {
    for (const auto& t : cs.constraints()[i].expanded()) {
      for (Index c = 0; c < k; ++c) {
        const double value = tau32 * t.value() * split.U(t.col(), c);
        const Index col = m + c * n + t.row();
        entries.emplace_back(i, col, value);
        entries.emplace_back(col, i, value);
      }
    }
  }
  for (Index j = 0; j < nk; ++j)
    entries.emplace_back(m + j, m + j, -0.5 * tau2);

  K_.resize(m + nk, m + nk);
  K_.setFromTriplets(entries.begin(), entries.end());
  K_.prune(0.0);
  K_.makeCompressed();

  try {
    factor_ = std::make_unique<QuasiDefLdl>(K_);
  } catch (const StructuralError& e) {
    throw NumericalBreakdownError(std::string("build_aug: ") + e.what());
  }
  if (factor_->negative_pivots() != nk)
    throw NumericalBreakdownError(
        "build_aug: pivot sign pattern is not quasi-definite");
}

Vector AugPreconditioner::apply(const Vector& r) const {
  const Index m = cs_.m();
  if (r.size() != m) throw InvalidInputError("apply_aug: length mismatch");
  if (split_.ktilde == 0) return cs_.normal_solve(r) / (tau_ * tau_);

  Vector rhs = Vector::Zero(K_.rows());
  rhs.head(m) = r;
  Vector xy = factor_->solve(rhs);
  for (int step = 0; step < refine_steps_; ++step) {
    Vector resid = rhs - K_ * xy;
    xy += factor_->solve(resid);
  }
  return xy.head(m);
}

Vector AugPreconditioner::target_matvec(const Vector& v) const {
  const double tau2 = tau_ * tau_;
  Vector out = tau2 * cs_.gram_multiply(v);
  if (split_.ktilde > 0) {
    // 2 tau A^T (U U^T kron I) A v, via B B^T with B rows vec(A_i U).
    const Index k = split_.ktilde;
    Matrix expanded = cs_.expand(v);
    Matrix half = expanded * split_.U;  // n x k
    Vector back(cs_.m());
    for (Index i = 0; i < cs_.m(); ++i) {
      double acc = 0.0;
      for (const auto& t : cs_.constraints()[i].expanded())
        for (Index c = 0; c < k; ++c)
          acc += t.value() * split_.U(t.col(), c) * half(t.row(), c);
      back[i] = acc;
    }
    out += 2.0 * tau_ * back;
  }
  return out;
}

DensePreconditioner::DensePreconditioner(const ConstraintSet& cs,
                                         const Matrix& W, Index oracle_cap) {
  Matrix H = dense_hessian(cs, W, oracle_cap);
  llt_.compute(H);
  if (llt_.info() != Eigen::Success)
    throw NumericalBreakdownError(
        "dense preconditioner: Hessian is not positive definite");
}

Vector DensePreconditioner::apply(const Vector& r) const {
  if (r.size() != llt_.rows())
    throw InvalidInputError("dense preconditioner: length mismatch");
  return llt_.solve(r);
}

}  // namespace specsdp
