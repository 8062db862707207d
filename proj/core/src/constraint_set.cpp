#include "specsdp/constraint_set.hpp"

#include <cmath>
#include <string>

namespace specsdp {

ConstraintSet::ConstraintSet(Index n, std::vector<SparseSymMatrix> constraints,
                             Vector b, Matrix C)
    : n_(n),
      m_(static_cast<Index>(constraints.size())),
      A_(std::move(constraints)),
      b_(std::move(b)),
      C_(std::move(C)) {
  if (n_ <= 0) throw InvalidInputError("ConstraintSet: dimension must be > 0");
  if (m_ < 1) throw InvalidInputError("ConstraintSet: need at least one constraint");
  if (b_.size() != m_)
    throw InvalidInputError("ConstraintSet: b has wrong length");
  require_square_symmetric(C_, "ConstraintSet cost");
  if (C_.rows() != n_)
    throw InvalidInputError("ConstraintSet: cost dimension mismatch");
  for (const auto& Ai : A_) {
    if (Ai.n != n_)
      throw InvalidInputError("ConstraintSet: constraint dimension mismatch");
    if (Ai.upper.empty())
      throw InvalidInputError("ConstraintSet: empty constraint matrix");
  }

  std::vector<Triplet> vec_entries;
  for (Index i = 0; i < m_; ++i) {
    for (const auto& t : A_[i].expanded())
      vec_entries.emplace_back(t.col() * n_ + t.row(), i, t.value());
  }
  avec_.resize(n_ * n_, m_);
  avec_.setFromTriplets(vec_entries.begin(), vec_entries.end());
  avec_.makeCompressed();

  gram_ = SparseMatrix(avec_.transpose()) * avec_;
  gram_.prune(0.0);
  gram_.makeCompressed();

  bool diagonal = true;
  for (Index k = 0; k < gram_.outerSize() && diagonal; ++k) {
    for (SparseMatrix::InnerIterator it(gram_, k); it; ++it) {
      if (it.row() != it.col() && it.value() != 0.0) {
        diagonal = false;
        break;
      }
    }
  }
  if (diagonal) {
    Vector d = gram_.diagonal();
    for (Index i = 0; i < m_; ++i) {
      if (!(d[i] > 0.0))
        throw DegenerateDataError(
            "ConstraintSet: constraint " + std::to_string(i) +
                " has zero norm; operator is rank-deficient",
            i);
    }
    gram_diag_ = std::move(d);
  } else {
    try {
      normal_factor_ = std::make_unique<SparseCholesky>(gram_);
    } catch (const FactorizationError& e) {
      throw DegenerateDataError(
          "ConstraintSet: A^T A is singular at pivot " +
              std::to_string(e.pivot()) +
              "; constraint operator is rank-deficient",
          e.pivot());
    }
  }
}

Matrix ConstraintSet::expand(const Vector& y) const {
  Matrix out(n_, n_);
  expand_into(y, out);
  return out;
}

void ConstraintSet::expand_into(const Vector& y, Matrix& out) const {
  if (y.size() != m_)
    throw InvalidInputError("expand: coefficient length mismatch");
  out.resize(n_, n_);
  Eigen::Map<Vector> flat(out.data(), n_ * n_);
  flat.noalias() = avec_ * y;
}

Vector ConstraintSet::project(const Matrix& X) const {
  if (X.rows() != n_ || X.cols() != n_)
    throw InvalidInputError("project: dimension mismatch");
  Eigen::Map<const Vector> flat(X.data(), n_ * n_);
  return avec_.transpose() * flat;
}

Vector ConstraintSet::gram_multiply(const Vector& y) const {
  if (y.size() != m_)
    throw InvalidInputError("gram_multiply: length mismatch");
  return gram_ * y;
}

Vector ConstraintSet::normal_solve(const Vector& v) const {
  if (v.size() != m_)
    throw InvalidInputError("normal_solve: length mismatch");
  if (gram_diag_) return v.cwiseQuotient(*gram_diag_);
  return normal_factor_->solve(v);
}

}  // namespace specsdp
