#include "specsdp/matcomp.hpp"

#include <algorithm>
#include <cmath>

#include "specsdp/rng.hpp"

namespace specsdp {

Matrix MatrixCompletionInstance::observed_dense() const {
  Matrix Z = Matrix::Zero(p, q);
  for (Index t = 0; t < m(); ++t)
    Z(omega[t].first, omega[t].second) = values[t];
  return Z;
}

MatrixCompletionInstance generate(Index p, Index q, Index k, Index m,
                                  std::uint64_t seed) {
  if (p < 1 || q < 1) throw InvalidInputError("generate: need p, q >= 1");
  if (k < 1 || k > std::min(p, q))
    throw InvalidInputError("generate: need 1 <= k <= min(p, q)");
  if (m < 1 || m > p * q)
    throw InvalidInputError("generate: need 1 <= m <= p * q");

  Rng rng(seed);
  MatrixCompletionInstance inst;
  inst.p = p;
  inst.q = q;
  inst.k = k;
  inst.seed = seed;

  Matrix g1(p, k), g2(q, k);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < k; ++j) g1(i, j) = rng.normal();
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < k; ++j) g2(i, j) = rng.normal();

  // Partial Fisher-Yates over linear indices: uniform over m-subsets.
  std::vector<Index> linear(p * q);
  for (Index t = 0; t < p * q; ++t) linear[t] = t;
  for (Index t = 0; t < m; ++t) {
    const Index pick =
        t + static_cast<Index>(rng.uniform_below(
                static_cast<std::uint64_t>(p * q - t)));
    std::swap(linear[t], linear[pick]);
  }
  linear.resize(m);
  std::sort(linear.begin(), linear.end());

  inst.omega.reserve(m);
  inst.values.resize(m);
  for (Index t = 0; t < m; ++t) {
    const Index i = linear[t] / q;  // row-major linearization
    const Index j = linear[t] % q;
    inst.omega.emplace_back(i, j);
    inst.values[t] = g1.row(i).dot(g2.row(j));
  }
  inst.g1 = std::move(g1);
  inst.g2 = std::move(g2);
  return inst;
}

ConstraintSet to_sdp(const MatrixCompletionInstance& inst) {
  const Index n = inst.p + inst.q;
  std::vector<SparseSymMatrix> constraints;
  constraints.reserve(inst.m());
  for (Index t = 0; t < inst.m(); ++t) {
    const Index row = inst.omega[t].first;
    const Index col = inst.p + inst.omega[t].second;
    constraints.emplace_back(n, std::vector<Triplet>{{static_cast<int>(row),
                                                      static_cast<int>(col),
                                                      0.5}});
  }
  return ConstraintSet(n, std::move(constraints), inst.values,
                       Matrix::Identity(n, n));
}

Iterate feasible_start(const MatrixCompletionInstance& inst,
                       const ConstraintSet& cs) {
  const Index p = inst.p, q = inst.q;
  const Index n = p + q;
  if (cs.n() != n)
    throw InvalidInputError("feasible_start: constraint set mismatch");

  Matrix zbar = inst.observed_dense();
  double sigma_max = 0.0;
  if (inst.m() > 0) {
    Matrix gram = zbar.transpose() * zbar;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    sigma_max = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  const double alpha = 1.1 * sigma_max + 1.0;

  Iterate it;
  it.X = Matrix::Zero(n, n);
  it.X.topLeftCorner(p, p) = alpha * Matrix::Identity(p, p);
  it.X.bottomRightCorner(q, q) = alpha * Matrix::Identity(q, q);
  it.X.topRightCorner(p, q) = zbar;
  it.X.bottomLeftCorner(q, p) = zbar.transpose();
  it.S = Matrix::Identity(n, n);
  it.y = Vector::Zero(cs.m());
  it.mu = it.X.trace() / static_cast<double>(n);  // S = I
  return it;
}

RecoveryMetrics metrics(const MatrixCompletionInstance& inst,
                        const Matrix& X) {
  const Index p = inst.p, q = inst.q;
  if (X.rows() != p + q || X.cols() != p + q)
    throw InvalidInputError("metrics: solution dimension mismatch");

  RecoveryMetrics out;
  Matrix Z = X.topRightCorner(p, q);

  double num = 0.0, den = 0.0;
  for (Index t = 0; t < inst.m(); ++t) {
    const double diff = Z(inst.omega[t].first, inst.omega[t].second) -
                        inst.values[t];
    num += diff * diff;
    den += inst.values[t] * inst.values[t];
  }
  out.relative_residual = den > 0.0 ? std::sqrt(num / den)
                                    : std::sqrt(num);

  if (inst.g1 && inst.g2) {
    Matrix M = *inst.g1 * inst.g2->transpose();
    const double m_nuclear =
        Eigen::BDCSVD<Matrix>(M).singularValues().sum();
    const double z_nuclear =
        Eigen::BDCSVD<Matrix>(Z).singularValues().sum();
    if (m_nuclear > 0.0)
      out.objective_error = std::abs(z_nuclear - m_nuclear) / m_nuclear;
  }
  return out;
}

}  // namespace specsdp
