#include <doctest.h>

#include <cmath>
#include <limits>

#include "specsdp/linalg.hpp"
#include "test_helpers.hpp"

using namespace specsdp;
using namespace specsdp::testing;

TEST_CASE("sym_eig identity and diagonal") {
  SymEig e = sym_eig(Matrix::Identity(3, 3));
  CHECK(e.eigenvalues.size() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(e.eigenvalues[i] == doctest::Approx(1.0));
  CHECK((e.eigenvectors.transpose() * e.eigenvectors -
         Matrix::Identity(3, 3)).norm() < 1e-12 * 3);

  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  SymEig ed = sym_eig(D);
  CHECK(ed.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(1.0));
  // Axis vectors up to sign.
  CHECK(std::abs(std::abs(ed.eigenvectors(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(ed.eigenvectors(1, 1)) - 1.0) < 1e-14);
}

TEST_CASE("sym_eig reconstructs, sorted descending, orthonormal") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix M = random_symmetric(rng, 5);
    SymEig e = sym_eig(M);
    Matrix rebuilt = e.eigenvectors * e.eigenvalues.asDiagonal() *
                     e.eigenvectors.transpose();
    CHECK((rebuilt - M).norm() <= 1e-12 * M.norm());
    CHECK((e.eigenvectors.transpose() * e.eigenvectors -
           Matrix::Identity(5, 5)).norm() <= 1e-12 * 5);
    for (Index i = 1; i < 5; ++i)
      CHECK(e.eigenvalues[i - 1] >= e.eigenvalues[i]);
  }
}

TEST_CASE("sym_eig 2x2 matches characteristic polynomial roots") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix M = random_symmetric(rng, 2);
    const double tr = M.trace();
    const double det = M.determinant();
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    SymEig e = sym_eig(M);
    CHECK(std::abs(e.eigenvalues[0] - (tr / 2.0 + disc)) <=
          1e-12 * (1.0 + std::abs(tr)));
    CHECK(std::abs(e.eigenvalues[1] - (tr / 2.0 - disc)) <=
          1e-12 * (1.0 + std::abs(tr)));
  }
}

TEST_CASE("sym_eig rejects non-finite input") {
  Matrix M = Matrix::Identity(2, 2);
  M(0, 1) = M(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sym_eig(M), InvalidInputError);
}

TEST_CASE("cholesky_spd examples") {
  CHECK((cholesky_spd(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4))
            .norm() == 0.0);

  Matrix M(2, 2);
  M << 4, 2, 2, 5;
  Matrix L = cholesky_spd(M);
  CHECK(L(0, 0) == doctest::Approx(2.0));
  CHECK(L(1, 0) == doctest::Approx(1.0));
  CHECK(L(1, 1) == doctest::Approx(2.0));
  CHECK(L(0, 1) == 0.0);
  CHECK((L * L.transpose() - M).norm() <= 1e-12 * M.norm());

  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;  // eigenvalues 3, -1
  CHECK_THROWS_AS(cholesky_spd(bad), NotPositiveDefiniteError);
}

TEST_CASE("cholesky_spd reconstruction property") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + rng.uniform_below(49);
    Matrix M = random_spd(rng, n, 0.1, 10.0);
    Matrix L = cholesky_spd(M);
    CHECK((L * L.transpose() - M).norm() <= 1e-12 * M.norm());
  }
}

TEST_CASE("sparse_cholesky diagonal and identity-scaled systems") {
  // Half identity (the matrix-completion normal matrix): solve is doubling.
  std::vector<Triplet> half;
  const Index m = 9;
  for (Index i = 0; i < m; ++i) half.emplace_back(i, i, 0.5);
  SparseCholesky factor(SparseSymMatrix(m, half));
  Rng rng(5);
  Vector v = random_dense(rng, m, 1);
  CHECK(rel_error(factor.solve(v), Vector(2.0 * v)) <= 1e-14);

  std::vector<Triplet> diag;
  for (Index i = 0; i < 5; ++i)
    diag.emplace_back(i, i, static_cast<double>(i + 1));
  SparseCholesky d(SparseSymMatrix(5, diag));
  Vector ones = Vector::Ones(5);
  Vector expect(5);
  expect << 1.0, 0.5, 1.0 / 3.0, 0.25, 0.2;
  CHECK(rel_error(d.solve(ones), expect) <= 1e-14);
}

TEST_CASE("sparse_cholesky matches dense solve on random SPD") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 8;
    // Random SPD with sparse structure: tridiagonal-dominant.
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i) t.emplace_back(i, i, 4.0 + rng.uniform01());
    for (Index i = 0; i + 1 < n; ++i)
      t.emplace_back(i, i + 1, 2.0 * rng.uniform01() - 1.0);
    SparseSymMatrix M(n, t);
    SparseCholesky factor(M);
    Matrix dense = M.to_dense();
    Vector v = random_dense(rng, n, 1);
    Vector expect = dense.llt().solve(v);
    CHECK(rel_error(factor.solve(v), expect) <= 1e-10);
  }
}

TEST_CASE("sparse_cholesky names the failed pivot") {
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, -1.0}};
  try {
    SparseCholesky factor(SparseSymMatrix(2, t));
    FAIL("expected FactorizationError");
  } catch (const FactorizationError& e) {
    CHECK(e.pivot() == 1);
  }
}

TEST_CASE("ldl_quasidef small examples") {
  {
    std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, -1.0}};
    QuasiDefLdl f(SparseSymMatrix(2, t));
    CHECK(f.negative_pivots() == 1);
    Vector d = f.vector_d();
    std::sort(d.data(), d.data() + 2);
    CHECK(d[0] == doctest::Approx(-1.0));
    CHECK(d[1] == doctest::Approx(1.0));
    // L must be the identity for a diagonal input under any permutation.
    Matrix L = Matrix(f.matrix_l());
    CHECK((L - Matrix::Identity(2, 2)).norm() == 0.0);
  }
  {
    // [[1, 1], [1, -1]]: verify P K P^T = L D L^T and the sign pattern.
    std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, 1.0}, {1, 1, -1.0}};
    SparseSymMatrix K(2, t);
    QuasiDefLdl f(K);
    CHECK(f.negative_pivots() == 1);
    Matrix L = Matrix(f.matrix_l());
    Matrix D = f.vector_d().asDiagonal();
    Eigen::VectorXi perm = f.permutation();
    Matrix P = Matrix::Zero(2, 2);
    for (Index i = 0; i < 2; ++i) P(perm[i], i) = 1.0;
    Matrix rebuilt = P.transpose() * (L * D * L.transpose()) * P;
    CHECK((rebuilt - K.to_dense()).norm() <= 1e-10 * K.to_dense().norm());
  }
}

TEST_CASE("ldl_quasidef zero pivot raises structural error") {
  std::vector<Triplet> t{{0, 0, 0.0 + 1.0}, {1, 1, 1.0}, {0, 1, 1.0}};
  // K = [[1,1],[1,1]] is singular: second pivot is exactly zero.
  CHECK_THROWS_AS(QuasiDefLdl(SparseSymMatrix(2, t)), StructuralError);
}

TEST_CASE("ldl_quasidef random quasi-definite: solve and sign pattern") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n1 = 3 + rng.uniform_below(5);
    const Index n2 = 2 + rng.uniform_below(4);
    const Index n = n1 + n2;
    Matrix top = random_spd(rng, n1, 0.5, 4.0);
    Matrix bottom = random_spd(rng, n2, 0.5, 4.0);
    Matrix off = random_dense(rng, n1, n2);
    Matrix K = Matrix::Zero(n, n);
    K.topLeftCorner(n1, n1) = top;
    K.bottomRightCorner(n2, n2) = -bottom;
    K.topRightCorner(n1, n2) = off;
    K.bottomLeftCorner(n2, n1) = off.transpose();

    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j)
        if (K(i, j) != 0.0)
          t.emplace_back(static_cast<int>(i), static_cast<int>(j), K(i, j));
    QuasiDefLdl f(SparseSymMatrix(n, t));
    CHECK(f.negative_pivots() == n2);

    Vector v = random_dense(rng, n, 1);
    Vector expect = K.fullPivLu().solve(v);
    CHECK(rel_error(f.solve(v), expect) <= 1e-8);

    // Recomposition through the permutation.
    Matrix L = Matrix(f.matrix_l());
    Matrix D = f.vector_d().asDiagonal();
    Eigen::VectorXi perm = f.permutation();
    Matrix P = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) P(perm[i], i) = 1.0;
    Matrix rebuilt = P.transpose() * (L * D * L.transpose()) * P;
    CHECK((rebuilt - K).norm() <= 1e-10 * K.norm());
  }
}
