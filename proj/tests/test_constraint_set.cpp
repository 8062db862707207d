#include <doctest.h>

#include "specsdp/constraint_set.hpp"
#include "specsdp/matcomp.hpp"
#include "test_helpers.hpp"

using namespace specsdp;
using namespace specsdp::testing;

TEST_CASE("expand unit vectors and zero") {
  Rng rng(21);
  const Index n = 6, m = 8;
  ConstraintSet cs = random_constraint_set(rng, n, m);

  Vector e1 = Vector::Zero(m);
  e1[0] = 1.0;
  CHECK((cs.expand(e1) - cs.constraints()[0].to_dense()).norm() == 0.0);
  CHECK(cs.expand(Vector::Zero(m)).norm() == 0.0);

  // Dense summation oracle.
  Vector y = random_dense(rng, m, 1);
  Matrix expect = Matrix::Zero(n, n);
  for (Index i = 0; i < m; ++i)
    expect += y[i] * cs.constraints()[i].to_dense();
  CHECK(rel_error(cs.expand(y), expect) <= 1e-14);
  CHECK((cs.expand(y) - cs.expand(y).transpose()).norm() == 0.0);

  CHECK_THROWS_AS(cs.expand(Vector::Zero(m + 1)), InvalidInputError);
}

TEST_CASE("project basics and adjoint identity") {
  Rng rng(22);
  const Index n = 8, m = 12;
  ConstraintSet cs = random_constraint_set(rng, n, m);

  CHECK(cs.project(Matrix::Zero(n, n)).norm() == 0.0);
  CHECK_THROWS_AS(cs.project(Matrix::Zero(n + 1, n + 1)), InvalidInputError);

  for (int trial = 0; trial < 50; ++trial) {
    Vector y = random_dense(rng, m, 1);
    Matrix X = random_symmetric(rng, n);
    const double lhs = cs.expand(y).cwiseProduct(X).sum();
    const double rhs = y.dot(cs.project(X));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (y.norm() * X.norm() + 1.0));
  }
}

TEST_CASE("project of identity constraint is the trace") {
  std::vector<SparseSymMatrix> a;
  std::vector<Triplet> t;
  const Index n = 4;
  for (Index i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
  a.emplace_back(n, t);
  ConstraintSet cs(n, std::move(a), Vector::Ones(1), Matrix::Identity(n, n));

  Rng rng(23);
  Matrix X = random_symmetric(rng, n);
  CHECK(cs.project(X)[0] == doctest::Approx(X.trace()));
}

TEST_CASE("gram consistency: project(expand(y)) equals dense A^T A y") {
  Rng rng(24);
  const Index n = 8, m = 10;
  ConstraintSet cs = random_constraint_set(rng, n, m);
  Matrix A = dense_vec_operator(cs);
  Matrix gram = A.transpose() * A;
  for (int trial = 0; trial < 20; ++trial) {
    Vector y = random_dense(rng, m, 1);
    CHECK(rel_error(cs.project(cs.expand(y)), Vector(gram * y)) <= 1e-12);
    CHECK(rel_error(cs.gram_multiply(y), Vector(gram * y)) <= 1e-12);
  }
}

TEST_CASE("normal_solve: matrix completion gives exact doubling") {
  MatrixCompletionInstance inst = generate(3, 3, 1, 9, 0);
  ConstraintSet cs = to_sdp(inst);
  CHECK(cs.gram_is_diagonal());

  // Explicit assembly at p = q = 3: A^T A = I/2.
  Matrix A = dense_vec_operator(cs);
  CHECK((A.transpose() * A - 0.5 * Matrix::Identity(9, 9)).norm() == 0.0);

  Rng rng(25);
  Vector v = random_dense(rng, 9, 1);
  CHECK((cs.normal_solve(v) - 2.0 * v).norm() == 0.0);
}

TEST_CASE("normal_solve: single identity constraint divides by n") {
  const Index n = 5;
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
  std::vector<SparseSymMatrix> a{SparseSymMatrix(n, t)};
  ConstraintSet cs(n, std::move(a), Vector::Ones(1), Matrix::Identity(n, n));
  Vector v(1);
  v << 3.0;
  CHECK(cs.normal_solve(v)[0] == doctest::Approx(3.0 / n));
}

TEST_CASE("normal_solve matches dense normal equations") {
  Rng rng(26);
  const Index n = 6, m = 10;
  ConstraintSet cs = random_constraint_set(rng, n, m);
  Matrix A = dense_vec_operator(cs);
  Matrix gram = A.transpose() * A;
  for (int trial = 0; trial < 20; ++trial) {
    Vector v = random_dense(rng, m, 1);
    Vector expect = gram.llt().solve(v);
    CHECK(rel_error(cs.normal_solve(v), expect) <= 1e-10);
    // Round trip: multiply then solve.
    CHECK(rel_error(cs.normal_solve(cs.gram_multiply(v)), v) <= 1e-10);
  }
}

TEST_CASE("rank-deficient operator rejected at construction") {
  // Two identical single-entry constraints are linearly dependent.
  const Index n = 3;
  std::vector<SparseSymMatrix> a;
  a.emplace_back(n, std::vector<Triplet>{{0, 1, 1.0}});
  a.emplace_back(n, std::vector<Triplet>{{0, 1, 2.0}});
  CHECK_THROWS_AS(
      ConstraintSet(n, std::move(a), Vector::Zero(2), Matrix::Identity(n, n)),
      DegenerateDataError);
}
