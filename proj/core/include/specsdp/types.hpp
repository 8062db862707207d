#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>
#include <vector>

namespace specsdp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Base for everything this library throws. Subclasses distinguish bad input
// from numerical trouble so callers (and the CLI exit codes) can tell them
// apart.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

// Factorization hit a bad pivot; `pivot` is the index in the original
// (unpermuted) ordering.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, Index pivot)
      : Error(what), pivot_(pivot) {}
  Index pivot() const { return pivot_; }

 private:
  Index pivot_;
};

// Input claimed to be symmetric quasi-definite is not.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Constraint data is rank-deficient (violates the well-posedness assumption).
class DegenerateDataError : public Error {
 public:
  DegenerateDataError(const std::string& what, Index pivot)
      : Error(what), pivot_(pivot) {}
  Index pivot() const { return pivot_; }

 private:
  Index pivot_;
};

// Dense test oracle refused because the instance exceeds the configured cap.
class OracleRefusedError : public Error {
 public:
  using Error::Error;
};

class NumericalBreakdownError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Symmetric matrix stored as its upper triangle: entries with row <= col,
// implicit mirror below the diagonal.
struct SparseSymMatrix {
  Index n = 0;
  std::vector<Triplet> upper;

  SparseSymMatrix() = default;
  SparseSymMatrix(Index dim, std::vector<Triplet> entries);

  Index nnz_upper() const { return static_cast<Index>(upper.size()); }
  Matrix to_dense() const;
  SparseMatrix to_sparse() const;  // full symmetric CSC

  // Both triangles, (row, col, value) with the diagonal emitted once.
  std::vector<Triplet> expanded() const;
};

}  // namespace specsdp
