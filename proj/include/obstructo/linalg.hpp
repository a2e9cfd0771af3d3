#pragma once

#include <optional>
#include <vector>

#include "obstructo/scalar.hpp"

namespace obstructo::linalg {

using Vector = std::vector<GaussRat>;
using Matrix = std::vector<Vector>;  // row-major, every row the same length

/// Reduced row echelon form with the pivot column of each row.
struct Echelon {
  Matrix rows;
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;
  std::size_t rank() const { return rows.size(); }
};

Echelon rref(Matrix m, std::size_t cols);

/// Basis of {x : A x = 0}, one vector per free column.
std::vector<Vector> nullspace(const Matrix& a, std::size_t cols);

/// General solution of A x = b: a particular solution and a nullspace basis.
struct Solution {
  Vector particular;
  std::vector<Vector> kernel;
};
std::optional<Solution> solve(const Matrix& a, const Vector& b, std::size_t cols);

/// Incrementally maintained span, used for membership tests.
class Span {
 public:
  explicit Span(std::size_t cols) : cols_(cols) {}
  /// Returns true when v was independent of the current span.
  bool insert(Vector v);
  bool contains(Vector v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

 private:
  /// Reduces v against stored rows in place; returns the first nonzero column or cols_.
  std::size_t reduce(Vector& v) const;
  std::size_t cols_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace obstructo::linalg
