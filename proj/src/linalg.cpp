#include "obstructo/linalg.hpp"

namespace obstructo::linalg {

namespace {

void axpy(Vector& y, const GaussRat& a, const Vector& x) {
  for (std::size_t k = 0; k < y.size(); ++k)
    if (!x[k].is_zero()) y[k] -= a * x[k];
}

}  // namespace

Echelon rref(Matrix m, std::size_t cols) {
  Echelon out;
  out.cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    GaussRat inv = GaussRat(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][c].is_zero()) continue;
      GaussRat f = m[k][c];
      axpy(m[k], f, m[r]);
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<Vector> nullspace(const Matrix& a, std::size_t cols) {
  Echelon e = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = GaussRat(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Solution> solve(const Matrix& a, const Vector& b, std::size_t cols) {
  Matrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  Echelon e = rref(std::move(aug), cols + 1);
  Solution sol;
  sol.particular.assign(cols, GaussRat());
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == cols) return std::nullopt;
    sol.particular[e.pivots[r]] = e.rows[r][cols];
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = GaussRat(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::size_t Span::reduce(Vector& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const GaussRat& f = v[pivots_[r]];
    if (!f.is_zero()) {
      GaussRat factor = f;
      axpy(v, factor, rows_[r]);
    }
  }
  for (std::size_t c = 0; c < cols_; ++c)
    if (!v[c].is_zero()) return c;
  return cols_;
}

bool Span::insert(Vector v) {
  std::size_t lead = reduce(v);
  if (lead == cols_) return false;
  GaussRat inv = GaussRat(1) / v[lead];
  for (auto& x : v) x *= inv;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!rows_[r][lead].is_zero()) {
      GaussRat f = rows_[r][lead];
      axpy(rows_[r], f, v);
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(lead);
  return true;
}

bool Span::contains(Vector v) const { return reduce(v) == cols_; }

}  // namespace obstructo::linalg
