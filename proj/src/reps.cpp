#include "obstructo/reps.hpp"

#include <cmath>

#include "obstructo/error.hpp"

namespace obstructo {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

const MatrixXcd& MatrixRep::at(const std::string& name) const {
  auto it = generators.find(name);
  if (it == generators.end()) throw UnassignedGenerator("no matrix assigned to '" + name + "' in " + basis);
  return it->second;
}

std::vector<std::size_t> MatrixRep::interior(unsigned word_len) const {
  std::vector<std::size_t> cols;
  const long margin = word_len == 0 ? 0 : static_cast<long>(reach) * (static_cast<long>(word_len) - 1);
  for (std::size_t k = 0; k < dim; ++k) {
    long lo = static_cast<long>(k) - margin, hi = static_cast<long>(k) + margin;
    // Hermite lowering annihilates |0>, so only the top edge truncates.
    bool bounded_below = basis != "hermite-unnormalized";
    if (reach == 0 || ((!bounded_below || lo >= 0) && hi < static_cast<long>(dim))) cols.push_back(k);
  }
  return cols;
}

linalg::Matrix hermite_position_exact(std::size_t N) {
  linalg::Matrix x(N, linalg::Vector(N));
  for (std::size_t k = 0; k < N; ++k) {
    if (k > 0) x[k - 1][k] = GaussRat(static_cast<long>(k));
    if (k + 1 < N) x[k + 1][k] = GaussRat::frac(1, 2);
  }
  return x;
}

linalg::Matrix hermite_derivative_exact(std::size_t N) {
  linalg::Matrix d(N, linalg::Vector(N));
  for (std::size_t k = 0; k < N; ++k) {
    if (k > 0) d[k - 1][k] = GaussRat(static_cast<long>(k));
    if (k + 1 < N) d[k + 1][k] = GaussRat::frac(-1, 2);
  }
  return d;
}

namespace {

MatrixXcd to_eigen(const linalg::Matrix& m) {
  MatrixXcd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t j = 0; j < m.size(); ++j)
    for (std::size_t k = 0; k < m[j].size(); ++k) out(j, k) = m[j][k].to_complex();
  return out;
}

}  // namespace

MatrixRep schrodinger_matrices(std::size_t N, double hbar) {
  if (N < 4) throw TruncationTooSmall("Schrodinger truncation needs N >= 4, got " + std::to_string(N));
  MatrixRep rep;
  rep.basis = "hermite-unnormalized";
  rep.dim = N;
  rep.reach = 1;
  rep.generators["Q"] = to_eigen(hermite_position_exact(N));
  rep.generators["P"] = cd(0, -hbar) * to_eigen(hermite_derivative_exact(N));
  return rep;
}

MatrixRep metaplectic_matrices(std::size_t N, double hbar) {
  if (N < 6) throw TruncationTooSmall("metaplectic truncation needs N >= 6, got " + std::to_string(N));
  // Built on a larger Schrodinger pair so that the quadratic images are
  // exact products, then cut back to N.
  MatrixRep big = schrodinger_matrices(N + 1, hbar);
  const MatrixXcd& q = big.generators["Q"];
  const MatrixXcd& p = big.generators["P"];
  MatrixRep rep;
  rep.basis = "hermite-unnormalized";
  rep.dim = N;
  rep.reach = 2;
  auto cut = [N](const MatrixXcd& m) -> MatrixXcd { return m.topLeftCorner(N, N); };
  rep.generators["Q"] = cut(q);
  rep.generators["P"] = cut(p);
  rep.generators["qq"] = cut(q * q);
  rep.generators["pp"] = cut(p * p);
  rep.generators["qp"] = cut(0.5 * (q * p + p * q));
  return rep;
}

MatrixRep spin_matrices(unsigned two_j, double hbar) {
  const std::size_t dim = two_j + 1;
  const double j = two_j / 2.0;
  MatrixXcd s3 = MatrixXcd::Zero(dim, dim), up = MatrixXcd::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    double m = j - static_cast<double>(r);
    s3(r, r) = hbar * m;
    // S+ |m> = hbar sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at row r-1
    if (r > 0) up(r - 1, r) = hbar * std::sqrt(j * (j + 1) - m * (m + 1));
  }
  MatrixXcd down = up.adjoint();
  MatrixRep rep;
  rep.basis = "spin-m";
  rep.dim = dim;
  rep.generators["S1"] = 0.5 * (up + down);
  rep.generators["S2"] = cd(0, -0.5) * (up - down);
  rep.generators["S3"] = s3;
  return rep;
}

MatrixRep e2_fourier_matrices(std::size_t N, double nu, double hbar) {
  if (N < 3) throw TruncationTooSmall("Fourier truncation needs N >= 3, got " + std::to_string(N));
  const std::size_t dim = 2 * N + 1;
  MatrixXcd l = MatrixXcd::Zero(dim, dim), shift = MatrixXcd::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double n = static_cast<double>(k) - static_cast<double>(N);
    l(k, k) = hbar * (n + nu);
    if (k + 1 < dim) shift(k + 1, k) = 1.0;  // e^{i theta} raises n
  }
  MatrixXcd back = shift.adjoint();
  MatrixRep rep;
  rep.basis = "fourier-n";
  rep.dim = dim;
  rep.first_label = -static_cast<int>(N);
  rep.reach = 1;
  rep.generators["L"] = l;
  rep.generators["C"] = 0.5 * (shift + back);
  rep.generators["S"] = cd(0, -0.5) * (shift - back);
  return rep;
}

MatrixXcd evaluate_oppoly(const MatrixRep& rep, const OpPoly& x, const Bindings& bindings) {
  MatrixXcd out = MatrixXcd::Zero(rep.dim, rep.dim);
  if (x.is_zero()) return out;
  const auto& alg = *x.algebra();
  for (const auto& [w, c] : x.terms()) {
    MatrixXcd term = MatrixXcd::Identity(rep.dim, rep.dim);
    for (auto g : w) term = term * rep.at(alg.generators[g]);
    out += c.evaluate(bindings) * term;
  }
  return out;
}

namespace {

using linalg::Matrix;
using linalg::Vector;

/// Appends the equations (A E - E A)[j][k] = rhs[j][k] for j, k < limit, with
/// E flattened row-major into N*N unknowns.
void commutator_equations(const Matrix& a, const Matrix& rhs_const, std::size_t N,
                          std::size_t limit, Matrix& rows, Vector& b) {
  for (std::size_t j = 0; j < limit; ++j) {
    for (std::size_t k = 0; k < limit; ++k) {
      Vector row(N * N);
      for (std::size_t m = 0; m < N; ++m) {
        if (!a[j][m].is_zero()) row[m * N + k] += a[j][m];
        if (!a[m][k].is_zero()) row[j * N + m] -= a[m][k];
      }
      rows.push_back(std::move(row));
      b.push_back(rhs_const[j][k]);
    }
  }
}

Matrix zero_matrix(std::size_t N) { return Matrix(N, Vector(N)); }

}  // namespace

QuadraticElementReport solve_quadratic_element(std::size_t N) {
  if (N < 8) throw TruncationTooSmall("quadratic element solve needs N >= 8, got " + std::to_string(N));
  QuadraticElementReport rep;
  rep.N = N;
  rep.interior = N - 1;
  const Matrix x = hermite_position_exact(N);
  const Matrix d = hermite_derivative_exact(N);

  // [Q(p), E] = -2 i hbar Q(q) with Q(p) = -i hbar d/dq reads [d/dq, E] = 2 Q(q).
  Matrix two_x = zero_matrix(N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) two_x[j][k] = GaussRat(2) * x[j][k];

  Matrix rows;
  Vector b;
  commutator_equations(x, zero_matrix(N), N, N - 1, rows, b);
  commutator_equations(d, two_x, N, N - 1, rows, b);

  auto sol = linalg::solve(rows, b, N * N);
  if (!sol) throw SingularSystem("commutator constraints on the quadratic element are inconsistent");

  rep.E = zero_matrix(N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) rep.E[j][k] = sol->particular[j * N + k];
  rep.kernel_dim = sol->kernel.size();

  const std::size_t I = rep.interior;
  rep.kernel_scalar_on_interior = true;
  for (const auto& v : sol->kernel) {
    const GaussRat& c = v[0];
    for (std::size_t j = 0; j < I; ++j)
      for (std::size_t k = 0; k < I; ++k)
        if (v[j * N + k] != (j == k ? c : GaussRat())) rep.kernel_scalar_on_interior = false;
  }

  const auto& E = rep.E;
  rep.upper_band = rep.lower_band = rep.diagonal = rep.off_band_zero = true;
  for (std::size_t k = 0; k < I; ++k) {
    if (k + 2 < I && E[k + 2][k] != GaussRat::frac(1, 4)) rep.upper_band = false;
    if (k >= 2 && E[k - 2][k] != GaussRat(static_cast<long>(k * (k - 1)))) rep.lower_band = false;
    if (E[k][k] - E[0][0] != GaussRat(static_cast<long>(k))) rep.diagonal = false;
    for (std::size_t j = 0; j < I; ++j)
      if (j != k && j != k + 2 && j + 2 != k && !E[j][k].is_zero()) rep.off_band_zero = false;
  }
  for (std::size_t k = 0; k < I; ++k) {
    double err = std::abs(E[k][k].to_complex().real() - E[0][0].to_complex().real() - static_cast<double>(k));
    if (k + 2 < I) err = std::max(err, std::abs(E[k + 2][k].to_complex().real() - 0.25));
    if (k >= 2) err = std::max(err, std::abs(E[k - 2][k].to_complex().real() - static_cast<double>(k * (k - 1))));
    rep.max_band_error = std::max(rep.max_band_error, err);
  }
  rep.epsilon = E[0][0] - GaussRat::frac(1, 2);

  // Closure: [Q(qp), E] = -2 i hbar E with Q(qp) = -i hbar (q d/dq + 1/2),
  // i.e. [q d/dq + 1/2, E] - 2 E = 0, imposed where both sides are exact.
  Matrix m = zero_matrix(N);
  for (std::size_t k = 0; k < N; ++k) {
    if (k >= 2) m[k - 2][k] = GaussRat(static_cast<long>(k * (k - 1)));
    if (k + 2 < N) m[k + 2][k] = GaussRat::frac(-1, 4);
  }
  Matrix closure_rows = rows;
  Vector closure_b = b;
  for (std::size_t j = 0; j + 2 < N; ++j) {
    for (std::size_t k = 0; k + 2 < N; ++k) {
      Vector row(N * N);
      for (std::size_t t = 0; t < N; ++t) {
        if (!m[j][t].is_zero()) row[t * N + k] += m[j][t];
        if (!m[t][k].is_zero()) row[j * N + t] -= m[t][k];
      }
      row[j * N + k] -= GaussRat(2);
      closure_rows.push_back(std::move(row));
      closure_b.push_back(GaussRat());
    }
  }
  auto closed = linalg::solve(closure_rows, closure_b, N * N);
  if (!closed) throw SingularSystem("closure constraint is inconsistent with the commutator constraints");
  rep.forced_epsilon = closed->particular[0] - GaussRat::frac(1, 2);
  rep.closure_unique = true;
  for (const auto& v : closed->kernel)
    for (std::size_t j = 0; j < I; ++j)
      for (std::size_t k = 0; k < I; ++k)
        if (!v[j * N + k].is_zero()) rep.closure_unique = false;
  return rep;
}

Eigen::MatrixXcd QuadraticElementReport::matrix() const { return to_eigen(E); }

}  // namespace obstructo
