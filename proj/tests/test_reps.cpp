#include <doctest.h>

#include <cmath>

#include "obstructo/error.hpp"
#include "obstructo/reps.hpp"

using namespace obstructo;
using cd = std::complex<double>;

namespace {

/// phi_k(x) = H_k(x) exp(-x^2/2) with physicists' Hermite polynomials.
std::vector<double> hermite_functions(double x, std::size_t n) {
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2 * x;
  for (std::size_t k = 1; k < n; ++k) h[k + 1] = 2 * x * h[k] - 2 * static_cast<double>(k) * h[k - 1];
  for (auto& v : h) v *= std::exp(-x * x / 2);
  return h;
}

}  // namespace

TEST_CASE("Hermite matrices against the Hermite functions") {
  const std::size_t N = 10;
  auto X = hermite_position_exact(N);
  auto D = hermite_derivative_exact(N);
  for (double x : {-1.3, -0.2, 0.4, 1.7}) {
    auto phi = hermite_functions(x, N);
    const double h = 1e-5;
    auto plus = hermite_functions(x + h, N), minus = hermite_functions(x - h, N);
    for (std::size_t k = 0; k + 1 < N; ++k) {
      double xphi = 0, dphi = 0;
      for (std::size_t j = 0; j < N; ++j) {
        xphi += X[j][k].to_complex().real() * phi[j];
        dphi += D[j][k].to_complex().real() * phi[j];
      }
      double scale = 1 + std::abs(phi[k + 1]) + std::abs(phi[k]) * static_cast<double>(k);
      CHECK(std::abs(xphi - x * phi[k]) < 1e-9 * scale);
      CHECK(std::abs(dphi - (plus[k] - minus[k]) / (2 * h)) < 1e-5 * scale);
    }
  }
}

TEST_CASE("Schrodinger pair obeys the canonical relation inside the truncation") {
  auto rep = schrodinger_matrices(12, 0.5);
  Eigen::MatrixXcd c = rep.at("Q") * rep.at("P") - rep.at("P") * rep.at("Q");
  for (auto k : rep.interior(2)) CHECK(std::abs(c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) - cd(0, 0.5)) < 1e-12);
  CHECK_THROWS_AS(schrodinger_matrices(3), TruncationTooSmall);
  CHECK_THROWS_AS(rep.at("S1"), UnassignedGenerator);
}

TEST_CASE("metaplectic images are products of the Schrodinger pair") {
  auto rep = metaplectic_matrices(10, 1.0);
  Eigen::MatrixXcd q = rep.at("Q"), p = rep.at("P");
  for (auto k : rep.interior(2)) {
    auto col = static_cast<Eigen::Index>(k);
    CHECK((rep.at("qq").col(col) - (q * q).col(col)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rep.at("qp").col(col) - (0.5 * (q * p + p * q)).col(col)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("spin matrices") {
  for (unsigned two_j : {1u, 2u, 3u, 4u, 5u}) {
    const double hbar = 0.8, j = two_j / 2.0;
    auto rep = spin_matrices(two_j, hbar);
    const auto &s1 = rep.at("S1"), &s2 = rep.at("S2"), &s3 = rep.at("S3");
    CHECK(rep.dim == two_j + 1);
    CHECK((s1 * s2 - s2 * s1 - cd(0, hbar) * s3).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s2 * s3 - s3 * s2 - cd(0, hbar) * s1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s3 * s1 - s1 * s3 - cd(0, hbar) * s2).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::MatrixXcd cas = s1 * s1 + s2 * s2 + s3 * s3;
    CHECK((cas - hbar * hbar * j * (j + 1) * Eigen::MatrixXcd::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() < 1e-12);
    for (const auto* m : {&s1, &s2, &s3}) CHECK((*m - m->adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(s3(0, 0) - cd(hbar * j)) < 1e-15);
  }
}

TEST_CASE("Fourier matrices for e(2)") {
  auto rep = e2_fourier_matrices(8, 0.25, 1.0);
  const auto &L = rep.at("L"), &C = rep.at("C"), &S = rep.at("S");
  CHECK(rep.first_label == -8);
  CHECK(std::abs(L(0, 0) - cd(-7.75)) < 1e-15);
  Eigen::MatrixXcd lc = L * C - C * L - cd(0, 1) * S, ls = L * S - S * L + cd(0, 1) * C;
  CHECK(lc.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ls.cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXcd one = C * C + S * S;
  for (auto k : rep.interior(2)) {
    auto col = static_cast<Eigen::Index>(k);
    CHECK((one.col(col) - Eigen::MatrixXcd::Identity(rep.dim, rep.dim).col(col)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quadratic element of the Hermite pair") {
  auto qe = solve_quadratic_element(12);
  CHECK(qe.upper_band);
  CHECK(qe.lower_band);
  CHECK(qe.diagonal);
  CHECK(qe.off_band_zero);
  CHECK(qe.max_band_error < 1e-10);
  CHECK(qe.kernel_scalar_on_interior);
  CHECK(qe.closure_unique);
  CHECK(qe.forced_epsilon.is_zero());
  // E - X^2 is a multiple of the identity on the interior
  auto X = hermite_position_exact(12);
  const auto& E = qe.E;
  for (std::size_t j = 0; j < qe.interior; ++j) {
    for (std::size_t k = 0; k < qe.interior; ++k) {
      GaussRat x2;
      for (std::size_t m = 0; m < 12; ++m) x2 += X[j][m] * X[m][k];
      CHECK(E[j][k] - x2 == (j == k ? qe.epsilon : GaussRat()));
    }
  }
  CHECK_THROWS_AS(solve_quadratic_element(7), TruncationTooSmall);
}
