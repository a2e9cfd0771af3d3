#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>

namespace obstructo {

using Field = Eigen::VectorXcd;

/// Observable on the torus given by samples of f and its partial derivatives.
struct GridObservable {
  std::string name;
  std::function<double(double, double)> f, fx, fy;
};

/// M x M grid on [0,1)^2 for sections phi(x + m, y + n) = e^{2 pi i m y} phi(x, y).
/// d/dx wraps with the twist factor, d/dy wraps periodically. Both use
/// second-order centered differences. Index layout: ix * M + iy.
class TorusGrid {
 public:
  TorusGrid(std::size_t M, double hbar);

  std::size_t size() const { return M_; }
  double spacing() const { return h_; }
  double hbar() const { return hbar_; }
  double x(std::size_t ix) const { return static_cast<double>(ix) * h_; }
  double y(std::size_t iy) const { return static_cast<double>(iy) * h_; }

  Field sample(const std::function<std::complex<double>(double, double)>& g) const;
  /// Z^{-1} psi = sum_m psi(x + m) e^{-2 pi i m y}.
  Field zak_inverse(const std::function<double(double)>& psi, int terms = 12) const;

  Field dx(const Field& phi) const;
  Field dy(const Field& phi) const;

  /// Q(f) = -i hbar [f_x (d/dy - (i/hbar) x) - f_y d/dx] + f.
  Field apply(const GridObservable& f, const Field& phi) const;

  /// Sup norm over rows with 1 <= ix <= M - 2.
  double interior_sup(const Field& v) const;

 private:
  std::size_t M_;
  double h_;
  double hbar_;
};

/// Line grid on [-4, 4) with zero extension, for the Zak-side operators
/// A+- psi = e^{+-2 pi i x} (1 -+ 2 pi i x) psi and
/// B+- psi = (1 -+ 2 pi hbar d/dx) psi(x +- 1).
class LineGrid {
 public:
  LineGrid(std::size_t M, double hbar);

  std::size_t size() const { return M_; }
  double spacing() const { return h_; }
  double x(std::size_t k) const { return -4.0 + static_cast<double>(k) * h_; }

  Field sample(const std::function<std::complex<double>(double)>& g) const;
  Field derivative(const Field& v) const;
  /// v(x + steps * h), zero outside the grid.
  Field shift(const Field& v, long steps) const;

  Field a(int sign, const Field& v) const;
  Field b(int sign, const Field& v) const;

  /// Sup norm over |x| <= 2.
  double central_sup(const Field& v) const;

 private:
  std::size_t M_;
  double h_;
  double hbar_;
};

}  // namespace obstructo
