#include "obstructo/grid.hpp"

#include <cmath>
#include <numbers>

#include "obstructo/error.hpp"

namespace obstructo {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace {

void check_size(std::size_t M) {
  if (M < 64 || M % 8 != 0)
    throw GridTooSmall("grid size must be a multiple of 8 and at least 64, got " + std::to_string(M));
}

}  // namespace

TorusGrid::TorusGrid(std::size_t M, double hbar) : M_(M), h_(1.0 / static_cast<double>(M)), hbar_(hbar) {
  check_size(M);
}

Field TorusGrid::sample(const std::function<cd(double, double)>& g) const {
  Field out(M_ * M_);
  for (std::size_t ix = 0; ix < M_; ++ix)
    for (std::size_t iy = 0; iy < M_; ++iy) out(ix * M_ + iy) = g(x(ix), y(iy));
  return out;
}

Field TorusGrid::zak_inverse(const std::function<double(double)>& psi, int terms) const {
  return sample([&](double xx, double yy) {
    cd s = 0.0;
    for (int m = -terms; m <= terms; ++m) s += psi(xx + m) * std::exp(cd(0, -kTwoPi * m * yy));
    return s;
  });
}

Field TorusGrid::dx(const Field& phi) const {
  Field out(M_ * M_);
  for (std::size_t ix = 0; ix < M_; ++ix) {
    for (std::size_t iy = 0; iy < M_; ++iy) {
      cd twist = std::exp(cd(0, kTwoPi * y(iy)));
      cd right = ix + 1 < M_ ? phi((ix + 1) * M_ + iy) : twist * phi(iy);
      cd left = ix > 0 ? phi((ix - 1) * M_ + iy) : phi((M_ - 1) * M_ + iy) / twist;
      out(ix * M_ + iy) = (right - left) / (2.0 * h_);
    }
  }
  return out;
}

Field TorusGrid::dy(const Field& phi) const {
  Field out(M_ * M_);
  for (std::size_t ix = 0; ix < M_; ++ix) {
    for (std::size_t iy = 0; iy < M_; ++iy) {
      cd up = phi(ix * M_ + (iy + 1) % M_);
      cd down = phi(ix * M_ + (iy + M_ - 1) % M_);
      out(ix * M_ + iy) = (up - down) / (2.0 * h_);
    }
  }
  return out;
}

Field TorusGrid::apply(const GridObservable& f, const Field& phi) const {
  Field ddx = dx(phi), ddy = dy(phi);
  Field out(M_ * M_);
  const cd ih(0, hbar_);
  for (std::size_t ix = 0; ix < M_; ++ix) {
    for (std::size_t iy = 0; iy < M_; ++iy) {
      const std::size_t k = ix * M_ + iy;
      double xx = x(ix), yy = y(iy);
      double fx = f.fx(xx, yy), fy = f.fy(xx, yy);
      out(k) = -ih * fx * ddy(k) - xx * fx * phi(k) + ih * fy * ddx(k) + f.f(xx, yy) * phi(k);
    }
  }
  return out;
}

double TorusGrid::interior_sup(const Field& v) const {
  double s = 0.0;
  for (std::size_t ix = 1; ix + 1 < M_; ++ix)
    for (std::size_t iy = 0; iy < M_; ++iy) s = std::max(s, std::abs(v(ix * M_ + iy)));
  return s;
}

LineGrid::LineGrid(std::size_t M, double hbar) : M_(M), h_(8.0 / static_cast<double>(M)), hbar_(hbar) {
  check_size(M);
}

Field LineGrid::sample(const std::function<cd(double)>& g) const {
  Field out(M_);
  for (std::size_t k = 0; k < M_; ++k) out(k) = g(x(k));
  return out;
}

Field LineGrid::derivative(const Field& v) const {
  Field out(M_);
  for (std::size_t k = 0; k < M_; ++k) {
    cd right = k + 1 < M_ ? v(k + 1) : cd(0);
    cd left = k > 0 ? v(k - 1) : cd(0);
    out(k) = (right - left) / (2.0 * h_);
  }
  return out;
}

Field LineGrid::shift(const Field& v, long steps) const {
  Field out = Field::Zero(M_);
  for (std::size_t k = 0; k < M_; ++k) {
    long src = static_cast<long>(k) + steps;
    if (src >= 0 && src < static_cast<long>(M_)) out(k) = v(src);
  }
  return out;
}

Field LineGrid::a(int sign, const Field& v) const {
  Field out(M_);
  for (std::size_t k = 0; k < M_; ++k) {
    double xx = x(k);
    out(k) = std::exp(cd(0, sign * kTwoPi * xx)) * cd(1.0, -sign * kTwoPi * xx) * v(k);
  }
  return out;
}

Field LineGrid::b(int sign, const Field& v) const {
  const long unit = static_cast<long>(M_ / 8);
  Field shifted = shift(v, sign * unit);
  return shifted - (sign * kTwoPi * hbar_) * derivative(shifted);
}

double LineGrid::central_sup(const Field& v) const {
  double s = 0.0;
  for (std::size_t k = 0; k < M_; ++k)
    if (std::abs(x(k)) <= 2.0) s = std::max(s, std::abs(v(k)));
  return s;
}

}  // namespace obstructo
