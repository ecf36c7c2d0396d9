#include "lerw/square_map.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace lerw {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = std::numbers::pi;

// integral_0^1 dt / sqrt(1 + t^4).
double quarter_integral() {
  static const double value = [] {
    double err = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate([](double t) { return 1.0 / std::sqrt(1.0 + t * t * t * t); },
                                                          0.0, 1.0, 15, 1e-15, &err);
    if (!(err < 1e-13)) throw Error(ErrorCode::QuadratureFailure, "side integral did not converge");
    return v;
  }();
  return value;
}

// integral_{pi/4 - u1^2}^{pi/4} (cos 2s)^{-1/2} ds with s = pi/4 - u^2, which removes the corner singularity.
double corner_integral(double u1) {
  if (u1 <= 0.0) return 0.0;
  auto f = [](double u) {
    if (u < 1e-4) return std::sqrt(2.0) * (1.0 + u * u * u * u / 3.0);
    return 2.0 * u / std::sqrt(std::sin(2.0 * u * u));
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err = 0.0;
  const double v = integrator.integrate(f, 0.0, u1, 1e-15, &err);
  if (!(err <= 1e-12 * std::max(1.0, std::abs(v)))) throw Error(ErrorCode::QuadratureFailure, "corner integral");
  return v;
}

}  // namespace

SquareMap::SquareMap(int n) : n_(n), scale_(0.0) {
  if (n < 1) throw Error(ErrorCode::SizeTooSmall, "square side parameter must be positive");
  scale_ = n / quarter_integral();
}

double SquareMap::side_height(double phi) const {
  const double sign = phi < 0.0 ? -1.0 : 1.0;
  phi = std::min(std::abs(phi), kPi / 4.0);
  static const double full = corner_integral(std::sqrt(kPi / 4.0));
  const double tail = corner_integral(std::sqrt(kPi / 4.0 - phi));
  return sign * scale_ / std::sqrt(2.0) * (full - tail);
}

double SquareMap::boundary_angle(double x, double y) const {
  // Coordinates relative to w0; rotate the point onto the right side.
  double px = x - 0.5;
  double py = y + 0.5;
  const double tol = 1e-9 * n_;
  int quarter = 0;
  while (!(std::abs(px - n_) < tol && std::abs(py) <= n_ + tol)) {
    if (++quarter == 4) throw Error(ErrorCode::OutOfDomain, "point is not on the square boundary");
    const double t = px;
    px = py;
    py = -t;
  }
  // Invert side_height by bisection; it is increasing on [-pi/4, pi/4].
  double lo = -kPi / 4.0, hi = kPi / 4.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (side_height(mid) < py) lo = mid;
    else hi = mid;
  }
  double phi = 0.5 * (lo + hi) + quarter * kPi / 2.0;
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

std::complex<double> SquareMap::from_disk(std::complex<double> w) const {
  if (std::abs(w) >= 1.0) throw Error(ErrorCode::OutOfDomain, "point outside the unit disk");
  auto integrand = [w](double s, bool imag) {
    const std::complex<double> t = s * w;
    const std::complex<double> v = w / std::sqrt(1.0 + t * t * t * t);
    return imag ? v.imag() : v.real();
  };
  double err = 0.0;
  const double re = gauss_kronrod<double, 61>::integrate([&](double s) { return integrand(s, false); }, 0.0, 1.0, 20,
                                                         1e-14, &err);
  const double im = gauss_kronrod<double, 61>::integrate([&](double s) { return integrand(s, true); }, 0.0, 1.0, 20,
                                                         1e-14, &err);
  return std::complex<double>(0.5, -0.5) + scale_ * std::complex<double>(re, im);
}

std::complex<double> SquareMap::to_disk(std::complex<double> z) const {
  std::complex<double> w = (z - std::complex<double>(0.5, -0.5)) / scale_;
  if (std::abs(w) >= 0.99) w *= 0.99 / std::abs(w);
  for (int it = 0; it < 100; ++it) {
    const std::complex<double> residual = from_disk(w) - z;
    const std::complex<double> deriv = scale_ / std::sqrt(1.0 + w * w * w * w);
    std::complex<double> step = residual / deriv;
    // Damp steps that would leave the disk.
    while (std::abs(w - step) >= 1.0) step *= 0.5;
    w -= step;
    if (std::abs(step) < 1e-14) return w;
  }
  throw Error(ErrorCode::QuadratureFailure, "inverse map did not converge");
}

double square_theta(int n, const BoundaryEdge& b) {
  const double phi = SquareMap(n).boundary_angle(b.midpoint_x(), b.midpoint_y());
  return std::fmod(phi / 2.0, kPi);
}

double conformal_radius_square(int n) { return SquareMap(n).conformal_radius(); }

double square_radius_ratio() { return 0.5 / quarter_integral(); }

}  // namespace lerw
