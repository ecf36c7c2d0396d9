#include "lerw/rectangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lerw/harmonic.hpp"

namespace lerw {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(int n, int m, int k, int kp) {
  if (n < 3 || m < 3) throw Error(ErrorCode::SizeTooSmall, "rectangle needs n, m >= 3");
  if (10 * m < n || m > 10 * n) throw Error(ErrorCode::AspectOutOfRange, "need n/10 <= m <= 10n");
  if (k < 1 || k > m - 1 || kp < 1 || kp > m - 1) throw Error(ErrorCode::InvalidArgument, "need 1 <= k, k' <= m-1");
}

// Sums terms(l) for l = 1, 2, ... until a term drops below 1e-16 of the partial sum, l <= 4m.
template <class Term>
double series(int m, Term term) {
  double sum = 0.0;
  for (int l = 1; l <= 4 * m; ++l) {
    const double t = term(l);
    sum += t;
    if (l >= m && std::abs(t) < 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

double discrete_fourier(int n, int m, int k, int kp, int j) {
  double sum = 0.0;
  for (int l = 1; l < m; ++l) {
    const double a = std::acosh(2.0 - std::cos(l * kPi / m));
    sum += std::sinh(a * j) / std::sinh(a * n) * std::sin(l * kPi * k / m) * std::sin(l * kPi * kp / m);
  }
  return 2.0 * sum / m;
}

double discrete_solve(int n, int m, int k, int kp) {
  const LatticeDomain A = rect_domain(n, m);
  return 0.25 * GreenTable(A)({1, k}, {n - 1, kp});
}

}  // namespace

double alpha_l(int n, int m, int l) {
  if (n < 1 || m < 1 || l < 1) throw Error(ErrorCode::InvalidArgument, "need positive n, m, l");
  return n / kPi * std::acosh(2.0 - std::cos(l * kPi / m));
}

double rectangle_kernel(int n, int m, int k, int kp, KernelMethod method, KernelSide side) {
  check_args(n, m, k, kp);
  if (side == KernelSide::Continuum) {
    if (method != KernelMethod::Fourier) throw Error(ErrorCode::InvalidArgument, "continuum kernel is a series");
    return 2.0 / m * series(m, [&](int l) {
             const double b = l * kPi / m;
             return std::sinh(b) / std::sinh(b * n) * std::sin(b * k) * std::sin(b * kp);
           });
  }
  return method == KernelMethod::Fourier ? discrete_fourier(n, m, k, kp, 1) : discrete_solve(n, m, k, kp);
}

double rectangle_boundary_kernel(int n, int m, int k, int kp, KernelMethod method, KernelSide side) {
  check_args(n, m, k, kp);
  if (side == KernelSide::Continuum) {
    if (method != KernelMethod::Fourier) throw Error(ErrorCode::InvalidArgument, "continuum kernel is a series");
    return 2.0 / m * series(m, [&](int l) {
             const double b = l * kPi / m;
             return b / std::sinh(b * n) * std::sin(b * k) * std::sin(b * kp);
           });
  }
  return 0.25 * rectangle_kernel(n, m, k, kp, method, side);
}

RectangleComparison compare_rectangle_kernels(int n, int m) {
  check_args(n, m, 1, 1);
  const GreenTable green(rect_domain(n, m));
  RectangleComparison out{n, m};
  for (int k = 1; k < m; ++k) {
    for (int kp = 1; kp < m; ++kp) {
      const double fourier = rectangle_boundary_kernel(n, m, k, kp, KernelMethod::Fourier, KernelSide::Discrete);
      const double solved = green({1, k}, {n - 1, kp}) / 16.0;
      const double continuum = rectangle_boundary_kernel(n, m, k, kp, KernelMethod::Fourier, KernelSide::Continuum);
      const double d = std::min(k, m - k) * std::min(kp, m - kp);
      out.method_gap = std::max(out.method_gap, std::abs(fourier - solved) / std::max(std::abs(fourier), std::abs(solved)));
      out.error_constant = std::max(out.error_constant, std::abs(fourier - 0.25 * continuum) * std::pow(n, 5) / d);
    }
  }
  return out;
}

}  // namespace lerw
