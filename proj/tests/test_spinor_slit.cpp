#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lerw/harmonic.hpp"
#include "lerw/rectangle.hpp"
#include "lerw/slit.hpp"
#include "lerw/spinor.hpp"
#include "lerw/square_map.hpp"

using namespace lerw;
using std::numbers::pi;

TEST(LambdaDisk, ZeroOnAlpha) {
  for (const double theta : {0.3, 1.2, 2.5}) {
    const std::complex<double> toward_minus_a = -std::polar(1.0, 2 * theta);
    for (const double r : {0.1, 0.5, 0.9}) {
      bool on_alpha = false;
      EXPECT_EQ(lambda_disk(r * toward_minus_a, theta, &on_alpha), 0.0);
      EXPECT_TRUE(on_alpha);
    }
  }
}

TEST(LambdaDisk, BoundedByOne) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const std::complex<double> z(u(gen), u(gen));
    if (std::abs(z) >= 0.999) continue;
    const double theta = (u(gen) + 1.0) * pi / 2;
    EXPECT_LE(std::abs(lambda_disk(z, theta)), 1.0 + 1e-12);
  }
}

TEST(LambdaDisk, BehaviourNearOrigin) {
  for (const double theta : {0.4, pi / 2, 2.2}) {
    double previous = 1e300;
    for (const double eps : {1e-2, 1e-3, 1e-4}) {
      const double ratio = lambda_disk({-eps, 0.0}, theta) / (2 * std::sqrt(eps) * std::sin(theta));
      const double err = std::abs(ratio - 1.0);
      EXPECT_LE(err, 2 * std::sqrt(eps)) << theta << " " << eps;
      EXPECT_LT(err, previous);
      previous = err;
    }
  }
}

TEST(Spinor, BoundedOnSquare8) {
  const LatticeDomain A = square_domain(8);
  const SpinorField field(A, build_branch_cut(A));
  const auto edges = boundary_edges(A);
  for (std::size_t k = 0; k < edges.size(); k += 5) {
    for (const Point z : A.vertices()) EXPECT_LE(std::abs(field(z, edges[k])), 1.0 + 1e-12);
  }
  EXPECT_NEAR(spinor(A, build_branch_cut(A), {0, 0}, edges[3]), field({0, 0}, edges[3]), 1e-15);
}

TEST(Spinor, FirstExitDecomposition) {
  const auto edges = boundary_edges(square_domain(8));
  for (const std::size_t k : {0u, 9u, 17u, 30u, 44u, 63u}) {
    const Lemma51Report r = lemma51_check(8, 4, edges[k]);
    EXPECT_TRUE(r.pass) << r.lhs << " " << r.rhs;
    EXPECT_NEAR(r.lhs, r.rhs, 1e-9 * std::abs(r.lhs) + 1e-15);
    EXPECT_LE(r.max_slit_term, 1e-13);
  }
}

TEST(Spinor, RegionParity) {
  const LatticeDomain A = square_domain(8);
  const EdgeSignTable t = build_branch_cut(A);
  std::vector<Point> region;
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      if (!(y == 0 && x >= 1)) region.push_back({x, y});
    }
  }
  EXPECT_EQ(parity_between(region, t, {0, 0}, {0, 3}), 1);
  EXPECT_EQ(parity_between(region, t, {0, 0}, {2, 3}), 1);
  EXPECT_EQ(parity_between(region, t, {0, 0}, {-2, -3}), 1);
  EXPECT_EQ(parity_between(region, t, {0, 0}, {2, -3}), -1);
}

TEST(Slit, ProfileNormalisedAndSymmetric) {
  for (const int n : {4, 7}) {
    const EscapeProfile p = slit_escape_profile(n);
    const auto h = p.normalized();
    double sum = 0.0;
    for (const double v : h) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      const Point m = p.edges[i].midpoint2();
      for (std::size_t j = 0; j < p.edges.size(); ++j) {
        if (p.edges[j].midpoint2() == Point{m.x, -m.y}) EXPECT_NEAR(p.values[i], p.values[j], 1e-15);
      }
    }
    // the slit tip (n-1, 0) sits on the outer side, so the right-mid edge is missing
    EXPECT_EQ(p.edges.size(), static_cast<std::size_t>(4 * (2 * n - 1) - 1));
    EXPECT_GT(p.total, 0.0);
  }
  EXPECT_THROW(slit_escape_profile(1), Error);
}

TEST(Rectangle, FourierMatchesSolve) {
  const RectangleComparison r = compare_rectangle_kernels(10, 14);
  EXPECT_LE(r.method_gap, 1e-10);
  EXPECT_NEAR(rectangle_kernel(10, 14, 3, 5, KernelMethod::Fourier, KernelSide::Discrete),
              rectangle_kernel(10, 14, 3, 5, KernelMethod::Solve, KernelSide::Discrete), 1e-12);
}

TEST(Rectangle, AlphaApproachesLinear) {
  // leading term of the relative error is (l pi / m)^2 / 12
  for (const int l : {1, 4, 10}) {
    double previous = 0.0;
    for (const int n : {20, 40, 80}) {
      const double err = std::abs(alpha_l(n, n, l) / l - 1.0);
      EXPECT_LE(err, double(l * l) / double(n * n));
      if (previous > 0.0) EXPECT_GT(previous / err, 3.3);
      previous = err;
    }
    EXPECT_NEAR(previous * 80.0 * 80.0 / (l * l), pi * pi / 12.0, 0.05);
  }
}

TEST(Rectangle, ContinuumSeriesLimits) {
  // far from the corners the two kernels agree to leading order
  const double disc = rectangle_boundary_kernel(40, 40, 20, 20, KernelMethod::Fourier, KernelSide::Discrete);
  const double cont = rectangle_boundary_kernel(40, 40, 20, 20, KernelMethod::Fourier, KernelSide::Continuum);
  EXPECT_NEAR(disc / (0.25 * cont), 1.0, 0.01);
}

TEST(Rectangle, Errors) {
  EXPECT_THROW(rectangle_kernel(100, 5, 1, 1, KernelMethod::Fourier, KernelSide::Discrete), Error);
  EXPECT_THROW(rectangle_kernel(10, 14, 0, 1, KernelMethod::Fourier, KernelSide::Discrete), Error);
  EXPECT_THROW(rectangle_kernel(10, 14, 1, 1, KernelMethod::Solve, KernelSide::Continuum), Error);
}

TEST(SquareMap, SideHeightMatchesEllipticIntegral) {
  // substituting sin t = sqrt 2 sin s turns the side integral into F(t | 1/sqrt 2) / sqrt 2
  const SquareMap map(8);
  for (const double phi : {0.05, 0.3, 0.6, 0.78}) {
    const double t = std::asin(std::sqrt(2.0) * std::sin(phi));
    const double oracle = map.scale() / 2.0 * std::ellint_1(1.0 / std::sqrt(2.0), t);
    EXPECT_NEAR(map.side_height(phi), oracle, 1e-10 * oracle);
  }
  EXPECT_NEAR(map.side_height(pi / 4), 8.0, 1e-9);
}

TEST(SquareMap, ConformalRadiusRatio) {
  const double rho = 1.0 / std::comp_ellint_1(1.0 / std::sqrt(2.0));
  for (const int n : {8, 16, 32}) EXPECT_NEAR(conformal_radius_square(n) / (2.0 * n), rho, 1e-8);
  EXPECT_NEAR(square_radius_ratio(), rho, 1e-12);
}

TEST(SquareMap, RotationAddsQuarterPi) {
  const int n = 6;
  const auto edges = boundary_edges(square_domain(n));
  for (const BoundaryEdge& b : edges) {
    const double d = std::fmod(square_theta(n, rotate_about_w0(b)) - square_theta(n, b) + 2 * pi, pi);
    EXPECT_NEAR(d, pi / 4, 1e-9);
  }
  EXPECT_NEAR(square_theta(n, named_square_edge(n, "left-mid")) - square_theta(n, named_square_edge(n, "right-mid")),
              pi / 2, 1e-9);
}

TEST(SquareMap, MapRoundTrip) {
  const SquareMap map(5);
  for (const std::complex<double> w : {std::complex<double>(0.3, -0.2), {-0.5, 0.5}, {0.0, 0.9}}) {
    EXPECT_LT(std::abs(map.to_disk(map.from_disk(w)) - w), 1e-10);
  }
  EXPECT_LT(std::abs(map.from_disk(0.0) - std::complex<double>(0.5, -0.5)), 1e-15);
}

TEST(SquareMap, HarmonicMeasureOfBoundaryArcs) {
  // discrete harmonic measure from the four vertices around w0 on a fine square
  const int n = 64;
  const LatticeDomain A = square_domain(n);
  const SquareMap map(n);
  const GreenTable G(A);
  const double x_side = n + 0.5;
  for (const int top : {n / 4, n / 2, n - 1}) {
    double discrete = 0.0;
    for (int y = 0; y <= top; ++y) {
      const BoundaryEdge b{{n, y}, {n + 1, y}};
      for (const Point z : {Point{0, 0}, Point{1, 0}, Point{0, -1}, Point{1, -1}}) discrete += 0.0625 * G(z, b.inner);
    }
    const double arc = map.boundary_angle(x_side, top + 0.5) - map.boundary_angle(x_side, -0.5);
    const double continuum = std::fmod(arc + 2 * pi, 2 * pi) / (2 * pi);
    EXPECT_NEAR(discrete, continuum, 1e-3) << top;
  }
}
