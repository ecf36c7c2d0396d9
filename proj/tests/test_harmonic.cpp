#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lerw/harmonic.hpp"
#include "lerw/rng.hpp"
#include "lerw/sampling.hpp"

using namespace lerw;

namespace {

const LatticeDomain& block() {
  static const LatticeDomain A = LatticeDomain::validate({{0, 0}, {1, 0}, {0, -1}, {1, -1}});
  return A;
}

// Sum over rooted closed walks of length 1..L of sign * 4^{-k} / k, by explicit depth-first enumeration.
double rooted_loop_sum(const LatticeDomain& A, const EdgeSignTable* signs, int L) {
  double total = 0.0;
  std::vector<int> counts;
  std::function<void(int, int, int, double)> dfs = [&](int root, int v, int len, double w) {
    if (len > 0 && v == root) total += w / len;
    if (len == L) return;
    for (int d = 0; d < 4; ++d) {
      const int u = A.neighbors(v)[static_cast<std::size_t>(d)];
      if (u >= 0) dfs(root, u, len + 1, w * 0.25 * (signs ? signs->sign(v, d) : 1));
    }
  };
  for (int i = 0; i < static_cast<int>(A.size()); ++i) dfs(i, i, 0, 1.0);
  return total;
}

}  // namespace

TEST(Green, TwoVertices) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}, {1, 0}});
  EXPECT_NEAR(green(A, nullptr, {0, 0}, {0, 0}), 16.0 / 15.0, 1e-15);
  EXPECT_NEAR(green(A, nullptr, {0, 0}, {1, 0}), 4.0 / 15.0, 1e-15);
  EXPECT_NEAR(std::exp(log_det_i_minus_p(A)), 15.0 / 16.0, 1e-15);
  const EdgeSignTable trivial = EdgeSignTable::trivial(A);
  EXPECT_NEAR(std::exp(log_det_i_minus_p(A, &trivial)), 15.0 / 16.0, 1e-15);
}

TEST(Green, SingleVertex) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}});
  EXPECT_DOUBLE_EQ(green(A, nullptr, {0, 0}, {0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(log_det_i_minus_p(A), 0.0);
  for (const BoundaryEdge& b : boundary_edges(A)) EXPECT_DOUBLE_EQ(interior_poisson(A, {0, 0}, b), 0.25);
  EXPECT_DOUBLE_EQ(loop_factor(std::vector<Point>{{0, 0}}, A), 1.0);
}

TEST(Green, OutOfDomain) {
  EXPECT_THROW(green(square_domain(2), nullptr, {0, 0}, {5, 5}), Error);
}

TEST(Green, DenseMatchesSparse) {
  const LatticeDomain A = square_domain(3);
  const EdgeSignTable signs = build_branch_cut(A);
  const std::vector<Point> deleted{{0, 0}, {1, 0}};
  double log_det = 0.0;
  const Eigen::MatrixXd G = dense_green(A, &signs, deleted, &log_det);
  const GreenTable table(A, &signs, deleted);
  EXPECT_NEAR(log_det, table.log_det(), 1e-12);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    for (int j = 0; j < static_cast<int>(A.size()); ++j) {
      EXPECT_NEAR(G(i, j), table(A.vertex(i), A.vertex(j)), 1e-13);
    }
  }
}

TEST(Green, LogGrowthOfDiagonal) {
  // slopes between doublings drift up towards 2/pi
  const double target = 2.0 / std::numbers::pi;
  double previous_gap = 1e300;
  double previous = green(square_domain(16), nullptr, {0, 0}, {0, 0});
  for (const int n : {32, 64, 128}) {
    const double g = green(square_domain(n), nullptr, {0, 0}, {0, 0});
    const double gap = std::abs((g - previous) / std::log(2.0) - target);
    EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
    previous = g;
  }
  EXPECT_LT(previous_gap, 0.01 * target);
}

TEST(Poisson, ExitCertaintyAndSymmetry) {
  const LatticeDomain A = square_domain(4);
  const auto edges = boundary_edges(A);
  for (const Point z : A.vertices()) {
    double sum = 0.0;
    for (const BoundaryEdge& b : edges) sum += interior_poisson(A, z, b);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  const GreenTable G(A);
  for (const BoundaryEdge& a : edges) {
    double sum = 0.0;
    for (const BoundaryEdge& b : edges) {
      const double h = G(a.inner, b.inner) / 16.0;
      EXPECT_NEAR(h, G(b.inner, a.inner) / 16.0, 1e-15);
      sum += h;
    }
    EXPECT_NEAR(sum, 0.25, 1e-12);
  }
  EXPECT_NEAR(boundary_poisson(A, edges[3], edges[17]), G(edges[3].inner, edges[17].inner) / 16.0, 1e-15);
}

TEST(Poisson, MatchesExitFrequency) {
  const LatticeDomain A = square_domain(4);
  const BoundaryEdge b = named_square_edge(4, "right-mid");
  const int samples = 1000000;
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    PhiloxStream rng(99, static_cast<std::uint64_t>(i));
    hits += sample_exit_edge(A, {0, 0}, rng) == b;
  }
  const double h = interior_poisson(A, {0, 0}, b);
  const double se = std::sqrt(h * (1 - h) / samples);
  EXPECT_LE(std::abs(hits / double(samples) - h), 4 * se);
}

TEST(SignedExit, ThreeVertexLine) {
  const LatticeDomain A = LatticeDomain::validate({{-1, 0}, {0, 0}, {1, 0}});
  const EdgeSignTable trivial = EdgeSignTable::trivial(A);
  const BoundaryEdge a{{0, 0}, {0, 1}};
  EXPECT_DOUBLE_EQ(signed_exit(A, trivial, {0, 0}, a), 0.25);
}

TEST(SignedExit, BoundedByPoisson) {
  const LatticeDomain A = square_domain(4);
  const SignedExit R(A, build_branch_cut(A));
  const GreenTable G(A);
  for (const BoundaryEdge& a : boundary_edges(A)) {
    for (const Point z : A.vertices()) {
      EXPECT_LE(std::abs(R(z, a)), 0.25 * G(z, a.inner) + 1e-15);
    }
  }
}

TEST(SignedExit, TruncatedPathSum) {
  // signed walks from 0 avoiding {0, 1} after the first step, summed by lengths up to L
  const LatticeDomain A = square_domain(2);
  const EdgeSignTable signs = build_branch_cut(A);
  const SignedExit R(A, signs);
  const int L = 400;
  const auto n = A.size();
  const int zero = A.index_of({0, 0});
  const int one = A.index_of({1, 0});
  for (const BoundaryEdge& a : boundary_edges(A)) {
    const int ia = A.index_of(a.inner);
    const double s = signs.sign(a.inner, a.outer);
    double total = ia == zero ? 0.25 * s : 0.0;
    std::vector<double> u(n, 0.0), next(n);
    for (int d = 0; d < 4; ++d) {
      const int y = A.neighbors(zero)[static_cast<std::size_t>(d)];
      if (y >= 0 && y != one) u[static_cast<std::size_t>(y)] += 0.25 * signs.sign(zero, d);
    }
    for (int len = 1; len <= L; ++len) {
      if (ia != zero && ia != one) total += 0.25 * s * u[static_cast<std::size_t>(ia)];
      std::fill(next.begin(), next.end(), 0.0);
      for (int x = 0; x < static_cast<int>(n); ++x) {
        if (x == zero || x == one || u[static_cast<std::size_t>(x)] == 0.0) continue;
        for (int d = 0; d < 4; ++d) {
          const int y = A.neighbors(x)[static_cast<std::size_t>(d)];
          if (y >= 0 && y != zero && y != one) {
            next[static_cast<std::size_t>(y)] += 0.25 * signs.sign(x, d) * u[static_cast<std::size_t>(x)];
          }
        }
      }
      u.swap(next);
    }
    EXPECT_NEAR(R({0, 0}, a), total, 1e-12);
  }
}

TEST(LoopMass, LogDetMatchesLoopEnumeration) {
  // -log det(I - P) = sum over rooted loops of 4^{-k} / k; spectral radius of P on the block is 1/2
  const LatticeDomain& A = block();
  const int L = 12;
  const double rho = 0.5;
  const double tail = A.size() * std::pow(rho, L + 1) / ((L + 1) * (1 - rho));
  EXPECT_NEAR(-log_det_i_minus_p(A), rooted_loop_sum(A, nullptr, L), tail);
}

TEST(LoopMass, SignedLoopEnumeration) {
  const LatticeDomain& A = block();
  const EdgeSignTable signs = build_branch_cut(A);
  const int L = 16;
  const double tail = 2 * A.size() * std::pow(0.5, L + 1) / ((L + 1) * 0.5);
  const double two_m = rooted_loop_sum(A, nullptr, L) - rooted_loop_sum(A, &signs, L);
  const OddLoopMass mass = odd_loop_mass(A, signs);
  EXPECT_GT(mass.exp2m, 1.0);
  EXPECT_NEAR(2 * mass.m, two_m, tail);
  EXPECT_NEAR(mass.exp2m, std::exp(2 * mass.m), 1e-15);
}

TEST(LoopMass, NoWindingWithoutBlock) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}, {1, 0}});
  EXPECT_NEAR(odd_loop_mass(A, EdgeSignTable::trivial(A)).exp2m, 1.0, 1e-15);
}

TEST(LoopFactor, SingletonAndOrderIndependence) {
  const LatticeDomain A = square_domain(4);
  std::mt19937 gen(7);
  for (int t = 0; t < 5; ++t) {
    const Point z = A.vertex(static_cast<int>(gen() % A.size()));
    EXPECT_NEAR(loop_factor(std::vector<Point>{z}, A), green(A, nullptr, z, z), 1e-13);
  }
  const std::vector<Point> V{{0, 0}, {2, -1}, {-1, 3}};
  const std::vector<Point> W{{-1, 3}, {0, 0}, {2, -1}};
  EXPECT_NEAR(loop_factor(V, A), loop_factor(W, A), 1e-10);
  const EdgeSignTable signs = build_branch_cut(A);
  EXPECT_NEAR(loop_factor(V, A, &signs), loop_factor(W, A, &signs), 1e-10);
}

TEST(Qbar, TwoVertices) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}, {1, 0}});
  EXPECT_NEAR(qbar(A, EdgeSignTable::trivial(A)), 4.0 / 15.0, 1e-15);
}

TEST(Qbar, BoundedByUnsigned) {
  const std::vector<Point> zero{{0, 0}};
  for (const int n : {2, 4, 8}) {
    const LatticeDomain A = square_domain(n);
    const double bound = 0.25 * green(A, nullptr, {0, 0}, {0, 0}) * GreenTable(A, nullptr, zero)({1, 0}, {1, 0});
    const double q = qbar(A, build_branch_cut(A));
    EXPECT_GT(q, 0.0);
    EXPECT_LE(q, bound);
  }
}
