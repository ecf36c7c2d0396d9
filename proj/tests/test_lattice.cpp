#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "lerw/corpus.hpp"
#include "lerw/domain_io.hpp"
#include "lerw/lattice.hpp"

using namespace lerw;

namespace {

std::vector<Point> ring(int lo, int hi) {
  std::vector<Point> pts;
  for (int x = -hi; x <= hi; ++x) {
    for (int y = -hi; y <= hi; ++y) {
      const int r = std::max(std::abs(x), std::abs(y));
      if (r >= lo && r <= hi) pts.push_back({x, y});
    }
  }
  return pts;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

// Winding number of a closed lattice polygon around w0 = (1/2, -1/2).
int winding_about_w0(const std::vector<Point>& loop) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const double a0 = std::atan2(loop[i].y + 0.5, loop[i].x - 0.5);
    const double a1 = std::atan2(loop[i + 1].y + 0.5, loop[i + 1].x - 0.5);
    double d = a1 - a0;
    if (d > std::numbers::pi) d -= 2 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2 * std::numbers::pi;
    total += d;
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

}  // namespace

TEST(Validate, SingleVertex) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}});
  EXPECT_EQ(A.size(), 1u);
  EXPECT_EQ(boundary_edges(A).size(), 4u);
}

TEST(Validate, RejectsBadSets) {
  EXPECT_EQ(code_of([] { LatticeDomain::validate(ring(1, 2)); }), ErrorCode::MissingOrigin);
  auto outer = ring(2, 2);
  outer.push_back({0, 0});
  EXPECT_EQ(code_of([&] { LatticeDomain::validate(outer); }), ErrorCode::Disconnected);
  auto holed = ring(0, 2);
  std::erase(holed, Point{1, 1});
  EXPECT_EQ(code_of([&] { LatticeDomain::validate(holed); }), ErrorCode::ComplementDisconnected);
  EXPECT_EQ(code_of([] { LatticeDomain::validate({}); }), ErrorCode::EmptyDomain);
}

TEST(Constructors, Square2) {
  const LatticeDomain A = square_domain(2);
  EXPECT_EQ(A.size(), 16u);
  const Box& b = A.bounding_box();
  EXPECT_EQ(b.xmin, -1);
  EXPECT_EQ(b.xmax, 2);
  EXPECT_EQ(b.ymin, -2);
  EXPECT_EQ(b.ymax, 1);
  EXPECT_DOUBLE_EQ(0.5 * (b.xmin + b.xmax), 0.5);
  EXPECT_DOUBLE_EQ(0.5 * (b.ymin + b.ymax), -0.5);
}

TEST(Constructors, Rect3x3) {
  const LatticeDomain A = rect_domain(3, 3);
  const std::vector<Point> expected{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(A.vertices(), expected);
  EXPECT_FALSE(A.contains_origin());
}

TEST(Constructors, SlitSquare2) {
  const LatticeDomain A = slit_square_domain(2);
  // U_2 = {|x| < 2, |y| < 2} does not contain 2, so only 0 and 1 are removed
  EXPECT_EQ(A.size(), 7u);
  for (int k = 0; k <= 2; ++k) EXPECT_FALSE(A.contains({k, 0}));
  EXPECT_EQ(standard_domain("slit-square:2"), A);
}

TEST(Constructors, Descriptors) {
  EXPECT_EQ(standard_domain("square:3"), square_domain(3));
  EXPECT_EQ(standard_domain("rect:10x14"), rect_domain(10, 14));
  EXPECT_THROW(standard_domain("circle:3"), Error);
  EXPECT_THROW(standard_domain("square:x"), Error);
  EXPECT_EQ(code_of([] { square_domain(1); }), ErrorCode::SizeTooSmall);
}

TEST(BoundaryEdges, Counts) {
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(boundary_edges(square_domain(n)).size(), 8u * n);
  EXPECT_EQ(boundary_edges(LatticeDomain::validate({{0, 0}, {1, 0}})).size(), 6u);
}

TEST(BoundaryEdges, NamedEdgesFormOneOrbit) {
  const int n = 5;
  const BoundaryEdge right = named_square_edge(n, "right-mid");
  EXPECT_EQ(right.inner, (Point{n, 0}));
  EXPECT_EQ(right.outer, (Point{n + 1, 0}));
  EXPECT_EQ(rotate_about_w0(right), named_square_edge(n, "top-mid"));
  EXPECT_EQ(rotate_about_w0(rotate_about_w0(right)), named_square_edge(n, "left-mid"));
  EXPECT_EQ(rotate_about_w0(named_square_edge(n, "left-mid")), named_square_edge(n, "bottom-mid"));
  EXPECT_THROW(named_square_edge(n, "middle"), Error);
}

TEST(BranchCut, StraightDownOnSquares) {
  for (int n = 2; n <= 6; ++n) {
    const EdgeSignTable t = build_branch_cut(square_domain(n));
    ASSERT_EQ(t.crossed_edges().size(), static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      const auto& [u, v] = t.crossed_edges()[static_cast<std::size_t>(k - 1)];
      EXPECT_EQ(std::min(u, v), (Point{0, -k}));
      EXPECT_EQ(std::max(u, v), (Point{1, -k}));
      if (k < n) EXPECT_EQ(t.sign(Point{0, -k}, Point{1, -k}), -1);
    }
    EXPECT_EQ(t.sign(Point{0, 0}, Point{1, 0}), 1);
  }
}

TEST(BranchCut, SingleBlock) {
  const LatticeDomain A = LatticeDomain::validate({{0, 0}, {1, 0}, {0, -1}, {1, -1}});
  const EdgeSignTable t = build_branch_cut(A);
  ASSERT_EQ(t.crossed_edges().size(), 1u);
  const auto& [u, v] = t.crossed_edges()[0];
  EXPECT_FALSE((u == Point{0, 0} && v == Point{1, 0}) || (u == Point{1, 0} && v == Point{0, 0}));
  EXPECT_EQ(t.sign(Point{0, 0}, Point{1, 0}), 1);
  EXPECT_EQ(t.sign(u, v), -1);
}

TEST(BranchCut, ExplicitPathValidation) {
  const LatticeDomain A = square_domain(3);
  EXPECT_NO_THROW(branch_cut_from_path(A, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
  // upward step crosses [0,1]
  EXPECT_THROW(branch_cut_from_path(A, {{0, 0}, {0, 1}, {0, 2}, {0, 3}}), Error);
  EXPECT_THROW(branch_cut_from_path(A, {{0, 0}, {0, -1}}), Error);
}

TEST(LoopSign, Examples) {
  const LatticeDomain A = square_domain(3);
  const EdgeSignTable t = build_branch_cut(A);
  EXPECT_EQ(loop_sign(t, Walk{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}}), 1);
  EXPECT_EQ(loop_sign(t, Walk{{{0, 0}, {1, 0}, {1, -1}, {0, -1}, {0, 0}}}), -1);
  EXPECT_THROW(loop_sign(t, Walk{{{0, 0}, {1, 0}}}), Error);
}

TEST(LoopSign, CutIndependentAndMatchesWinding) {
  const LatticeDomain A = square_domain(6);
  const EdgeSignTable down = build_branch_cut(A, CutPriority::DownFirst);
  const EdgeSignTable right = build_branch_cut(A, CutPriority::RightFirst);
  ASSERT_NE(down.crossed_edges(), right.crossed_edges());
  std::mt19937 gen(12345);
  int odd = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> loop{{0, 0}};
    const int steps = 4 + static_cast<int>(gen() % 40);
    for (int s = 0; s < steps; ++s) {
      const Point next = loop.back() + kSteps[gen() % 4];
      if (A.contains(next)) loop.push_back(next);
    }
    // close along an L-shaped path; the square is convex
    while (loop.back().x != 0) loop.push_back(loop.back() + Point{loop.back().x > 0 ? -1 : 1, 0});
    while (loop.back().y != 0) loop.push_back(loop.back() + Point{0, loop.back().y > 0 ? -1 : 1});
    const int expected = winding_about_w0(loop) % 2 == 0 ? 1 : -1;
    odd += expected < 0;
    EXPECT_EQ(loop_sign(down, Walk{loop}), expected);
    EXPECT_EQ(loop_sign(right, Walk{loop}), expected);
  }
  EXPECT_GT(odd, 0);
}

TEST(Parity, Examples) {
  const LatticeDomain A = square_domain(4);
  const EdgeSignTable t = build_branch_cut(A);
  EXPECT_EQ(parity_between(A.vertices(), t, {2, 1}, {2, 1}), 1);
  EXPECT_EQ(parity_between(A.vertices(), t, {0, 0}, {4, 3}), 1);
  std::vector<Point> region;
  for (const Point p : A.vertices()) {
    if (!(p.y == 0 && p.x >= 0 && p.x <= 4)) region.push_back(p);
  }
  EXPECT_EQ(parity_between(region, t, {0, -2}, {1, -2}), -1);
  EXPECT_EQ(parity_between(A.vertices(), t, {0, -2}, {1, -2}), 1);
  const std::vector<Point> split{{0, 0}, {0, 1}, {3, 0}, {3, 1}};
  EXPECT_EQ(code_of([&] { parity_between(split, t, {0, 0}, {3, 1}); }), ErrorCode::Unreachable);
}

TEST(DomainIo, RoundTrip) {
  const LatticeDomain A = square_domain(2);
  EXPECT_EQ(parse_domain_json(domain_to_json(A)), A);
  EXPECT_THROW(parse_domain_json("{\"vertices\": [[0, 0], [0]]}"), Error);
  EXPECT_THROW(parse_domain_json("not json"), Error);
  EXPECT_THROW(parse_domain_json("{\"vertices\": [[1, 1]]}"), Error);
}

TEST(Corpus, SmallCounts) {
  // every connected set containing the seed in a 2 x 2 box is the box itself or an L / domino
  long long count = enumerate_domains(std::vector<Point>{{0, 0}}, 1, 1, [](const std::vector<Point>&) {});
  EXPECT_EQ(count, 1);
  std::set<std::vector<Point>> seen;
  count = enumerate_domains(std::vector<Point>{{0, 0}, {1, 0}}, 2, 2, [&](const std::vector<Point>& pts) {
    EXPECT_TRUE(seen.insert(pts).second);
    EXPECT_NO_THROW(LatticeDomain::validate(pts));
  });
  // {0,1}, plus one of four cells, plus both cells above or both below
  EXPECT_EQ(count, 7);
}
