#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lerw/error.hpp"

namespace lerw {

struct Point {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

// Unit steps in the order right, up, left, down. Direction d and (d + 2) % 4 are opposite.
inline constexpr std::array<Point, 4> kSteps = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

constexpr bool adjacent(Point a, Point b) {
  const int dx = a.x - b.x;
  const int dy = a.y - b.y;
  return dx * dx + dy * dy == 1;
}

// Index of the step taking a to b; -1 if they are not adjacent.
constexpr int step_direction(Point a, Point b) {
  for (int d = 0; d < 4; ++d) {
    if (a + kSteps[d] == b) return d;
  }
  return -1;
}

struct Box {
  int xmin = 0;
  int xmax = -1;
  int ymin = 0;
  int ymax = -1;

  int width() const { return xmax - xmin + 1; }
  int height() const { return ymax - ymin + 1; }
  bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

// Finite simply connected subset of Z^2. Vertices are sorted lexicographically and indexed 0..size()-1.
class LatticeDomain {
 public:
  static LatticeDomain validate(std::vector<Point> points, bool require_origin = true);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Box& bounding_box() const { return box_; }
  bool contains_origin() const { return contains_origin_; }

  int index_of(Point p) const {
    if (!box_.contains(p)) return -1;
    return grid_[static_cast<std::size_t>((p.y - box_.ymin) * box_.width() + (p.x - box_.xmin))];
  }
  bool contains(Point p) const { return index_of(p) >= 0; }
  const Point& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }

  // Neighbour indices in kSteps order, -1 where the neighbour lies outside the domain.
  const std::array<int, 4>& neighbors(int i) const { return neighbors_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const LatticeDomain& a, const LatticeDomain& b) { return a.vertices_ == b.vertices_; }

 private:
  LatticeDomain() = default;

  std::vector<Point> vertices_;
  Box box_;
  std::vector<int> grid_;
  std::vector<std::array<int, 4>> neighbors_;
  bool contains_origin_ = false;
};

struct BoundaryEdge {
  Point inner;
  Point outer;

  // Twice the midpoint, so that it stays integral.
  Point midpoint2() const { return inner + outer; }
  double midpoint_x() const { return 0.5 * (inner.x + outer.x); }
  double midpoint_y() const { return 0.5 * (inner.y + outer.y); }

  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

// Sorted lexicographically by midpoint.
std::vector<BoundaryEdge> boundary_edges(const LatticeDomain& A);

LatticeDomain square_domain(int n);
LatticeDomain rect_domain(int n, int m);
LatticeDomain slit_square_domain(int n);

// "square:<n>", "rect:<n>x<m>", "slit-square:<n>" or "file:<path>".
LatticeDomain standard_domain(const std::string& descriptor);

// Rotation by a quarter turn counterclockwise about w0 = (1/2, -1/2). Maps square:n onto itself.
constexpr Point rotate_about_w0(Point p) { return {-p.y, p.x - 1}; }
BoundaryEdge rotate_about_w0(const BoundaryEdge& e);

// "right-mid", "top-mid", "left-mid", "bottom-mid" on square:n. The four edges form one orbit of
// rotate_about_w0, starting from right-mid = [(n,0),(n+1,0)].
BoundaryEdge named_square_edge(int n, const std::string& name);

// Dual vertex (x + 1/2, y - 1/2). DualPoint{0,0} is w0.
struct DualPoint {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const DualPoint&, const DualPoint&) = default;
};

// True iff the four lattice points around the dual vertex all lie in A.
bool dual_interior(const LatticeDomain& A, DualPoint d);

// Primal edge crossed by the dual step d -> e (adjacent dual points).
std::pair<Point, Point> crossed_primal_edge(DualPoint d, DualPoint e);

enum class CutPriority {
  DownFirst,   // down, left, right, up
  RightFirst,  // right, down, left, up
  LeftFirst,   // left, down, right, up
};

// Branch cut and the induced edge signs Q(e) = -1 on crossed edges, +1 elsewhere.
class EdgeSignTable {
 public:
  // All signs +1. Useful when w0 is not interior and no loop can wind around it.
  static EdgeSignTable trivial(const LatticeDomain& A);

  const std::vector<DualPoint>& cut_path() const { return cut_path_; }
  const std::vector<std::pair<Point, Point>>& crossed_edges() const { return crossed_; }

  int sign(Point u, Point v) const;
  // Sign of the edge from vertex index i in direction d. Edges leaving the domain have sign +1.
  int sign(int i, int d) const { return (masks_[static_cast<std::size_t>(i)] >> d) & 1 ? -1 : 1; }

  const LatticeDomain& domain() const { return domain_; }

 private:
  friend EdgeSignTable branch_cut_from_path(const LatticeDomain& A, std::vector<DualPoint> path);
  explicit EdgeSignTable(const LatticeDomain& A) : domain_(A), masks_(A.size(), 0) {}

  LatticeDomain domain_;
  std::vector<DualPoint> cut_path_;
  std::vector<std::pair<Point, Point>> crossed_;
  std::vector<std::uint8_t> masks_;
};

EdgeSignTable build_branch_cut(const LatticeDomain& A, CutPriority priority = CutPriority::DownFirst);

// Validates an explicit dual path: simple, unit steps, starts at w0, every point but the last
// interior, the last not interior, and the edge [0,1] never crossed.
EdgeSignTable branch_cut_from_path(const LatticeDomain& A, std::vector<DualPoint> path);

struct Walk {
  std::vector<Point> points;

  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
  bool is_nearest_neighbor() const;
  double weight() const;  // 4^{-length}
};

class Saw {
 public:
  static Saw from_points(std::vector<Point> points);
  const std::vector<Point>& points() const { return points_; }
  std::size_t length() const { return points_.empty() ? 0 : points_.size() - 1; }
  Walk walk() const { return Walk{points_}; }

  friend bool operator==(const Saw&, const Saw&) = default;

 private:
  std::vector<Point> points_;
};

bool is_self_avoiding(std::span<const Point> points);

// Product of edge signs along a closed walk inside the table's domain.
int loop_sign(const EdgeSignTable& table, const Walk& loop);

// +1 if z and w are joined inside the region without crossing the cut, -1 if they are joined only
// across it. Throws Unreachable if they lie in different components of the region.
int parity_between(std::span<const Point> region, const EdgeSignTable& table, Point z, Point w);

}  // namespace lerw
