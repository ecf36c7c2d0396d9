#include "lerw/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "lerw/domain_io.hpp"

namespace lerw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingOrigin: return "MissingOrigin";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ComplementDisconnected: return "ComplementDisconnected";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::BranchPointOnBoundary: return "BranchPointOnBoundary";
    case ErrorCode::InvalidCut: return "InvalidCut";
    case ErrorCode::NotALoop: return "NotALoop";
    case ErrorCode::EdgeOutsideDomain: return "EdgeOutsideDomain";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::PathDependentParity: return "PathDependentParity";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::ZeroConditioningMass: return "ZeroConditioningMass";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::LambdaNotInterior: return "LambdaNotInterior";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::OnAlpha: return "OnAlpha";
    case ErrorCode::AspectOutOfRange: return "AspectOutOfRange";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::UnknownStudy: return "UnknownStudy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

// Flood fill over a w x h grid of flags; returns the number of reached cells with flag == target.
int flood(const std::vector<char>& cells, int w, int h, int start, char target) {
  std::vector<char> seen(cells.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    ++count;
    const int cx = c % w;
    const int cy = c / w;
    for (const Point s : kSteps) {
      const int nx = cx + s.x;
      const int ny = cy + s.y;
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const int nc = ny * w + nx;
      if (seen[static_cast<std::size_t>(nc)] || cells[static_cast<std::size_t>(nc)] != target) continue;
      seen[static_cast<std::size_t>(nc)] = 1;
      stack.push_back(nc);
    }
  }
  return count;
}

}  // namespace

LatticeDomain LatticeDomain::validate(std::vector<Point> points, bool require_origin) {
  if (points.empty()) throw Error(ErrorCode::EmptyDomain, "domain has no vertices");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LatticeDomain A;
  A.vertices_ = std::move(points);
  Box& box = A.box_;
  box = {A.vertices_.front().x, A.vertices_.front().x, A.vertices_.front().y, A.vertices_.front().y};
  for (const Point p : A.vertices_) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  A.grid_.assign(static_cast<std::size_t>(box.width()) * static_cast<std::size_t>(box.height()), -1);
  for (std::size_t i = 0; i < A.vertices_.size(); ++i) {
    const Point p = A.vertices_[i];
    A.grid_[static_cast<std::size_t>((p.y - box.ymin) * box.width() + (p.x - box.xmin))] = static_cast<int>(i);
  }
  A.contains_origin_ = A.index_of({0, 0}) >= 0;
  if (require_origin && !A.contains_origin_) throw Error(ErrorCode::MissingOrigin, "0 is not a vertex");

  A.neighbors_.resize(A.vertices_.size());
  for (std::size_t i = 0; i < A.vertices_.size(); ++i) {
    for (int d = 0; d < 4; ++d) A.neighbors_[i][static_cast<std::size_t>(d)] = A.index_of(A.vertices_[i] + kSteps[d]);
  }

  // Both connectivity checks on the bounding box enlarged by a one-cell frame. The frame ring is
  // connected, so it plays the role of the outside super-node.
  const int w = box.width() + 2;
  const int h = box.height() + 2;
  std::vector<char> cells(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  for (const Point p : A.vertices_) {
    cells[static_cast<std::size_t>((p.y - box.ymin + 1) * w + (p.x - box.xmin + 1))] = 1;
  }
  const Point v0 = A.vertices_.front();
  const int start_in = (v0.y - box.ymin + 1) * w + (v0.x - box.xmin + 1);
  if (flood(cells, w, h, start_in, 1) != static_cast<int>(A.vertices_.size())) {
    throw Error(ErrorCode::Disconnected, "induced subgraph is not connected");
  }
  const int outside = w * h - static_cast<int>(A.vertices_.size());
  if (flood(cells, w, h, 0, 0) != outside) {
    throw Error(ErrorCode::ComplementDisconnected, "complement is not connected (domain has a hole)");
  }
  return A;
}

std::vector<BoundaryEdge> boundary_edges(const LatticeDomain& A) {
  std::vector<BoundaryEdge> edges;
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (int d = 0; d < 4; ++d) {
      if (A.neighbors(static_cast<int>(i))[static_cast<std::size_t>(d)] < 0) {
        edges.push_back({A.vertices()[i], A.vertices()[i] + kSteps[d]});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const BoundaryEdge& a, const BoundaryEdge& b) {
    return a.midpoint2() < b.midpoint2();
  });
  return edges;
}

LatticeDomain square_domain(int n) {
  if (n < 2) throw Error(ErrorCode::SizeTooSmall, "square:n needs n >= 2");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(4 * n * n));
  for (int x = -n + 1; x <= n; ++x) {
    for (int y = -n; y <= n - 1; ++y) pts.push_back({x, y});
  }
  return LatticeDomain::validate(std::move(pts));
}

LatticeDomain rect_domain(int n, int m) {
  if (n < 3 || m < 3) throw Error(ErrorCode::SizeTooSmall, "rect:n x m needs n, m >= 3");
  std::vector<Point> pts;
  for (int j = 1; j <= n - 1; ++j) {
    for (int k = 1; k <= m - 1; ++k) pts.push_back({j, k});
  }
  return LatticeDomain::validate(std::move(pts), false);
}

LatticeDomain slit_square_domain(int n) {
  if (n < 2) throw Error(ErrorCode::SizeTooSmall, "slit-square:n needs n >= 2");
  std::vector<Point> pts;
  for (int x = -n + 1; x <= n - 1; ++x) {
    for (int y = -n + 1; y <= n - 1; ++y) {
      if (y == 0 && x >= 0 && x <= n) continue;
      pts.push_back({x, y});
    }
  }
  return LatticeDomain::validate(std::move(pts), false);
}

namespace {

int parse_int(std::string_view s, const std::string& descriptor) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer in domain descriptor '" + descriptor + "'");
  }
  return value;
}

}  // namespace

LatticeDomain standard_domain(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "domain descriptor needs a kind: " + descriptor);
  const std::string kind = descriptor.substr(0, colon);
  const std::string_view arg = std::string_view(descriptor).substr(colon + 1);
  if (kind == "square") return square_domain(parse_int(arg, descriptor));
  if (kind == "slit-square") return slit_square_domain(parse_int(arg, descriptor));
  if (kind == "rect") {
    const auto x = arg.find('x');
    if (x == std::string_view::npos) throw Error(ErrorCode::ParseError, "rect descriptor needs <n>x<m>: " + descriptor);
    return rect_domain(parse_int(arg.substr(0, x), descriptor), parse_int(arg.substr(x + 1), descriptor));
  }
  if (kind == "file") return read_domain_file(std::string(arg));
  throw Error(ErrorCode::ParseError, "unknown domain kind: " + kind);
}

BoundaryEdge rotate_about_w0(const BoundaryEdge& e) {
  return {rotate_about_w0(e.inner), rotate_about_w0(e.outer)};
}

BoundaryEdge named_square_edge(int n, const std::string& name) {
  BoundaryEdge e{{n, 0}, {n + 1, 0}};
  int turns = 0;
  if (name == "right-mid") {
    turns = 0;
  } else if (name == "top-mid") {
    turns = 1;
  } else if (name == "left-mid") {
    turns = 2;
  } else if (name == "bottom-mid") {
    turns = 3;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown named edge: " + name);
  }
  for (int t = 0; t < turns; ++t) e = rotate_about_w0(e);
  return e;
}

bool dual_interior(const LatticeDomain& A, DualPoint d) {
  return A.contains({d.x, d.y}) && A.contains({d.x + 1, d.y}) && A.contains({d.x, d.y - 1}) &&
         A.contains({d.x + 1, d.y - 1});
}

std::pair<Point, Point> crossed_primal_edge(DualPoint d, DualPoint e) {
  if (e.x == d.x && e.y == d.y - 1) return {{d.x, d.y - 1}, {d.x + 1, d.y - 1}};
  if (e.x == d.x && e.y == d.y + 1) return {{d.x, d.y}, {d.x + 1, d.y}};
  if (e.y == d.y && e.x == d.x + 1) return {{d.x + 1, d.y}, {d.x + 1, d.y - 1}};
  if (e.y == d.y && e.x == d.x - 1) return {{d.x, d.y}, {d.x, d.y - 1}};
  throw Error(ErrorCode::InvalidCut, "dual points are not adjacent");
}

EdgeSignTable EdgeSignTable::trivial(const LatticeDomain& A) { return EdgeSignTable(A); }

int EdgeSignTable::sign(Point u, Point v) const {
  const int i = domain_.index_of(u);
  const int d = step_direction(u, v);
  if (i < 0 || d < 0) return 1;
  return sign(i, d);
}

EdgeSignTable build_branch_cut(const LatticeDomain& A, CutPriority priority) {
  const DualPoint w0{0, 0};
  if (!dual_interior(A, w0)) {
    throw Error(ErrorCode::BranchPointOnBoundary, "{0, 1, -i, 1-i} must lie in the domain");
  }
  static constexpr DualPoint kDown{0, -1}, kLeft{-1, 0}, kRight{1, 0}, kUp{0, 1};
  std::array<DualPoint, 4> order{};
  switch (priority) {
    case CutPriority::DownFirst: order = {kDown, kLeft, kRight, kUp}; break;
    case CutPriority::RightFirst: order = {kRight, kDown, kLeft, kUp}; break;
    case CutPriority::LeftFirst: order = {kLeft, kDown, kRight, kUp}; break;
  }

  std::map<DualPoint, DualPoint> parent;
  std::deque<DualPoint> queue{w0};
  parent[w0] = w0;
  DualPoint end = w0;
  bool found = false;
  while (!queue.empty() && !found) {
    const DualPoint d = queue.front();
    queue.pop_front();
    for (const DualPoint s : order) {
      const DualPoint e{d.x + s.x, d.y + s.y};
      if (d == w0 && s == kUp) continue;  // this step would cross [0,1]
      if (parent.count(e)) continue;
      parent[e] = d;
      if (!dual_interior(A, e)) {
        end = e;
        found = true;
        break;
      }
      queue.push_back(e);
    }
  }
  if (!found) throw Error(ErrorCode::InvalidCut, "no dual path from w0 to the boundary");
  std::vector<DualPoint> path{end};
  while (!(path.back() == w0)) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return branch_cut_from_path(A, std::move(path));
}

EdgeSignTable branch_cut_from_path(const LatticeDomain& A, std::vector<DualPoint> path) {
  if (path.size() < 2 || !(path.front() == DualPoint{0, 0})) {
    throw Error(ErrorCode::InvalidCut, "cut must start at w0 and take at least one step");
  }
  std::set<DualPoint> seen;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!seen.insert(path[k]).second) throw Error(ErrorCode::InvalidCut, "cut is not simple");
    const bool interior = dual_interior(A, path[k]);
    if (k + 1 < path.size() && !interior) throw Error(ErrorCode::InvalidCut, "cut leaves the domain early");
    if (k + 1 == path.size() && interior) throw Error(ErrorCode::InvalidCut, "cut does not reach the boundary");
  }
  EdgeSignTable table(A);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto [u, v] = crossed_primal_edge(path[k], path[k + 1]);
    if ((u == Point{0, 0} && v == Point{1, 0}) || (u == Point{1, 0} && v == Point{0, 0})) {
      throw Error(ErrorCode::InvalidCut, "cut crosses the edge [0,1]");
    }
    const int iu = A.index_of(u);
    const int iv = A.index_of(v);
    table.crossed_.push_back({u, v});
    table.masks_[static_cast<std::size_t>(iu)] ^= static_cast<std::uint8_t>(1u << step_direction(u, v));
    table.masks_[static_cast<std::size_t>(iv)] ^= static_cast<std::uint8_t>(1u << step_direction(v, u));
  }
  table.cut_path_ = std::move(path);
  return table;
}

bool Walk::is_nearest_neighbor() const {
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (!adjacent(points[k], points[k + 1])) return false;
  }
  return true;
}

double Walk::weight() const { return std::pow(0.25, static_cast<double>(length())); }

bool is_self_avoiding(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Saw Saw::from_points(std::vector<Point> points) {
  if (!Walk{points}.is_nearest_neighbor()) throw Error(ErrorCode::InvalidArgument, "SAW steps must be unit steps");
  if (!is_self_avoiding(points)) throw Error(ErrorCode::InvalidArgument, "SAW repeats a vertex");
  Saw s;
  s.points_ = std::move(points);
  return s;
}

int loop_sign(const EdgeSignTable& table, const Walk& loop) {
  if (loop.points.empty() || !(loop.points.front() == loop.points.back())) {
    throw Error(ErrorCode::NotALoop, "walk does not return to its start");
  }
  const LatticeDomain& A = table.domain();
  int s = 1;
  for (std::size_t k = 0; k + 1 < loop.points.size(); ++k) {
    const Point u = loop.points[k];
    const Point v = loop.points[k + 1];
    const int d = step_direction(u, v);
    if (d < 0 || !A.contains(u) || !A.contains(v)) {
      throw Error(ErrorCode::EdgeOutsideDomain, "loop step is not an edge of the domain");
    }
    s *= table.sign(A.index_of(u), d);
  }
  return s;
}

int parity_between(std::span<const Point> region, const EdgeSignTable& table, Point z, Point w) {
  const std::set<Point> inside(region.begin(), region.end());
  if (!inside.count(z) || !inside.count(w)) throw Error(ErrorCode::OutOfDomain, "endpoint outside the region");
  // flood fill from z, first without crossing the cut and then freely
  auto reaches = [&](bool through_cut) {
    std::set<Point> seen{z};
    std::deque<Point> queue{z};
    while (!queue.empty()) {
      const Point u = queue.front();
      queue.pop_front();
      if (u == w) return true;
      for (const Point s : kSteps) {
        const Point v = u + s;
        if (!inside.count(v) || seen.count(v)) continue;
        if (!through_cut && table.sign(u, v) < 0) continue;
        seen.insert(v);
        queue.push_back(v);
      }
    }
    return false;
  };
  if (reaches(false)) return 1;
  if (reaches(true)) return -1;
  throw Error(ErrorCode::Unreachable, "points lie in different components");
}

}  // namespace lerw
