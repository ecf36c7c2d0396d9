#include "lerw/loop_erasure.hpp"

#include <map>

namespace lerw {

Saw loop_erase(const Walk& walk) {
  const auto& w = walk.points;
  if (w.empty()) return Saw::from_points({});
  std::map<Point, std::size_t> last;
  for (std::size_t j = 0; j < w.size(); ++j) last[w[j]] = j;
  std::vector<Point> out;
  std::size_t s = last.at(w.front());
  out.push_back(w[s]);
  while (s + 1 < w.size()) {
    s = last.at(w[s + 1]);
    out.push_back(w[s]);
  }
  return Saw::from_points(std::move(out));
}

bool traverses_edge(std::span<const Point> path, Point u, Point v) {
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if ((path[k] == u && path[k + 1] == v) || (path[k] == v && path[k + 1] == u)) return true;
  }
  return false;
}

}  // namespace lerw
