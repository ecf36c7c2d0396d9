#include "lerw/slit.hpp"

#include <cstdlib>

#include "lerw/harmonic.hpp"

namespace lerw {

std::vector<double> EscapeProfile::normalized() const {
  std::vector<double> out(values);
  for (double& v : out) v /= total;
  return out;
}

EscapeProfile slit_escape_profile(int n) {
  const LatticeDomain U = slit_square_domain(n);
  const Point zero{0, 0};
  Eigen::VectorXd source = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(U.size()));
  for (const Point s : kSteps) {
    const int j = U.index_of(zero + s);
    if (j >= 0) source[j] = 1.0;
  }
  // G is symmetric, so one solve gives sum_y G(y, .) for all targets.
  const Eigen::VectorXd reach = GreenTable(U).solve(source);

  EscapeProfile p;
  p.n = n;
  for (const BoundaryEdge& b : boundary_edges(U)) {
    if (std::abs(b.outer.x) < n && std::abs(b.outer.y) < n) continue;
    p.edges.push_back(b);
    p.values.push_back(reach[U.index_of(b.inner)] / 16.0);
    p.total += p.values.back();
  }
  return p;
}

}  // namespace lerw
