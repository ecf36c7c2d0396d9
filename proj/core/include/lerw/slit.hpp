#pragma once

#include <vector>

#include "lerw/lattice.hpp"

namespace lerw {

// Exit distribution from 0 of the slit square U_n^- = U_n \ {0..n} through the outer boundary of U_n.
struct EscapeProfile {
  int n = 0;
  std::vector<BoundaryEdge> edges;  // outer boundary edges of U_n, sorted by midpoint
  std::vector<double> values;       // H_{dU^-}(0, b) = (1/16) sum_{y ~ 0, y in U^-} G_{U^-}(y, b_-)
  double total = 0.0;               // K(n)

  // Values divided by K(n).
  std::vector<double> normalized() const;
};

EscapeProfile slit_escape_profile(int n);

}  // namespace lerw
