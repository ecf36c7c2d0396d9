#pragma once

#include <cstddef>
#include <vector>

#include "lerw/lattice.hpp"

namespace lerw {

// Largest domain the exact enumerators accept (a full 5 x 5 box).
inline constexpr std::size_t kEnumerationLimit = 25;

// Sums of p-hat(eta; A) = 4^{-|eta|} F(eta; A) over SAWs eta from a boundary edge a to a boundary
// edge b. They depend on a and b only through a_- and b_-, so the tables are indexed by pairs of
// boundary vertices (vertices of A with a neighbour outside A), row = start, column = end.
// Self-avoidance is required of the vertices in A; a_+ and b_+ may coincide.
struct SawSums {
  std::vector<Point> ends;
  std::vector<double> total;     // every SAW; left empty when only marked paths were enumerated
  std::vector<double> forward;   // SAWs that step 0 -> 1
  std::vector<double> backward;  // SAWs that step 1 -> 0

  int index_of(Point p) const;
  double at(const std::vector<double>& table, Point start, Point end) const;
};

// With marked_only, paths touching 0 or 1 without traversing [0,1] are pruned and `total` is empty.
SawSums enumerate_saw_sums(const LatticeDomain& A, bool marked_only, std::size_t limit = kEnumerationLimit);

// P(a, b; A) from the enumeration of SAWs through [0,1], divided by H_{dA}(a, b).
double exact_edge_probability(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                              std::size_t limit = kEnumerationLimit);

// Sum of p-hat over all SAWs from a to b.
double saw_partition_sum(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                         std::size_t limit = kEnumerationLimit);

struct SplitSums {
  double plus = 0.0;   // SAWs containing lambda in its own orientation
  double minus = 0.0;  // SAWs containing the reversal of lambda
};

// Enumerated sums of p-hat over SAWs a -> b that contain lambda (resp. its reversal) as a segment.
SplitSums enumerate_split(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                          std::span<const Point> lambda, std::size_t limit = kEnumerationLimit);

}  // namespace lerw
