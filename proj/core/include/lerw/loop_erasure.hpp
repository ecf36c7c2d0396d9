#pragma once

#include "lerw/lattice.hpp"

namespace lerw {

// Chronological loop erasure: s_0 = max{j : w_j = w_0}, s_{i+1} = max{j : w_j = w_{s_i + 1}},
// output w_{s_0}, w_{s_1}, ... until s_i is the last index.
Saw loop_erase(const Walk& walk);

// True iff the path contains u followed directly by v, or v followed directly by u.
bool traverses_edge(std::span<const Point> path, Point u, Point v);

}  // namespace lerw
