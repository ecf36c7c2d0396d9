#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lerw/lattice.hpp"

namespace lerw {

// The four vertices around w0: {0, 1, -i, 1-i}.
std::vector<Point> branch_block();

// Calls visit(points) once for every simply connected vertex set containing `seed` whose bounding
// box is at most max_width x max_height. The seed must be connected. Points are passed sorted.
// Returns the number of sets visited.
long long enumerate_domains(std::span<const Point> seed, int max_width, int max_height,
                            const std::function<void(const std::vector<Point>&)>& visit);

}  // namespace lerw
