#pragma once

#include <cstdint>
#include <vector>

#include "lerw/lattice.hpp"
#include "lerw/rng.hpp"

namespace lerw {

// Simple random walk entering A through a and conditioned to leave through b, sampled as the
// h-process with h(x) = G_A(x, b_-). From x the walk steps to a neighbour y in A with probability
// h(y) / (4 h(x)) and leaves through b (only from b_-) with probability 1 / h(b_-).
class ConditionedSampler {
 public:
  ConditionedSampler(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b);

  // Full walk a_+, a_-, ..., b_-, b_+.
  Walk sample(PhiloxStream& rng) const;

  // Whether the loop erasure of one sampled walk uses the edge [0,1]. Requires {0,1} in A.
  bool loop_erasure_uses_marked_edge(PhiloxStream& rng) const;

  const LatticeDomain& domain() const { return domain_; }

 private:
  int step(int v, PhiloxStream& rng) const;

  LatticeDomain domain_;
  BoundaryEdge a_, b_;
  int start_ = -1;
  int exit_vertex_ = -1;
  int exit_direction_ = -1;
  int zero_ = -1, one_ = -1;
  std::vector<std::array<double, 4>> cumulative_;
};

Walk sample_conditioned_walk(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                             PhiloxStream& rng);

// Unconditioned simple random walk from z until it leaves A; returns the exit edge.
BoundaryEdge sample_exit_edge(const LatticeDomain& A, Point z, PhiloxStream& rng);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

// Worker count from LERW_WORKERS, else the hardware concurrency.
unsigned default_workers();

// Fraction of conditioned walks whose loop erasure traverses [0,1]. Sample i uses stream i of the
// seed, and per-worker hit counts are summed, so the result does not depend on `workers`.
McEstimate mc_edge_probability(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers = 0);

}  // namespace lerw
