#include "lerw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "lerw/harmonic.hpp"

namespace lerw {

ConditionedSampler::ConditionedSampler(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b)
    : domain_(A), a_(a), b_(b) {
  for (const BoundaryEdge& e : {a, b}) {
    if (!A.contains(e.inner) || A.contains(e.outer) || !adjacent(e.inner, e.outer)) {
      throw Error(ErrorCode::EdgeOutsideDomain, "not a boundary edge of the domain");
    }
  }
  if (a == b) throw Error(ErrorCode::InvalidArgument, "entry and exit edges must differ");
  start_ = A.index_of(a.inner);
  exit_vertex_ = A.index_of(b.inner);
  exit_direction_ = step_direction(b.inner, b.outer);
  zero_ = A.index_of({0, 0});
  one_ = A.index_of({1, 0});

  const GreenTable table(A);
  const Eigen::VectorXd& h = table.column(b.inner);
  if (!(h[start_] > 0.0)) throw Error(ErrorCode::ZeroConditioningMass, "H(a, b) vanishes");

  cumulative_.resize(A.size());
  for (int v = 0; v < static_cast<int>(A.size()); ++v) {
    std::array<double, 4> w{};
    for (int d = 0; d < 4; ++d) {
      const int u = A.neighbors(v)[static_cast<std::size_t>(d)];
      if (u >= 0) w[static_cast<std::size_t>(d)] = std::max(h[u], 0.0);
      else if (v == exit_vertex_ && d == exit_direction_) w[static_cast<std::size_t>(d)] = 4.0;
    }
    double total = 0.0;
    int last = -1;
    for (int d = 0; d < 4; ++d) {
      if (w[static_cast<std::size_t>(d)] > 0.0) last = d;
      total += w[static_cast<std::size_t>(d)];
    }
    auto& c = cumulative_[static_cast<std::size_t>(v)];
    double run = 0.0;
    for (int d = 0; d < 4; ++d) {
      run += w[static_cast<std::size_t>(d)];
      c[static_cast<std::size_t>(d)] = d >= last ? 1.0 : run / total;
    }
  }
}

int ConditionedSampler::step(int v, PhiloxStream& rng) const {
  const double u = rng.next_double();
  const auto& c = cumulative_[static_cast<std::size_t>(v)];
  int d = 0;
  while (d < 3 && !(u < c[static_cast<std::size_t>(d)])) ++d;
  return d;
}

Walk ConditionedSampler::sample(PhiloxStream& rng) const {
  Walk w;
  w.points.push_back(a_.outer);
  int v = start_;
  w.points.push_back(domain_.vertex(v));
  for (;;) {
    const int d = step(v, rng);
    if (v == exit_vertex_ && d == exit_direction_) break;
    v = domain_.neighbors(v)[static_cast<std::size_t>(d)];
    w.points.push_back(domain_.vertex(v));
  }
  w.points.push_back(b_.outer);
  return w;
}

bool ConditionedSampler::loop_erasure_uses_marked_edge(PhiloxStream& rng) const {
  if (zero_ < 0 || one_ < 0) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");
  thread_local std::vector<int> stack;
  thread_local std::vector<int> position;
  stack.clear();
  position.assign(domain_.size(), -1);
  int v = start_;
  stack.push_back(v);
  position[static_cast<std::size_t>(v)] = 0;
  for (;;) {
    const int d = step(v, rng);
    if (v == exit_vertex_ && d == exit_direction_) break;
    v = domain_.neighbors(v)[static_cast<std::size_t>(d)];
    const int at = position[static_cast<std::size_t>(v)];
    if (at >= 0) {
      while (static_cast<int>(stack.size()) > at + 1) {
        position[static_cast<std::size_t>(stack.back())] = -1;
        stack.pop_back();
      }
    } else {
      position[static_cast<std::size_t>(v)] = static_cast<int>(stack.size());
      stack.push_back(v);
    }
  }
  const int p0 = position[static_cast<std::size_t>(zero_)];
  const int p1 = position[static_cast<std::size_t>(one_)];
  return p0 >= 0 && p1 >= 0 && std::abs(p0 - p1) == 1;
}

Walk sample_conditioned_walk(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                             PhiloxStream& rng) {
  return ConditionedSampler(A, a, b).sample(rng);
}

BoundaryEdge sample_exit_edge(const LatticeDomain& A, Point z, PhiloxStream& rng) {
  int v = A.index_of(z);
  if (v < 0) throw Error(ErrorCode::OutOfDomain, "start outside the domain");
  for (;;) {
    const int d = static_cast<int>(rng.next_u32() >> 30);
    const int u = A.neighbors(v)[static_cast<std::size_t>(d)];
    if (u < 0) return {A.vertex(v), A.vertex(v) + kSteps[static_cast<std::size_t>(d)]};
    v = u;
  }
}

unsigned default_workers() {
  if (const char* env = std::getenv("LERW_WORKERS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

McEstimate mc_edge_probability(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                               std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const ConditionedSampler sampler(A, a, b);
  if (!A.contains({0, 0}) || !A.contains({1, 0})) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, samples));

  std::vector<std::uint64_t> hits(workers, 0);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = samples * w / workers;
    const std::uint64_t hi = samples * (w + 1) / workers;
    std::uint64_t count = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      PhiloxStream rng(seed, i);
      if (sampler.loop_erasure_uses_marked_edge(rng)) ++count;
    }
    hits[w] = count;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  for (const std::uint64_t h : hits) est.hits += h;
  est.mean = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

}  // namespace lerw
