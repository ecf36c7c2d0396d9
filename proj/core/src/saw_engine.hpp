#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace lerw::detail {

// Depth-first enumeration of self-avoiding vertex paths. The loop factor of every prefix is kept
// through an incremental LDL^T factorisation of the Green matrix restricted to the path: the pivot
// of a new vertex v is G_{B \ path}(v, v), so the prefix weight is the product of pivots / 4.
class SawEngine {
 public:
  static constexpr int kMaxVertices = 64;

  // `green` is the row-major n x n Green matrix of the base set B; `nbrs` lists neighbours in B.
  SawEngine(int n, const double* green, const std::array<int, 4>* nbrs)
      : n_(n), green_(green), nbrs_(nbrs), lrows_(static_cast<std::size_t>(kMaxVertices) * kMaxVertices) {
    for (int v = 0; v < n; ++v) {
      for (const int u : nbrs[v]) {
        if (u >= 0) nbr_mask_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
      }
    }
  }

  // Restricts paths to the vertices in `mask`.
  void set_allowed(std::uint64_t mask) { allowed_ = mask; }

  // Tracks the edge u-v. With `require` set, a path that reaches u or v without traversing the
  // edge at that moment is abandoned, and so is a path that can no longer reach u or v. With
  // `forward_only` as well, only the traversal u -> v is kept.
  void set_marked(int u, int v, bool require, bool forward_only = false) {
    mu_ = u;
    mv_ = v;
    require_marked_ = require;
    forward_only_ = require && forward_only;
  }

  template <class Visitor>
  void run(int start, Visitor&& visit) {
    depth_ = 0;
    visited_ = 0;
    if (!((allowed_ >> start) & 1)) return;
    descend(start, 1.0, 0, visit);
  }

  int depth() const { return depth_; }
  int tip() const { return path_[depth_ - 1]; }
  const int* path() const { return path_.data(); }
  std::uint64_t visited() const { return visited_; }
  // Product over the path of G_{B \ prefix}(v, v) / 4.
  double weight() const { return weight_[depth_ - 1]; }
  // +1 if the path traverses u -> v, -1 for v -> u, 0 otherwise.
  int marked_state() const { return marked_[depth_ - 1]; }

  // out[i] = (L^{-1} g_x)_i with g_x = G(path, x).
  void project(int x, double* out) const {
    const double* gx = green_ + static_cast<std::size_t>(x) * n_;
    for (int i = 0; i < depth_; ++i) {
      const double* li = &lrows_[static_cast<std::size_t>(i) * kMaxVertices];
      double s = gx[path_[i]];
      for (int j = 0; j < i; ++j) s -= li[j] * out[j];
      out[i] = s;
    }
  }

  // G_{B \ path}(x, y) from projections px = project(x), py = project(y).
  double reduced_green(int x, int y, const double* px, const double* py) const {
    double s = green_[static_cast<std::size_t>(x) * n_ + y];
    for (int i = 0; i < depth_; ++i) s -= px[i] * py[i] / pivot_[i];
    return s;
  }

 private:
  template <class Visitor>
  void descend(int v, double parent_weight, int marked, Visitor& visit) {
    const int k = depth_;
    const double* gv = green_ + static_cast<std::size_t>(v) * n_;
    double* lk = &lrows_[static_cast<std::size_t>(k) * kMaxVertices];
    double y[kMaxVertices];
    for (int i = 0; i < k; ++i) {
      const double* li = &lrows_[static_cast<std::size_t>(i) * kMaxVertices];
      double s = gv[path_[i]];
      for (int j = 0; j < i; ++j) s -= li[j] * y[j];
      y[i] = s;
    }
    double pivot = gv[v];
    for (int i = 0; i < k; ++i) {
      lk[i] = y[i] / pivot_[i];
      pivot -= y[i] * lk[i];
    }
    pivot_[k] = pivot;
    path_[k] = v;
    weight_[k] = parent_weight * pivot * 0.25;
    marked_[k] = marked;
    depth_ = k + 1;
    visited_ |= std::uint64_t{1} << v;

    visit(*this);

    const bool forced = require_marked_ && marked == 0 && (v == mu_ || v == mv_);
    if (require_marked_ && marked == 0 && !forced && !can_reach_marked(v)) {
      visited_ &= ~(std::uint64_t{1} << v);
      depth_ = k;
      return;
    }
    for (int d = 0; d < 4; ++d) {
      const int u = nbrs_[v][static_cast<std::size_t>(d)];
      if (u < 0 || !((allowed_ >> u) & 1) || ((visited_ >> u) & 1)) continue;
      int next = marked;
      if (v == mu_ && u == mv_) next = 1;
      else if (v == mv_ && u == mu_) next = -1;
      if (forced && next == 0) continue;
      if (forward_only_ && next < 0) continue;
      descend(u, weight_[k], next, visit);
    }

    visited_ &= ~(std::uint64_t{1} << v);
    depth_ = k;
  }

  // Flood fill from v through unvisited allowed vertices.
  bool can_reach_marked(int v) const {
    const std::uint64_t free = allowed_ & ~visited_;
    std::uint64_t target = std::uint64_t{1} << mu_;
    if (!forward_only_) target |= std::uint64_t{1} << mv_;
    std::uint64_t reach = std::uint64_t{1} << v;
    std::uint64_t frontier = reach;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= nbr_mask_[static_cast<std::size_t>(std::countr_zero(f))];
      next &= free & ~reach;
      if (next & target) return true;
      reach |= next;
      frontier = next;
    }
    return false;
  }

  int n_;
  const double* green_;
  const std::array<int, 4>* nbrs_;
  std::uint64_t allowed_ = ~std::uint64_t{0};
  int mu_ = -1, mv_ = -1;
  bool require_marked_ = false;
  bool forward_only_ = false;
  std::array<std::uint64_t, kMaxVertices> nbr_mask_{};

  int depth_ = 0;
  std::uint64_t visited_ = 0;
  std::array<int, kMaxVertices> path_{};
  std::array<double, kMaxVertices> pivot_{};
  std::array<double, kMaxVertices> weight_{};
  std::array<int, kMaxVertices> marked_{};
  std::vector<double> lrows_;
};

}  // namespace lerw::detail
