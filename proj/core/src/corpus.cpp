#include "lerw/corpus.hpp"

#include <algorithm>

namespace lerw {

std::vector<Point> branch_block() { return {{0, -1}, {0, 0}, {1, -1}, {1, 0}}; }

namespace {

class Redelmeier {
 public:
  Redelmeier(std::span<const Point> seed, int max_w, int max_h,
             const std::function<void(const std::vector<Point>&)>& visit)
      : max_w_(max_w), max_h_(max_h), visit_(visit) {
    Box sb{seed[0].x, seed[0].x, seed[0].y, seed[0].y};
    for (const Point p : seed) {
      sb.xmin = std::min(sb.xmin, p.x);
      sb.xmax = std::max(sb.xmax, p.x);
      sb.ymin = std::min(sb.ymin, p.y);
      sb.ymax = std::max(sb.ymax, p.y);
    }
    if (sb.width() > max_w || sb.height() > max_h) throw Error(ErrorCode::InvalidArgument, "seed exceeds the box");
    // Window of every cell that can belong to an admissible set, plus a one-cell frame.
    x0_ = sb.xmax - max_w + 1 - 1;
    y0_ = sb.ymax - max_h + 1 - 1;
    w_ = (sb.xmin + max_w - 1) - x0_ + 2;
    h_ = (sb.ymin + max_h - 1) - y0_ + 2;
    in_.assign(static_cast<std::size_t>(w_ * h_), 0);
    reached_.assign(static_cast<std::size_t>(w_ * h_), 0);
    seen_.assign(static_cast<std::size_t>(w_ * h_), 0);
    for (const Point p : seed) {
      const int c = cell(p);
      in_[static_cast<std::size_t>(c)] = 1;
      reached_[static_cast<std::size_t>(c)] = 1;
      members_.push_back(c);
    }
    box_ = sb;
  }

  long long run() {
    std::vector<int> untried;
    for (const int c : members_) push_new_neighbors(c, untried);
    report();
    recurse(untried);
    return count_;
  }

 private:
  int cell(Point p) const { return (p.y - y0_) * w_ + (p.x - x0_); }
  Point point(int c) const { return {c % w_ + x0_, c / w_ + y0_}; }
  bool in_window(int c) const {
    const int cx = c % w_;
    const int cy = c / w_;
    return cx > 0 && cy > 0 && cx < w_ - 1 && cy < h_ - 1;
  }

  void push_new_neighbors(int c, std::vector<int>& untried) {
    const int offsets[4] = {1, w_, -1, -w_};
    for (const int off : offsets) {
      const int nc = c + off;
      if (!in_window(nc) || reached_[static_cast<std::size_t>(nc)]) continue;
      reached_[static_cast<std::size_t>(nc)] = 1;
      untried.push_back(nc);
    }
  }

  void recurse(std::vector<int> untried) {
    while (!untried.empty()) {
      const int c = untried.back();
      untried.pop_back();
      const Point p = point(c);
      const Box saved = box_;
      Box nb{std::min(box_.xmin, p.x), std::max(box_.xmax, p.x), std::min(box_.ymin, p.y), std::max(box_.ymax, p.y)};
      if (nb.width() > max_w_ || nb.height() > max_h_) continue;
      box_ = nb;
      in_[static_cast<std::size_t>(c)] = 1;
      members_.push_back(c);
      std::vector<int> next = untried;
      const std::size_t before = next.size();
      push_new_neighbors(c, next);
      report();
      recurse(next);
      for (std::size_t k = before; k < next.size(); ++k) reached_[static_cast<std::size_t>(next[k])] = 0;
      members_.pop_back();
      in_[static_cast<std::size_t>(c)] = 0;
      box_ = saved;
    }
  }

  bool complement_connected() {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::vector<int>& stack = stack_;
    stack.assign(1, 0);
    seen_[0] = 1;
    int count = 0;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      ++count;
      const int cx = c % w_;
      const int cy = c / w_;
      const int nbrs[4][2] = {{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
      for (const auto& q : nbrs) {
        if (q[0] < 0 || q[1] < 0 || q[0] >= w_ || q[1] >= h_) continue;
        const int nc = q[1] * w_ + q[0];
        if (seen_[static_cast<std::size_t>(nc)] || in_[static_cast<std::size_t>(nc)]) continue;
        seen_[static_cast<std::size_t>(nc)] = 1;
        stack.push_back(nc);
      }
    }
    return count == w_ * h_ - static_cast<int>(members_.size());
  }

  void report() {
    if (!complement_connected()) return;
    points_.clear();
    for (const int c : members_) points_.push_back(point(c));
    std::sort(points_.begin(), points_.end());
    ++count_;
    visit_(points_);
  }

  int max_w_, max_h_;
  const std::function<void(const std::vector<Point>&)>& visit_;
  int x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
  std::vector<char> in_, reached_, seen_;
  std::vector<int> members_, stack_;
  std::vector<Point> points_;
  Box box_;
  long long count_ = 0;
};

}  // namespace

long long enumerate_domains(std::span<const Point> seed, int max_width, int max_height,
                            const std::function<void(const std::vector<Point>&)>& visit) {
  if (seed.empty()) throw Error(ErrorCode::InvalidArgument, "seed must be nonempty");
  Redelmeier r(seed, max_width, max_height, visit);
  return r.run();
}

}  // namespace lerw
