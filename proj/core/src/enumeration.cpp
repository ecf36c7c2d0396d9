#include "lerw/enumeration.hpp"

#include <string>

#include "lerw/harmonic.hpp"
#include "saw_engine.hpp"

namespace lerw {

namespace {

void check_size(const LatticeDomain& A, std::size_t limit) {
  if (A.size() > limit || A.size() > static_cast<std::size_t>(detail::SawEngine::kMaxVertices)) {
    throw Error(ErrorCode::TooLarge, "enumeration limited to " + std::to_string(limit) + " vertices");
  }
}

void check_edge(const LatticeDomain& A, const BoundaryEdge& e) {
  if (!A.contains(e.inner) || A.contains(e.outer) || !adjacent(e.inner, e.outer)) {
    throw Error(ErrorCode::EdgeOutsideDomain, "not a boundary edge of the domain");
  }
}

// Row-major copy so that the engine can index rows by vertex.
std::vector<double> row_major(const Eigen::MatrixXd& G) {
  std::vector<double> out(static_cast<std::size_t>(G.size()));
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out.data(), G.rows(),
                                                                                      G.cols()) = G;
  return out;
}

struct Prepared {
  std::vector<double> green;
  std::vector<std::array<int, 4>> nbrs;
  int zero = -1, one = -1;
};

Prepared prepare(const LatticeDomain& A) {
  Prepared p;
  p.green = row_major(dense_green(A));
  p.nbrs.resize(A.size());
  for (int i = 0; i < static_cast<int>(A.size()); ++i) p.nbrs[static_cast<std::size_t>(i)] = A.neighbors(i);
  p.zero = A.index_of({0, 0});
  p.one = A.index_of({1, 0});
  return p;
}

bool on_boundary(const LatticeDomain& A, int i) {
  for (const int j : A.neighbors(i)) {
    if (j < 0) return true;
  }
  return false;
}

}  // namespace

int SawSums::index_of(Point p) const {
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i] == p) return static_cast<int>(i);
  }
  return -1;
}

double SawSums::at(const std::vector<double>& table, Point start, Point end) const {
  const int s = index_of(start);
  const int t = index_of(end);
  if (s < 0 || t < 0) throw Error(ErrorCode::OutOfDomain, "not a boundary vertex");
  return table[static_cast<std::size_t>(s) * ends.size() + static_cast<std::size_t>(t)];
}

SawSums enumerate_saw_sums(const LatticeDomain& A, bool marked_only, std::size_t limit) {
  check_size(A, limit);
  const Prepared p = prepare(A);
  if (marked_only && (p.zero < 0 || p.one < 0)) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");

  SawSums sums;
  std::vector<int> local(A.size(), -1);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    if (!on_boundary(A, i)) continue;
    local[static_cast<std::size_t>(i)] = static_cast<int>(sums.ends.size());
    sums.ends.push_back(A.vertex(i));
  }
  const std::size_t nb = sums.ends.size();
  if (!marked_only) sums.total.assign(nb * nb, 0.0);
  sums.forward.assign(nb * nb, 0.0);
  sums.backward.assign(nb * nb, 0.0);

  detail::SawEngine engine(static_cast<int>(A.size()), p.green.data(), p.nbrs.data());
  // Reversal maps SAWs stepping 1 -> 0 onto SAWs stepping 0 -> 1 and keeps p-hat, since the loop
  // factor of a path is the determinant of G on its vertex set. Marked-only runs enumerate the
  // forward direction and transpose it.
  engine.set_marked(p.zero, p.one, marked_only, marked_only);
  for (int s = 0; s < static_cast<int>(A.size()); ++s) {
    const int ls = local[static_cast<std::size_t>(s)];
    if (ls < 0) continue;
    const std::size_t row = static_cast<std::size_t>(ls) * nb;
    engine.run(s, [&](const detail::SawEngine& e) {
      const int lt = local[static_cast<std::size_t>(e.tip())];
      if (lt < 0) return;
      const double w = 0.25 * e.weight();
      const std::size_t k = row + static_cast<std::size_t>(lt);
      if (!marked_only) sums.total[k] += w;
      const int m = e.marked_state();
      if (m > 0) sums.forward[k] += w;
      else if (m < 0) sums.backward[k] += w;
    });
  }
  if (marked_only) {
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < nb; ++j) sums.backward[i * nb + j] = sums.forward[j * nb + i];
    }
  }
  return sums;
}

double exact_edge_probability(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                              std::size_t limit) {
  check_size(A, limit);
  check_edge(A, a);
  check_edge(A, b);
  const Prepared p = prepare(A);
  if (p.zero < 0 || p.one < 0) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");
  const int target = A.index_of(b.inner);
  double sum = 0.0;
  detail::SawEngine engine(static_cast<int>(A.size()), p.green.data(), p.nbrs.data());
  engine.set_marked(p.zero, p.one, true);
  engine.run(A.index_of(a.inner), [&](const detail::SawEngine& e) {
    if (e.tip() == target && e.marked_state() != 0) sum += 0.25 * e.weight();
  });
  const double h = p.green[static_cast<std::size_t>(A.index_of(a.inner)) * A.size() + static_cast<std::size_t>(target)] / 16.0;
  return sum / h;
}

double saw_partition_sum(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b, std::size_t limit) {
  check_size(A, limit);
  check_edge(A, a);
  check_edge(A, b);
  const Prepared p = prepare(A);
  const int target = A.index_of(b.inner);
  double sum = 0.0;
  detail::SawEngine engine(static_cast<int>(A.size()), p.green.data(), p.nbrs.data());
  engine.run(A.index_of(a.inner), [&](const detail::SawEngine& e) {
    if (e.tip() == target) sum += 0.25 * e.weight();
  });
  return sum;
}

SplitSums enumerate_split(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                          std::span<const Point> lambda, std::size_t limit) {
  check_size(A, limit);
  check_edge(A, a);
  check_edge(A, b);
  if (lambda.size() < 2 || !is_self_avoiding(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be a SAW with at least one step");
  }
  std::vector<int> idx;
  for (const Point q : lambda) {
    const int i = A.index_of(q);
    if (i < 0) throw Error(ErrorCode::OutOfDomain, "lambda leaves the domain");
    idx.push_back(i);
  }
  const Prepared p = prepare(A);
  const int target = A.index_of(b.inner);
  const int k = static_cast<int>(idx.size());
  SplitSums out;
  detail::SawEngine engine(static_cast<int>(A.size()), p.green.data(), p.nbrs.data());
  engine.run(A.index_of(a.inner), [&](const detail::SawEngine& e) {
    if (e.tip() != target || e.depth() < k) return;
    const int* path = e.path();
    for (int start = 0; start + k <= e.depth(); ++start) {
      bool fwd = true, bwd = true;
      for (int j = 0; j < k && (fwd || bwd); ++j) {
        fwd = fwd && path[start + j] == idx[static_cast<std::size_t>(j)];
        bwd = bwd && path[start + j] == idx[static_cast<std::size_t>(k - 1 - j)];
      }
      if (fwd) out.plus += 0.25 * e.weight();
      if (bwd) out.minus += 0.25 * e.weight();
      if (fwd || bwd) return;
    }
  });
  return out;
}

}  // namespace lerw
