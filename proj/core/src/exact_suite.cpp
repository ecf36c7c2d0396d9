#include "lerw/exact_suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <thread>

#include "lerw/corpus.hpp"
#include "lerw/enumeration.hpp"
#include "lerw/harmonic.hpp"
#include "lerw/sampling.hpp"

namespace lerw {

namespace {

// Domains packed as bit masks over the window of all points a box containing the seed can reach.
class PackedCorpus {
 public:
  PackedCorpus(std::span<const Point> seed, int max_box) {
    Box sb{seed.front().x, seed.front().x, seed.front().y, seed.front().y};
    for (const Point p : seed) {
      sb.xmin = std::min(sb.xmin, p.x);
      sb.xmax = std::max(sb.xmax, p.x);
      sb.ymin = std::min(sb.ymin, p.y);
      sb.ymax = std::max(sb.ymax, p.y);
    }
    x0_ = sb.xmax - max_box + 1;
    y0_ = sb.ymax - max_box + 1;
    width_ = sb.xmin + max_box - x0_;
    const int height = sb.ymin + max_box - y0_;
    if (width_ * height > 64) throw Error(ErrorCode::TooLarge, "box too large for the exact corpus");
    enumerate_domains(seed, max_box, max_box, [&](const std::vector<Point>& pts) {
      std::uint64_t mask = 0;
      for (const Point p : pts) mask |= std::uint64_t{1} << ((p.y - y0_) * width_ + (p.x - x0_));
      masks_.push_back(mask);
    });
  }

  std::size_t size() const { return masks_.size(); }

  std::vector<Point> points(std::size_t i) const {
    std::vector<Point> pts;
    std::uint64_t m = masks_[i];
    while (m) {
      const int bit = __builtin_ctzll(m);
      m &= m - 1;
      pts.push_back({x0_ + bit % width_, y0_ + bit / width_});
    }
    return pts;
  }

 private:
  int x0_ = 0, y0_ = 0, width_ = 0;
  std::vector<std::uint64_t> masks_;
};

struct Tally {
  long long instances = 0;
  long long failures = 0;
  double max_rel = 0.0;
  double max_abs = 0.0;

  void add(double lhs, double rhs, Tolerance tol) {
    ++instances;
    const double diff = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    max_abs = std::max(max_abs, diff);
    if (tol.relative * scale >= tol.absolute) max_rel = std::max(max_rel, diff / scale);
    if (!within(lhs, rhs, tol)) ++failures;
  }
};

template <class Check>
CorpusResult sweep(const std::string& name, std::span<const Point> seed, int max_box, Tolerance tol,
                   unsigned workers, const RecordSink& sink, Check check) {
  const auto start = std::chrono::steady_clock::now();
  const PackedCorpus corpus(seed, max_box);
  if (workers == 0) workers = default_workers();

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (corpus.size() + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::vector<std::vector<DomainRecord>> pending(chunks);
  std::vector<char> done(chunks, 0);
  std::size_t flushed = 0;
  CorpusResult result;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        Tally chunk_tally;
        std::vector<DomainRecord> records;
        for (std::size_t i = c * kChunk; i < std::min(corpus.size(), (c + 1) * kChunk); ++i) {
          DomainRecord rec;
          rec.vertices = corpus.points(i);
          const LatticeDomain A = LatticeDomain::validate(rec.vertices);
          Tally t;
          check(A, t);
          rec.instances = t.instances;
          rec.max_relative_error = t.max_rel;
          rec.max_absolute_error = t.max_abs;
          rec.pass = t.failures == 0;
          chunk_tally.instances += t.instances;
          chunk_tally.failures += t.failures;
          chunk_tally.max_rel = std::max(chunk_tally.max_rel, t.max_rel);
          chunk_tally.max_abs = std::max(chunk_tally.max_abs, t.max_abs);
          if (sink) records.push_back(std::move(rec));
        }
        std::lock_guard<std::mutex> lock(mutex);
        result.instances += chunk_tally.instances;
        result.failures += chunk_tally.failures;
        result.max_relative_error = std::max(result.max_relative_error, chunk_tally.max_rel);
        result.max_absolute_error = std::max(result.max_absolute_error, chunk_tally.max_abs);
        pending[c] = std::move(records);
        done[c] = 1;
        while (flushed < chunks && done[flushed]) {
          if (sink) {
            for (const DomainRecord& r : pending[flushed]) sink(r);
          }
          pending[flushed].clear();
          ++flushed;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  result.check = name;
  result.max_box = max_box;
  result.domains = static_cast<long long>(corpus.size());
  result.tolerance = tol;
  result.pass = result.failures == 0 && result.domains > 0;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

template <class F>
void for_each_pair(const LatticeDomain& A, F f) {
  const std::vector<BoundaryEdge> edges = boundary_edges(A);
  for (const BoundaryEdge& a : edges) {
    for (const BoundaryEdge& b : edges) {
      if (!(a == b)) f(a, b);
    }
  }
}

}  // namespace

CorpusResult verify_identity_corpus(int max_box, unsigned workers, const RecordSink& sink) {
  const std::vector<Point> seed = branch_block();
  return sweep("identity", seed, max_box, kIdentityTolerance, workers, sink, [](const LatticeDomain& A, Tally& t) {
    const Point zero{0, 0};
    const Point one{1, 0};
    const std::vector<Point> pair{zero, one};
    const EdgeSignTable signs = build_branch_cut(A);
    double log_det = 0.0, log_det_q = 0.0;
    const Eigen::MatrixXd G = dense_green(A, nullptr, {}, &log_det);
    const Eigen::MatrixXd Gq = dense_green(A, &signs, {}, &log_det_q);
    const Eigen::MatrixXd GqK = dense_green(A, &signs, pair);
    const int i0 = A.index_of(zero);
    const int i1 = A.index_of(one);
    const double exp2m = std::exp(log_det_q - log_det);
    // G^q_{A \ 0}(1,1) as a Schur complement of G^q_A.
    const double qbar = 0.25 * Gq(i0, i0) * (Gq(i1, i1) - Gq(i1, i0) * Gq(i0, i1) / Gq(i0, i0));

    // R_A(z, a) without the exit sign, indexed by a_-.
    auto signed_exit = [&](int z, int x) {
      double value = z == x ? 4.0 : 0.0;
      for (int d = 0; d < 4; ++d) {
        const int y = A.neighbors(z)[static_cast<std::size_t>(d)];
        if (y >= 0 && y != i0 && y != i1) value += signs.sign(z, d) * GqK(y, x);
      }
      return value / 16.0;
    };

    const SawSums sums = enumerate_saw_sums(A, true);
    for_each_pair(A, [&](const BoundaryEdge& a, const BoundaryEdge& b) {
      const int ia = A.index_of(a.inner);
      const int ib = A.index_of(b.inner);
      const double h = G(ia, ib) / 16.0;
      const double lhs = (sums.at(sums.forward, a.inner, b.inner) + sums.at(sums.backward, a.inner, b.inner)) / h;
      const double det = signed_exit(i0, ia) * signed_exit(i1, ib) - signed_exit(i0, ib) * signed_exit(i1, ia);
      const double rhs = qbar * exp2m * std::abs(det) / h;
      t.add(lhs, rhs, kIdentityTolerance);
    });
  });
}

CorpusResult verify_fomin_corpus(int max_box, unsigned workers, const RecordSink& sink) {
  const std::vector<Point> seed{{0, 0}, {1, 0}};
  return sweep("fomin", seed, max_box, kIdentityTolerance, workers, sink, [](const LatticeDomain& A, Tally& t) {
    if (A.size() < 3) return;
    const FominTables tables = fomin_tables(A);
    for_each_pair(A, [&](const BoundaryEdge& a, const BoundaryEdge& b) {
      const double rhs = tables.at(tables.rhs, a.inner, b.inner);
      t.add(tables.at(tables.lhs, a.inner, b.inner), rhs, kIdentityTolerance);
      if (!within(rhs, tables.at(tables.rhs_chain, a.inner, b.inner), {1e-10, 1e-16})) ++t.failures;
    });
  });
}

CorpusResult verify_partition_corpus(int max_box, unsigned workers, const RecordSink& sink) {
  const std::vector<Point> seed{{0, 0}, {1, 0}};
  const Tolerance tol{1e-10, 0.0};
  return sweep("partition", seed, max_box, tol, workers, sink, [tol](const LatticeDomain& A, Tally& t) {
    const SawSums sums = enumerate_saw_sums(A, false);
    const GreenTable green(A);
    for_each_pair(A, [&](const BoundaryEdge& a, const BoundaryEdge& b) {
      t.add(sums.at(sums.total, a.inner, b.inner), green(a.inner, b.inner) / 16.0, tol);
    });
  });
}

}  // namespace lerw
