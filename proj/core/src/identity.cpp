#include "lerw/identity.hpp"

#include <algorithm>
#include <cmath>

#include "saw_engine.hpp"

namespace lerw {

bool within(double x, double y, Tolerance tol) {
  return std::abs(x - y) <= tol.relative * std::max(std::abs(x), std::abs(y)) + tol.absolute;
}

double relative_error(double x, double y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

IdentityEvaluator::IdentityEvaluator(const LatticeDomain& A, CutPriority priority)
    : IdentityEvaluator(A, build_branch_cut(A, priority)) {}

IdentityEvaluator::IdentityEvaluator(const LatticeDomain& A, const EdgeSignTable& signs)
    : green_(A), exit_(A, signs), qbar_(lerw::qbar(A, signs)), exp2m_(odd_loop_mass(A, signs).exp2m) {}

double IdentityEvaluator::boundary_poisson(const BoundaryEdge& a, const BoundaryEdge& b) const {
  return green_(a.inner, b.inner) / 16.0;
}

double IdentityEvaluator::numerator(const BoundaryEdge& a, const BoundaryEdge& b) const {
  const Point zero{0, 0};
  const Point one{1, 0};
  const double det = exit_(zero, a) * exit_(one, b) - exit_(zero, b) * exit_(one, a);
  return qbar_ * exp2m_ * std::abs(det);
}

double IdentityEvaluator::probability(const BoundaryEdge& a, const BoundaryEdge& b) const {
  const double h = boundary_poisson(a, b);
  if (!(h > 0.0)) throw Error(ErrorCode::ZeroConditioningMass, "H(a, b) vanishes");
  return numerator(a, b) / h;
}

double identity_rhs(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b) {
  return IdentityEvaluator(A).probability(a, b);
}

IdentityReport identity_check(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b) {
  IdentityReport r;
  r.lhs = exact_edge_probability(A, a, b);
  r.rhs = identity_rhs(A, a, b);
  r.relative_error = relative_error(r.lhs, r.rhs);
  r.pass = within(r.lhs, r.rhs, kIdentityTolerance);
  return r;
}

namespace {

// Weight of walks that start at x (not in K), step into K and leave A through e.
double edge_kernel(const LatticeDomain& A, const GreenTable& gk, const EdgeSignTable* signs, Point x,
                   const BoundaryEdge& e) {
  const double exit_sign = signs ? signs->sign(e.inner, e.outer) : 1.0;
  double sum = x == e.inner ? 4.0 * exit_sign : 0.0;
  if (gk.active(e.inner)) {
    const Eigen::VectorXd& col = gk.column(e.inner);
    const int ix = A.index_of(x);
    for (int d = 0; d < 4; ++d) {
      const int y = A.neighbors(ix)[static_cast<std::size_t>(d)];
      if (y < 0 || !gk.active(y)) continue;
      sum += (signs ? signs->sign(ix, d) : 1) * col[y] * exit_sign;
    }
  }
  return sum / 16.0;
}

}  // namespace

SplitSums identity_split(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                         std::span<const Point> lambda) {
  if (lambda.size() < 2 || !is_self_avoiding(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be a SAW with at least one step");
  }
  bool has_marked = false;
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i) {
    if (lambda[i] == Point{0, 0} && lambda[i + 1] == Point{1, 0}) has_marked = true;
    if (!adjacent(lambda[i], lambda[i + 1])) throw Error(ErrorCode::InvalidArgument, "lambda is not a walk");
  }
  if (!has_marked) throw Error(ErrorCode::InvalidArgument, "lambda must contain the step 0 -> 1");
  for (const Point x : lambda) {
    const int i = A.index_of(x);
    if (i < 0) throw Error(ErrorCode::LambdaNotInterior, "lambda leaves the domain");
    for (const int j : A.neighbors(i)) {
      if (j < 0) throw Error(ErrorCode::LambdaNotInterior, "lambda touches the boundary");
    }
  }
  const EdgeSignTable signs = build_branch_cut(A);
  const GreenTable gk(A, nullptr, lambda);
  const GreenTable gqk(A, &signs, lambda);
  const Point x0 = lambda.front();
  const Point xk = lambda.back();
  const double delta = edge_kernel(A, gk, nullptr, x0, a) * edge_kernel(A, gk, nullptr, xk, b) -
                       edge_kernel(A, gk, nullptr, x0, b) * edge_kernel(A, gk, nullptr, xk, a);
  const double delta_q = edge_kernel(A, gqk, &signs, x0, a) * edge_kernel(A, gqk, &signs, xk, b) -
                         edge_kernel(A, gqk, &signs, x0, b) * edge_kernel(A, gqk, &signs, xk, a);
  const double f = loop_factor(lambda, A);
  const double fq = loop_factor(lambda, A, &signs);
  const double e2m = odd_loop_mass(A, signs).exp2m;
  const double p = std::pow(0.25, static_cast<double>(lambda.size() - 1));
  const double even = e2m * fq * std::abs(delta_q);
  return {0.5 * p * (even + f * delta), 0.5 * p * (even - f * delta)};
}

double FominTables::at(const std::vector<double>& table, Point a_inner, Point b_inner) const {
  const auto s = std::find(ends.begin(), ends.end(), a_inner);
  const auto t = std::find(ends.begin(), ends.end(), b_inner);
  if (s == ends.end() || t == ends.end()) throw Error(ErrorCode::OutOfDomain, "not a boundary vertex");
  return table[static_cast<std::size_t>(s - ends.begin()) * ends.size() + static_cast<std::size_t>(t - ends.begin())];
}

FominTables fomin_tables(const LatticeDomain& A, std::size_t limit) {
  const int n = static_cast<int>(A.size());
  if (A.size() > limit || n > detail::SawEngine::kMaxVertices) {
    throw Error(ErrorCode::TooLarge, "enumeration limited to " + std::to_string(limit) + " vertices");
  }
  const int zero = A.index_of({0, 0});
  const int one = A.index_of({1, 0});
  if (zero < 0 || one < 0) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "A \\ {0,1} is empty");

  FominTables out;
  std::vector<int> ends;
  for (int i = 0; i < n; ++i) {
    const auto& nb = A.neighbors(i);
    if (std::find(nb.begin(), nb.end(), -1) == nb.end()) continue;
    ends.push_back(i);
    out.ends.push_back(A.vertex(i));
  }
  const std::size_t m = ends.size();
  out.lhs.assign(m * m, 0.0);
  out.rhs.assign(m * m, 0.0);
  out.rhs_chain.assign(m * m, 0.0);
  const std::vector<Point> pair{{0, 0}, {1, 0}};

  // Enumerated side.
  const Eigen::MatrixXd gk_dense = dense_green(A, nullptr, pair);
  std::vector<double> gk(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gk[static_cast<std::size_t>(i) * n + j] = gk_dense(i, j);
  }
  std::vector<std::array<int, 4>> nbrs(A.size());
  for (int i = 0; i < n; ++i) nbrs[static_cast<std::size_t>(i)] = A.neighbors(i);
  detail::SawEngine engine(n, gk.data(), nbrs.data());
  std::uint64_t k_mask = 0;
  for (int i = 0; i < n; ++i) {
    if (i != zero && i != one) k_mask |= std::uint64_t{1} << i;
  }
  engine.set_allowed(k_mask);

  auto touches = [&](int v, int target) {
    const auto& nb = nbrs[static_cast<std::size_t>(v)];
    return std::find(nb.begin(), nb.end(), target) != nb.end();
  };

  double proj_y[4][detail::SawEngine::kMaxVertices];
  double proj_t[detail::SawEngine::kMaxVertices];
  for (std::size_t si = 0; si < m; ++si) {
    const int s = ends[si];
    for (int pass = 0; pass < 2; ++pass) {
      const int target = pass == 0 ? zero : one;
      const int other = pass == 0 ? one : zero;
      const double sign = pass == 0 ? 1.0 : -1.0;
      // Adds c * M(t, other; K \ eta) to every entry of row s.
      auto accumulate = [&](double c, const detail::SawEngine* e) {
        const std::uint64_t removed = e ? e->visited() : 0;
        int ys[4];
        int ny = 0;
        for (const int y : nbrs[static_cast<std::size_t>(other)]) {
          if (y >= 0 && ((k_mask & ~removed) >> y & 1)) {
            if (e) e->project(y, proj_y[ny]);
            ys[ny++] = y;
          }
        }
        for (std::size_t ti = 0; ti < m; ++ti) {
          const int t = ends[ti];
          double value = t == other ? 0.25 : 0.0;
          if ((k_mask & ~removed) >> t & 1) {
            if (e) e->project(t, proj_t);
            double g = 0.0;
            for (int j = 0; j < ny; ++j) {
              g += e ? e->reduced_green(t, ys[j], proj_t, proj_y[j]) : gk[static_cast<std::size_t>(t) * n + ys[j]];
            }
            value += g / 16.0;
          }
          out.lhs[si * m + ti] += sign * c * value;
        }
      };
      if (s == target) {
        accumulate(0.25, nullptr);
      } else if (s != other) {
        engine.run(s, [&](const detail::SawEngine& e) {
          if (touches(e.tip(), target)) accumulate(0.25 * e.weight(), &e);
        });
      }
    }
  }

  // Determinant side from G_K.
  const GreenTable table(A, nullptr, pair);
  auto kernel = [&](int x, int target) {
    double value = x == target ? 0.25 : 0.0;
    if (table.active(x)) {
      for (const int y : nbrs[static_cast<std::size_t>(target)]) {
        if (y >= 0 && table.active(y)) value += table.column(A.vertex(y))[x] / 16.0;
      }
    }
    return value;
  };

  // Determinant side from the killed chain: u_t = P_K u_t + r_t, r_t(x) = #{x ~ t} / 4.
  auto hitting = [&](int target) {
    std::vector<double> u(A.size(), 0.0), r(A.size(), 0.0), next(A.size(), 0.0);
    for (const int y : nbrs[static_cast<std::size_t>(target)]) {
      if (y >= 0 && (k_mask >> y & 1)) r[static_cast<std::size_t>(y)] += 0.25;
    }
    for (int iter = 0; iter < 1000000; ++iter) {
      double change = 0.0, size = 0.0;
      for (int x = 0; x < n; ++x) {
        if (!(k_mask >> x & 1)) continue;
        double v = r[static_cast<std::size_t>(x)];
        for (const int y : nbrs[static_cast<std::size_t>(x)]) {
          if (y >= 0 && (k_mask >> y & 1)) v += 0.25 * u[static_cast<std::size_t>(y)];
        }
        next[static_cast<std::size_t>(x)] = v;
        change = std::max(change, std::abs(v - u[static_cast<std::size_t>(x)]));
        size = std::max(size, std::abs(v));
      }
      u.swap(next);
      if (change <= 1e-17 * size) return u;
    }
    throw Error(ErrorCode::SolveFailure, "value iteration did not converge");
  };
  const std::vector<double> u0 = hitting(zero);
  const std::vector<double> u1 = hitting(one);
  auto chain = [&](int x, int target) {
    double value = x == target ? 0.25 : 0.0;
    if (k_mask >> x & 1) value += 0.25 * (target == zero ? u0 : u1)[static_cast<std::size_t>(x)];
    return value;
  };

  for (std::size_t si = 0; si < m; ++si) {
    for (std::size_t ti = 0; ti < m; ++ti) {
      const int s = ends[si];
      const int t = ends[ti];
      out.rhs[si * m + ti] = kernel(s, zero) * kernel(t, one) - kernel(s, one) * kernel(t, zero);
      out.rhs_chain[si * m + ti] = chain(s, zero) * chain(t, one) - chain(s, one) * chain(t, zero);
    }
  }
  return out;
}

FominReport fomin_check(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b) {
  for (const BoundaryEdge& e : {a, b}) {
    if (!A.contains(e.inner) || A.contains(e.outer) || !adjacent(e.inner, e.outer)) {
      throw Error(ErrorCode::EdgeOutsideDomain, "not a boundary edge of the domain");
    }
  }
  const FominTables t = fomin_tables(A);
  FominReport r;
  r.lhs = t.at(t.lhs, a.inner, b.inner);
  r.rhs = t.at(t.rhs, a.inner, b.inner);
  r.rhs_chain = t.at(t.rhs_chain, a.inner, b.inner);
  r.pass = within(r.lhs, r.rhs, kIdentityTolerance) && within(r.rhs, r.rhs_chain, {1e-10, 1e-16});
  return r;
}

}  // namespace lerw
