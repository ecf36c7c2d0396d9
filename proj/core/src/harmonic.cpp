#include "lerw/harmonic.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include <Eigen/SparseCholesky>

namespace lerw {

namespace {

std::vector<char> deletion_mask(const LatticeDomain& A, std::span<const Point> deleted) {
  std::vector<char> mask(A.size(), 0);
  for (const Point p : deleted) {
    const int i = A.index_of(p);
    if (i < 0) throw Error(ErrorCode::OutOfDomain, "deleted vertex outside the domain");
    mask[static_cast<std::size_t>(i)] = 1;
  }
  return mask;
}

Eigen::SparseMatrix<double> masked_operator(const LatticeDomain& A, const EdgeSignTable* signs,
                                            const std::vector<char>& mask, bool identity_minus) {
  const auto n = static_cast<Eigen::Index>(A.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(A.size() * 5);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    const bool dead = mask[static_cast<std::size_t>(i)] != 0;
    if (identity_minus) trips.emplace_back(i, i, 1.0);
    if (dead) continue;
    for (int d = 0; d < 4; ++d) {
      const int j = A.neighbors(i)[static_cast<std::size_t>(d)];
      if (j < 0 || mask[static_cast<std::size_t>(j)]) continue;
      const double q = 0.25 * (signs ? signs->sign(i, d) : 1);
      trips.emplace_back(i, j, identity_minus ? -q : q);
    }
  }
  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return M;
}

}  // namespace

Eigen::SparseMatrix<double> transition_operator(const LatticeDomain& A, const EdgeSignTable* signs,
                                                std::span<const Point> deleted) {
  return masked_operator(A, signs, deletion_mask(A, deleted), false);
}

struct GreenTable::Impl {
  LatticeDomain domain;
  bool is_signed = false;
  std::vector<char> mask;
  Eigen::SparseMatrix<double> matrix;
  std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> dense;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> sparse;
  double log_det = 0.0;
  mutable std::mutex cache_mutex;
  mutable std::unordered_map<int, std::unique_ptr<Eigen::VectorXd>> cache;

  Impl(const LatticeDomain& A, const EdgeSignTable* signs, std::span<const Point> deleted)
      : domain(A), is_signed(signs != nullptr), mask(deletion_mask(A, deleted)) {
    matrix = masked_operator(A, signs, mask, true);
    if (A.size() <= kDenseLimit) {
      dense = std::make_unique<Eigen::LLT<Eigen::MatrixXd>>(Eigen::MatrixXd(matrix));
      if (dense->info() != Eigen::Success) throw Error(ErrorCode::SolveFailure, "dense Cholesky failed");
      log_det = 2.0 * dense->matrixLLT().diagonal().array().log().sum();
    } else {
      sparse = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(matrix);
      if (sparse->info() != Eigen::Success) throw Error(ErrorCode::SolveFailure, "sparse Cholesky failed");
      const Eigen::VectorXd D = sparse->vectorD();
      if ((D.array() <= 0.0).any()) throw Error(ErrorCode::SolveFailure, "matrix is not positive definite");
      log_det = D.array().log().sum();
    }
  }

  Eigen::VectorXd solve(Eigen::VectorXd rhs) const {
    for (Eigen::Index i = 0; i < rhs.size(); ++i) {
      if (mask[static_cast<std::size_t>(i)]) rhs[i] = 0.0;
    }
    Eigen::VectorXd x = dense ? Eigen::VectorXd(dense->solve(rhs)) : Eigen::VectorXd(sparse->solve(rhs));
    const double residual = (matrix * x - rhs).lpNorm<Eigen::Infinity>();
    const double scale = rhs.lpNorm<Eigen::Infinity>() + x.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual) || residual > 1e-12 * scale) {
      throw Error(ErrorCode::SolveFailure, "residual check failed");
    }
    return x;
  }
};

GreenTable::GreenTable(const LatticeDomain& A, const EdgeSignTable* signs, std::span<const Point> deleted)
    : impl_(std::make_shared<Impl>(A, signs, deleted)) {}

const LatticeDomain& GreenTable::domain() const { return impl_->domain; }
bool GreenTable::is_signed() const { return impl_->is_signed; }
bool GreenTable::active(int i) const { return i >= 0 && !impl_->mask[static_cast<std::size_t>(i)]; }
bool GreenTable::active(Point p) const { return active(impl_->domain.index_of(p)); }
double GreenTable::log_det() const { return impl_->log_det; }

Eigen::VectorXd GreenTable::solve(const Eigen::VectorXd& rhs) const { return impl_->solve(rhs); }

const Eigen::VectorXd& GreenTable::column(Point w) const {
  const int j = impl_->domain.index_of(w);
  if (j < 0) throw Error(ErrorCode::OutOfDomain, "point outside the domain");
  std::lock_guard<std::mutex> lock(impl_->cache_mutex);
  auto it = impl_->cache.find(j);
  if (it != impl_->cache.end()) return *it->second;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(impl_->domain.size()));
  rhs[j] = 1.0;
  auto col = std::make_unique<Eigen::VectorXd>(impl_->solve(rhs));
  if (impl_->mask[static_cast<std::size_t>(j)]) col->setZero();
  const Eigen::VectorXd& ref = *col;
  impl_->cache.emplace(j, std::move(col));
  return ref;
}

double GreenTable::operator()(Point z, Point w) const {
  const int i = impl_->domain.index_of(z);
  if (i < 0) throw Error(ErrorCode::OutOfDomain, "point outside the domain");
  if (!active(i)) return 0.0;
  return column(w)[i];
}

double green(const LatticeDomain& A, const EdgeSignTable* signs, Point z, Point w) {
  return GreenTable(A, signs)(z, w);
}

Eigen::MatrixXd dense_green(const LatticeDomain& A, const EdgeSignTable* signs, std::span<const Point> deleted,
                            double* log_det) {
  const std::vector<char> mask = deletion_mask(A, deleted);
  const Eigen::MatrixXd M(masked_operator(A, signs, mask, true));
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SolveFailure, "dense Cholesky failed");
  if (log_det) *log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  Eigen::MatrixXd G = llt.solve(Eigen::MatrixXd::Identity(M.rows(), M.cols()));
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    G.row(static_cast<Eigen::Index>(i)).setZero();
    G.col(static_cast<Eigen::Index>(i)).setZero();
  }
  return G;
}

double interior_poisson(const LatticeDomain& A, Point z, const BoundaryEdge& b) {
  return 0.25 * green(A, nullptr, z, b.inner);
}

double boundary_poisson(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b) {
  return green(A, nullptr, a.inner, b.inner) / 16.0;
}

namespace {

const std::vector<Point>& marked_pair() {
  static const std::vector<Point> pair{{0, 0}, {1, 0}};
  return pair;
}

}  // namespace

SignedExit::SignedExit(const LatticeDomain& A, const EdgeSignTable& signs)
    : signs_(signs), gqk_(A, &signs, marked_pair()) {
  if (!A.contains({0, 0}) || !A.contains({1, 0})) throw Error(ErrorCode::OutOfDomain, "{0,1} must lie in A");
  for (int which = 0; which < 2; ++which) {
    const Point z{which, 0};
    const int iz = A.index_of(z);
    Eigen::VectorXd src = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(A.size()));
    for (int d = 0; d < 4; ++d) {
      const int j = A.neighbors(iz)[static_cast<std::size_t>(d)];
      if (j >= 0 && gqk_.active(j)) src[j] += signs.sign(iz, d);
    }
    (which == 0 ? from_zero_ : from_one_) = gqk_.solve(src);
  }
}

double SignedExit::operator()(Point z, const BoundaryEdge& a) const {
  const LatticeDomain& A = gqk_.domain();
  if (!A.contains(z) || !A.contains(a.inner) || A.contains(a.outer)) {
    throw Error(ErrorCode::OutOfDomain, "signed_exit needs z in A and a boundary edge of A");
  }
  const bool a_in_k = gqk_.active(a.inner);
  const int ia = A.index_of(a.inner);
  const double exit_sign = signs_.sign(a.inner, a.outer);
  if (z == Point{0, 0} || z == Point{1, 0}) {
    const double direct = (z == a.inner) ? 0.25 * exit_sign : 0.0;
    const Eigen::VectorXd& v = (z.x == 0) ? from_zero_ : from_one_;
    return direct + (a_in_k ? v[ia] * exit_sign / 16.0 : 0.0);
  }
  if (!a_in_k) return 0.0;
  return 0.25 * exit_sign * gqk_.column(a.inner)[A.index_of(z)];
}

double signed_exit(const LatticeDomain& A, const EdgeSignTable& signs, Point z, const BoundaryEdge& a) {
  return SignedExit(A, signs)(z, a);
}

double log_det_i_minus_p(const LatticeDomain& A, const EdgeSignTable* signs) { return GreenTable(A, signs).log_det(); }

OddLoopMass odd_loop_mass(const LatticeDomain& A, const EdgeSignTable& signs) {
  const double delta = log_det_i_minus_p(A, &signs) - log_det_i_minus_p(A, nullptr);
  return {0.5 * delta, std::exp(delta)};
}

double loop_factor(std::span<const Point> V, const LatticeDomain& A, const EdgeSignTable* signs) {
  double f = 1.0;
  std::vector<Point> removed;
  for (const Point v : V) {
    f *= GreenTable(A, signs, removed)(v, v);
    removed.push_back(v);
  }
  return f;
}

double qbar(const LatticeDomain& A, const EdgeSignTable& signs) {
  const Point zero{0, 0};
  const Point one{1, 0};
  const double g00 = GreenTable(A, &signs)(zero, zero);
  const double g11 = GreenTable(A, &signs, std::span<const Point>(&zero, 1))(one, one);
  return 0.25 * g00 * g11;
}

}  // namespace lerw
