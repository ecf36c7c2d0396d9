#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lerw/lattice.hpp"

namespace lerw {

// Transition matrix of simple random walk killed on leaving A (and on entering a deleted vertex).
// With a sign table the entry for edge e is sign(e)/4.
Eigen::SparseMatrix<double> transition_operator(const LatticeDomain& A, const EdgeSignTable* signs = nullptr,
                                                std::span<const Point> deleted = {});

// Factorisation of I - P (signs == nullptr) or I - P^q on A minus `deleted`. Deleted vertices are
// masked: their rows and columns become those of the identity, so indices stay the domain's.
// Both matrices are symmetric positive definite, so a Cholesky factorisation is used.
class GreenTable {
 public:
  static constexpr std::size_t kDenseLimit = 400;

  GreenTable(const LatticeDomain& A, const EdgeSignTable* signs = nullptr, std::span<const Point> deleted = {});

  const LatticeDomain& domain() const;
  bool is_signed() const;
  bool active(int i) const;
  bool active(Point p) const;

  // G(z, w); zero if either point is deleted. Throws OutOfDomain for points outside A.
  double operator()(Point z, Point w) const;
  // G(., w) over domain indices (cached).
  const Eigen::VectorXd& column(Point w) const;
  // Solves (I - P) x = rhs on the active vertices; entries of rhs at deleted vertices are ignored.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  double log_det() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

double green(const LatticeDomain& A, const EdgeSignTable* signs, Point z, Point w);

// Full Green matrix by dense Cholesky, indexed by domain vertices; rows and columns of deleted
// vertices are zero. Intended for small domains. If log_det is given it receives log det(I - P).
Eigen::MatrixXd dense_green(const LatticeDomain& A, const EdgeSignTable* signs = nullptr,
                            std::span<const Point> deleted = {}, double* log_det = nullptr);

// H_A(z, b) = G_A(z, b_-) / 4.
double interior_poisson(const LatticeDomain& A, Point z, const BoundaryEdge& b);

// H_{dA}(a, b) = G_A(a_-, b_-) / 16.
double boundary_poisson(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b);

// R_A(z, a): signed weight of walks from z exiting through a with S[1, tau] avoiding {0, 1}.
class SignedExit {
 public:
  SignedExit(const LatticeDomain& A, const EdgeSignTable& signs);

  double operator()(Point z, const BoundaryEdge& a) const;
  const GreenTable& reduced_green() const { return gqk_; }

 private:
  EdgeSignTable signs_;
  GreenTable gqk_;
  Eigen::VectorXd from_zero_, from_one_;
};

double signed_exit(const LatticeDomain& A, const EdgeSignTable& signs, Point z, const BoundaryEdge& a);

double log_det_i_minus_p(const LatticeDomain& A, const EdgeSignTable* signs = nullptr);

struct OddLoopMass {
  double m = 0.0;      // m(J_A)
  double exp2m = 1.0;  // det(I - P^q) / det(I - P)
};

OddLoopMass odd_loop_mass(const LatticeDomain& A, const EdgeSignTable& signs);

// F(V; A) = prod_i G_{A \ {v_1..v_{i-1}}}(v_i, v_i), or F^q with a sign table.
double loop_factor(std::span<const Point> V, const LatticeDomain& A, const EdgeSignTable* signs = nullptr);

// q_A = G^q_A(0,0) G^q_{A \ {0}}(1,1) / 4.
double qbar(const LatticeDomain& A, const EdgeSignTable& signs);

}  // namespace lerw
