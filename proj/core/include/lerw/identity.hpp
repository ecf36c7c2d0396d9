#pragma once

#include <span>
#include <vector>

#include "lerw/enumeration.hpp"
#include "lerw/harmonic.hpp"
#include "lerw/lattice.hpp"

namespace lerw {

struct Tolerance {
  double relative = 1e-9;
  double absolute = 0.0;
};

// |x - y| <= relative * max(|x|, |y|) + absolute.
bool within(double x, double y, Tolerance tol);

// |x - y| / max(|x|, |y|), and 0 when both vanish.
double relative_error(double x, double y);

// Determinant side of the edge identity on one domain:
// P(a, b; A) = qbar_A exp{2 m(J_A)} |R_A(0,a) R_A(1,b) - R_A(0,b) R_A(1,a)| / H_{dA}(a, b).
class IdentityEvaluator {
 public:
  explicit IdentityEvaluator(const LatticeDomain& A, CutPriority priority = CutPriority::DownFirst);
  IdentityEvaluator(const LatticeDomain& A, const EdgeSignTable& signs);

  double qbar() const { return qbar_; }
  double exp2m() const { return exp2m_; }
  double signed_exit(Point z, const BoundaryEdge& a) const { return exit_(z, a); }
  double boundary_poisson(const BoundaryEdge& a, const BoundaryEdge& b) const;
  // qbar exp{2m} |det|, i.e. P(a, b; A) H_{dA}(a, b).
  double numerator(const BoundaryEdge& a, const BoundaryEdge& b) const;
  double probability(const BoundaryEdge& a, const BoundaryEdge& b) const;

 private:
  GreenTable green_;
  SignedExit exit_;
  double qbar_ = 0.0;
  double exp2m_ = 1.0;
};

double identity_rhs(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b);

struct IdentityReport {
  double lhs = 0.0;  // enumeration
  double rhs = 0.0;  // determinant formula
  double relative_error = 0.0;
  bool pass = false;
};

inline constexpr Tolerance kIdentityTolerance{1e-9, 1e-15};

IdentityReport identity_check(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b);

// Refinement for a prescribed SAW lambda = [x_0, ..., x_k] containing the step 0 -> 1, with
// K = A \ lambda:
//   plus  = p(lambda)/2 [e^{2m} F^q(lambda; A) |Delta^q_K| + F(lambda; A) Delta_K]
//   minus = p(lambda)/2 [e^{2m} F^q(lambda; A) |Delta^q_K| - F(lambda; A) Delta_K]
// Delta_K = H_{dK}(x_0, a) H_{dK}(x_k, b) - H_{dK}(x_0, b) H_{dK}(x_k, a).
// Every vertex of lambda must have its four neighbours in A (LambdaNotInterior otherwise).
SplitSums identity_split(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b,
                         std::span<const Point> lambda);

// Walk weights from an edge to a target vertex through K = A \ {0,1}, for all boundary vertices.
struct FominTables {
  std::vector<Point> ends;        // boundary vertices of A
  std::vector<double> lhs;        // enumerated side, row = a_-, column = b_-
  std::vector<double> rhs;        // 2 x 2 determinant of Poisson kernels from G_K
  std::vector<double> rhs_chain;  // same determinant, kernels by value iteration of the killed chain

  double at(const std::vector<double>& table, Point a_inner, Point b_inner) const;
};

FominTables fomin_tables(const LatticeDomain& A, std::size_t limit = kEnumerationLimit);

struct FominReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double rhs_chain = 0.0;
  bool pass = false;  // lhs = rhs to 1e-9 and rhs = rhs_chain to 1e-10
};

FominReport fomin_check(const LatticeDomain& A, const BoundaryEdge& a, const BoundaryEdge& b);

}  // namespace lerw
