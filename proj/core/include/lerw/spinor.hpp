#pragma once

#include <complex>
#include <vector>

#include "lerw/harmonic.hpp"
#include "lerw/lattice.hpp"

namespace lerw {

// Continuum observable lambda(z, a) in the unit disk, a = e^{2 i theta_a}, branch cut beta = [0,1),
// alpha = radius towards -a. |lambda| = h_{D \ alpha}(z, a) / h_D(z, a); the sign is +1 iff z and a
// lie in the same component of D \ (alpha u beta). Returns 0 on alpha and sets *on_alpha.
double lambda_disk(std::complex<double> z, double theta_a, bool* on_alpha = nullptr);

// Lambda_A(z, a) = R_A(z, a) / H_A(z, a) with shared factorisations across calls.
class SpinorField {
 public:
  SpinorField(const LatticeDomain& A, const EdgeSignTable& signs);

  double operator()(Point z, const BoundaryEdge& a) const;
  double signed_exit(Point z, const BoundaryEdge& a) const { return exit_(z, a); }
  double interior_poisson(Point z, const BoundaryEdge& a) const;

 private:
  GreenTable green_;
  SignedExit exit_;
};

double spinor(const LatticeDomain& A, const EdgeSignTable& signs, Point z, const BoundaryEdge& a);

struct Lemma51Report {
  BoundaryEdge a;
  double lhs = 0.0;  // Lambda_A(0, a)
  double rhs = 0.0;  // sum over the outer boundary of the inner square
  std::vector<double> slit_terms;  // k = 2 .. m-1: entries through (k,1) and (k,-1) combined
  double max_slit_term = 0.0;
  bool pass = false;
};

// First-exit decomposition of Lambda_A(0, a) on A = square:n through the slit square
// U_m^- = U_m \ {0..m}, with the straight-down branch cut.
Lemma51Report lemma51_check(int n, int m, const BoundaryEdge& a);

}  // namespace lerw
