#pragma once

#include <complex>

#include "lerw/lattice.hpp"

namespace lerw {

// Schwarz-Christoffel map of the unit disk onto D_A for A = square:n (side 2n, centred at w0):
//   F(w) = w0 + C * integral_0^w dt / sqrt(1 + t^4),
// with prevertices e^{i(pi/4 + k pi/2)} at the corners and F(1) = midpoint of the right side.
// Its inverse is f_A, so r_A = F'(0) = C.
class SquareMap {
 public:
  explicit SquareMap(int n);

  int n() const { return n_; }
  double scale() const { return scale_; }
  double conformal_radius() const { return scale_; }

  // Disk angle phi in [0, 2 pi) of a point on the boundary of D_A (f_A(p) = e^{i phi}).
  double boundary_angle(double x, double y) const;

  // F(w) for |w| < 1.
  std::complex<double> from_disk(std::complex<double> w) const;
  // f_A(z) for z inside D_A, by Newton iteration on F.
  std::complex<double> to_disk(std::complex<double> z) const;

  // Height along the right side reached at disk angle phi in [-pi/4, pi/4]:
  // (C / sqrt 2) * integral_0^phi (cos 2s)^{-1/2} ds.
  double side_height(double phi) const;

 private:
  int n_;
  double scale_;
};

// theta_b in [0, pi) with f_A(b) = e^{2 i theta_b}; theta = 0 at the right-side midpoint.
double square_theta(int n, const BoundaryEdge& b);

// r_A for square:n.
double conformal_radius_square(int n);

// r_A / (2n), independent of n.
double square_radius_ratio();

}  // namespace lerw
