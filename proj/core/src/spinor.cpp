#include "lerw/spinor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lerw/identity.hpp"

namespace lerw {

namespace {
constexpr double kPi = std::numbers::pi;
}

double lambda_disk(std::complex<double> z, double theta_a, bool* on_alpha) {
  if (on_alpha) *on_alpha = false;
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutOfDomain, "z must lie in the unit disk");
  const std::complex<double> a = std::polar(1.0, 2.0 * theta_a);
  // Rotate so that alpha becomes [0,1) and a becomes -1.
  const std::complex<double> zr = -std::conj(a) * z;
  double arg = std::arg(zr);
  if (arg < 0.0) arg += 2.0 * kPi;
  if (std::abs(zr.imag()) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(zr) && zr.real() >= 0.0) {
    if (on_alpha) *on_alpha = true;
    return 0.0;
  }
  // psi(w) = -(w + 1) / (2 sqrt w) maps D \ [0,1) onto H with psi(-1) = 0 and |psi'(-1)| = 1/2.
  const std::complex<double> root = std::polar(std::sqrt(std::abs(zr)), arg / 2.0);
  const std::complex<double> psi = -(zr + 1.0) / (2.0 * root);
  const double h_half = psi.imag() / (kPi * std::norm(psi));
  const double h_disk = (1.0 - std::norm(zr)) / (2.0 * kPi * std::norm(zr + 1.0));
  const double magnitude = 0.5 * h_half / h_disk;
  // The rotated cut beta sits at angle gamma and a at angle pi. For theta_a = 0, a is the tip of beta
  // and counts as lying on the side of the upper half disk.
  double gamma = std::fmod(kPi - 2.0 * theta_a, 2.0 * kPi);
  if (gamma < 0.0) gamma += 2.0 * kPi;
  const bool a_above = gamma <= kPi;
  const bool z_above = arg > gamma;
  return a_above == z_above ? magnitude : -magnitude;
}

SpinorField::SpinorField(const LatticeDomain& A, const EdgeSignTable& signs) : green_(A), exit_(A, signs) {}

double SpinorField::interior_poisson(Point z, const BoundaryEdge& a) const { return 0.25 * green_(z, a.inner); }

double SpinorField::operator()(Point z, const BoundaryEdge& a) const {
  const double h = interior_poisson(z, a);
  if (!(h > 0.0)) throw Error(ErrorCode::ZeroDenominator, "H_A(z, a) vanishes");
  return exit_(z, a) / h;
}

double spinor(const LatticeDomain& A, const EdgeSignTable& signs, Point z, const BoundaryEdge& a) {
  return SpinorField(A, signs)(z, a);
}

Lemma51Report lemma51_check(int n, int m, const BoundaryEdge& a) {
  if (m < 3 || m >= n) throw Error(ErrorCode::InvalidArgument, "need 3 <= m < n");
  const LatticeDomain A = square_domain(n);
  const EdgeSignTable signs = build_branch_cut(A);
  const SpinorField field(A, signs);
  const Point zero{0, 0};

  std::vector<Point> slit_square;
  for (const Point p : A.vertices()) {
    const bool in_u = std::abs(p.x) < m && std::abs(p.y) < m;
    const bool on_slit = p.y == 0 && p.x >= 0 && p.x <= m;
    if (in_u && !on_slit) slit_square.push_back(p);
  }
  // G_{U^-} as a masked table on A, so vertex indices stay those of A.
  std::vector<Point> outside;
  for (const Point p : A.vertices()) {
    if (!std::binary_search(slit_square.begin(), slit_square.end(), p)) outside.push_back(p);
  }
  const GreenTable inner(A, nullptr, outside);

  // Walk weight from 0 to y' inside U^-: sum over first steps y ~ 0 of G_{U^-}(y, y') / 4.
  Eigen::VectorXd first = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(A.size()));
  for (const Point s : kSteps) {
    if (inner.active(zero + s)) first += 0.25 * inner.column(zero + s);
  }

  std::vector<Point> region = slit_square;
  region.push_back(zero);
  std::sort(region.begin(), region.end());

  Lemma51Report r;
  r.a = a;
  r.lhs = field(zero, a);
  const double h0 = field.interior_poisson(zero, a);
  double rhs = 0.0;
  std::vector<double> slit(static_cast<std::size_t>(m), 0.0);
  for (const Point y : slit_square) {
    const double reach = first[A.index_of(y)];
    if (reach == 0.0) continue;
    const int q0y = parity_between(region, signs, zero, y);
    for (const Point s : kSteps) {
      const Point w = y + s;
      if (std::binary_search(slit_square.begin(), slit_square.end(), w) || w == zero) continue;
      // Step y -> w leaves U^- with weight 1/4.
      const double term = 0.25 * reach * q0y * signs.sign(y, w) * field.signed_exit(w, a) / h0;
      const bool on_slit = w.y == 0 && w.x >= 1 && w.x <= m;
      if (!on_slit) {
        rhs += term;
      } else if (w.x >= 2) {
        slit[static_cast<std::size_t>(w.x)] += term;
      }
      // Exits onto 1 have R_A(1, a) weight but vanish: the walk may not revisit {0,1}.
    }
  }
  r.rhs = rhs;
  for (int k = 2; k < m; ++k) {
    r.slit_terms.push_back(slit[static_cast<std::size_t>(k)]);
    r.max_slit_term = std::max(r.max_slit_term, std::abs(slit[static_cast<std::size_t>(k)]));
  }
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.pass = within(r.lhs, r.rhs, {1e-9, 1e-15}) && r.max_slit_term <= 1e-12 * std::max(scale, 1e-300) + 1e-15;
  return r;
}

}  // namespace lerw
