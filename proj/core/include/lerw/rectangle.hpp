#pragma once

namespace lerw {

enum class KernelMethod { Fourier, Solve };
enum class KernelSide { Discrete, Continuum };

// alpha_l for the rectangle A(n, m): cosh(alpha_l pi / n) + cos(l pi / m) = 2.
double alpha_l(int n, int m, int l);

// Poisson kernel of A(n, m) = {j + ik : 1 <= j <= n-1, 1 <= k <= m-1} from 1 + ik to the right-side
// edge ending at n + ik'. Discrete: H_A by the finite Fourier sum or by a linear solve.
// Continuum: h_R(1 + ik, n + ik') for R = (0, n) x (0, m) by its sinh series (Fourier only).
double rectangle_kernel(int n, int m, int k, int kp, KernelMethod method, KernelSide side);

// Boundary kernels from ik: H_{dA}(ik, n + ik') = H_A(1 + ik, n + ik') / 4, and
// h_{dR}(ik, n + ik') = (2/m) sum_l (l pi / m) / sinh(l pi n / m) sin(l pi k / m) sin(l pi k' / m).
double rectangle_boundary_kernel(int n, int m, int k, int kp, KernelMethod method, KernelSide side);

struct RectangleComparison {
  int n = 0;
  int m = 0;
  double method_gap = 0.0;      // max relative gap between the Fourier and solved H_{dA}
  double error_constant = 0.0;  // max of |H_{dA} - h_{dR}/4| n^5 / (d d'), d = min(k, m-k), d' = min(k', m-k')
};

// Both comparisons over all 1 <= k, k' <= m-1, with one factorisation for the solved side.
RectangleComparison compare_rectangle_kernels(int n, int m);

}  // namespace lerw
