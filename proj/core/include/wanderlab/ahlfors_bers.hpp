#pragma once

#include <functional>
#include <vector>

#include "wanderlab/numerics.hpp"
#include "wanderlab/surgery.hpp"

namespace wanderlab {

// Integrand with declared annular support; the annuli also carry the
// quadrature resolution used when the field is integrated.
struct AnnularField {
  std::function<cplx(cplx)> eval;
  std::vector<PolarAnnulus> support;
};

// Cauchy-type potential
//   P[theta](s) = -(1/pi) integral of theta(z) (1/(z-s) - 1/z) dA(z)
// evaluated by midpoint polar quadrature over each support annulus. When s
// lies in or near a support annulus, cells around s are subdivided 16x16 and
// the subcell containing s is excluded (the kernel is weakly singular, so
// the excluded mass vanishes with the subcell). Throws when the support is
// undeclared. P[theta](0) = 0 by the kernel's structure.
cplx p_transform(const AnnularField& theta, cplx s);

// Solver/grid geometry shared by the spectral transform and the fixed-point
// iteration. The window must contain every support annulus with padding
// factor >= 4 (edge distance at least four times the outer support radius);
// pad_factor additionally zero-embeds the transform grid to push periodic
// images further out.
struct SolverConfig {
  Window window = centered_square(4.0);
  int grid_n = 1024;
  int max_iters = 64;
  double fix_tol = 1e-12;
  double k_bound = 0.5;  // sup |mu| of the coefficient being solved
  int quad_n_r = 512;
  int quad_n_theta = 1024;
  int pad_factor = 2;

  void validate() const;
  // Also checks k_bound < 1 and the 4x padding rule against mu's support.
  void validate_for(const BeltramiField& mu) const;
  static SolverConfig for_field(const BeltramiField& mu);
};

// Beurling transform on the grid: forward FFT, multiply by conj(xi)/xi with
// the DC component zeroed, inverse FFT. The input support must stay within
// half the window's edge distance (padding margin); the output has no
// declared support (the transform is not compactly supported).
ComplexGridField t_transform(const ComplexGridField& theta, int pad_factor = 2);

struct ThetaSolveResult {
  ComplexGridField theta;
  int iterations = 0;
  std::vector<double> ratios;  // successive sup-change ratios, from j = 2
};

// Fixed point of theta = T(mu (theta + 1)) from theta_0 = 0; the first
// iterate is exactly T mu. Stops when the grid sup-change drops below
// fix_tol; throws with the last contraction ratio when max_iters is hit.
ThetaSolveResult solve_theta(const BeltramiField& mu, const SolverConfig& cfg);

// F(z) = z + P[mu (theta + 1)](z), asymptotic to the identity; F(0) = 0.
// The evaluation splits the integrand: the mu part is integrated from its
// analytic rule and only the mu*theta correction touches grid-interpolated
// data, so probe accuracy is not limited by grid sampling of mu itself.
struct PrincipalMap {
  BeltramiField mu;
  ComplexGridField theta;
  int quad_n_r = 512;
  int quad_n_theta = 1024;

  cplx operator()(cplx s) const;
};

PrincipalMap principal_solution(const BeltramiField& mu, const SolverConfig& cfg);

struct FrechetReport {
  std::vector<double> scales;
  std::vector<double> errors;  // e(t) = |F^{t nu}(1) - 1 - t P[nu](1)|
  double slope = 0.0;          // log-log least-squares slope of e against t
  bool degenerate = false;     // all errors at rounding level; slope meaningless
};

// Order check of the derivative identity dF(1)[nu] = P[nu](1): the
// remainder e(t) must shrink quadratically (slope 2 +- 0.3). Both P
// evaluations go through the same quadrature, so the comparison measures
// the remainder and not a difference of discretizations. Requires >= 3
// scales with t * sup|nu| < 1.
FrechetReport frechet_check(const BeltramiField& nu,
                            const std::vector<double>& scales,
                            const SolverConfig& cfg);

// conj(F^{mu_hat}(1)): derivative at 0 of the normalized disk-preserving
// integrating map of a coefficient symmetric across the unit circle. The
// reflection identity is sampled first and violations beyond 1e-8 throw.
cplx disk_derivative(const BeltramiField& mu_hat, const SolverConfig& cfg);

}  // namespace wanderlab
