#pragma once

#include <functional>
#include <vector>

#include "wanderlab/numerics.hpp"

namespace wanderlab {

// Parameters of the radial interpolation phi(z) = A(|z|) z between
// alpha_tilde z on |z| = r and alpha z on |z| = R, where
//   r = |alpha| R,
//   rho = |alpha|/2 * min(|alpha|, 1 - |alpha|),
//   alpha_tilde = alpha + rho lambda,
//   A(t) = ((R - t) alpha_tilde + (t - r) alpha) / (R - r).
struct InterpolationParams {
  cplx alpha{};
  double R = 0.0;
  double r = 0.0;
  double rho = 0.0;
  cplx lambda{};
  cplx alpha_tilde{};

  // Derives r, rho, alpha_tilde from (alpha, R, lambda) and validates.
  static InterpolationParams make(cplx alpha, double R, cplx lambda);

  // Throws unless 0 < |alpha| < 1, 0 < R < 1, |lambda| < 1, and the derived
  // fields match their defining formulas exactly.
  void validate() const;

  cplx profile(double t) const;  // A(t)
  cplx profile_slope() const;    // A'(t) = -rho lambda / (R - r), t-free
};

// phi(z) = A(|z|) z for r <= |z| <= R; exact boundary values alpha_tilde z
// at |z| = r and alpha z at |z| = R. Throws std::domain_error outside.
cplx interpolate(const InterpolationParams& p, cplx z);

// Beltrami coefficient of the interpolation on the open annulus r < |z| < R:
//   mu = ((t/2) A' e^{2 i theta}) / (A + (t/2) A'),
// the Wirtinger quotient of phi. Satisfies |mu| <= |lambda|. Throws when the
// denominator |A + (t/2)A'| falls below 1e-14 (degenerate differential).
cplx beltrami_of_interpolation(const InterpolationParams& p, cplx z);

// d mu / d lambda at lambda = 0, computed two ways that must agree within
// 1e-6 (route disagreement beyond 1e-5 throws):
//   (a) symbolic differentiation of the closed form,
//   (b) 4-point finite-difference stencil in lambda.
// The report also evaluates two reference closed forms this derivative is
// written as elsewhere (phases e^{2 i theta} and e^{i theta}, both without a
// sign) and flags agreement per formula, sign included.
struct LambdaDerivativeReport {
  cplx derivative{};           // route (a)
  cplx stencil{};              // route (b)
  cplx candidate_two_theta{};  // rho t e^{2 i theta} / (2 alpha R (1 - alpha))
  cplx candidate_one_theta{};  // rho t e^{i theta} / (2 alpha R (1 - alpha))
  bool matches_two_theta = false;
  bool matches_one_theta = false;
};

// Requires p.lambda == 0 and r < |z| < R.
LambdaDerivativeReport dnu_dlambda(const InterpolationParams& p, cplx z);

// Measurable coefficient with an analytic pointwise rule, declared support
// annuli, and the grid geometry downstream solvers realize it on. The rule
// is authoritative; the grid is a sampling of it.
struct BeltramiField {
  std::function<cplx(cplx)> eval;
  std::vector<PolarAnnulus> support;
  double sup_bound = 0.0;
  Window window = centered_square(4.0);
  int grid_n = 1024;

  // eval gated by the declared support (zero outside).
  cplx operator()(cplx z) const;

  // Samples at cell centers of an n x n grid over `window`.
  ComplexGridField to_grid() const;

  void validate() const;
};

// The interpolation coefficient as a field supported on (r, R).
BeltramiField interpolation_field(const InterpolationParams& p,
                                  const Window& window, int grid_n);

// Reflection pullback across the unit circle:
// (tau* nu)(z) = conj(nu(1 / conj(z))) * z^2 / conj(z)^2.
cplx tau_pullback_point(const std::function<cplx(cplx)>& nu, cplx z);

// Extends an inner-annulus coefficient nu (support (r, R), R < 1) by its
// tau-pullback on the reflected annulus (1/R, 1/r). The output satisfies
// mu_hat(1/conj(z)) = conj(mu_hat(z)) (z/conj(z))^2 at rounding level.
// Throws when the reflected support touches the grid window boundary or the
// inner radius is not grid-resolvable.
BeltramiField symmetrize(const BeltramiField& nu);

// mu(f(z)) conj(f'(z)) / f'(z); throws std::domain_error at critical points
// of f (f'(z) = 0).
cplx beltrami_pullback(const std::function<cplx(cplx)>& mu,
                       const std::function<cplx(cplx)>& f,
                       const std::function<cplx(cplx)>& f_prime, cplx z);

}  // namespace wanderlab
