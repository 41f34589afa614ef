#pragma once

#include <functional>
#include <vector>

#include "wanderlab/numerics.hpp"

namespace wanderlab {

// Truncated power series for the linearizing coordinate psi at an attracting
// fixed point: psi(g(z)) = alpha psi(z), psi(0) = 0, psi'(0) = 1.
struct LinearizerModel {
  cplx alpha{};
  std::vector<cplx> coeffs;  // coeffs[k-1] = c_k, with c_1 pinned to 1
  double radius = 0.0;       // disk on which the residual was validated
  double image_radius = 0.0; // L: inverse is defined for |w| < L
  double tol = 0.0;          // residual bound the model satisfies

  cplx eval(cplx z) const;
  cplx eval_deriv(cplx z) const;
};

// Builds psi as the limit of alpha^{-n} g^n sampled on the circle
// |z| = radius_hint (256 nodes), converted to series coefficients of default
// degree 32 by discrete Fourier extraction in a fixed order. Stops when
// successive iterates differ by < tol in sup norm on the circle; the
// returned model additionally satisfies
//   sup_{nodes} |psi(g(z)) - alpha psi(z)| < tol.
// Throws when |alpha| is not in (0,1), when alpha is inconsistent with g,
// or on non-convergence (the message suggests a smaller radius).
LinearizerModel linearizer(const std::function<cplx(cplx)>& g, cplx alpha,
                           double radius_hint, double tol);

// Newton solve of psi(z) = w seeded at z0 = w; requires |w| < image_radius.
// The result satisfies |psi(result) - w| < tol.
cplx linearizer_inverse(const LinearizerModel& model, cplx w);

}  // namespace wanderlab
