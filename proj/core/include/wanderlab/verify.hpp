#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wanderlab/ahlfors_bers.hpp"
#include "wanderlab/numerics.hpp"

namespace wanderlab {

// One adjudicated numeric check: a computed value against its reference,
// with the refinement ladder that produced it. `independent_value` carries a
// second, independently derived value when the reference itself is under
// adjudication; `verdict` is ConvergedMatch iff the ladder converged and
// abs_gap stays below `tolerance`.
struct VerdictRecord {
  std::string name;
  cplx computed{};
  cplx reference_value{};
  double abs_gap = 0.0;
  double tolerance = 0.0;
  ConvergenceStatus verdict = ConvergenceStatus::NotConverged;
  std::vector<std::string> resolutions;
  std::optional<cplx> independent_value;
};

// Contour integral of z^{-2} log((Rz - 1)/(alpha R z - 1)) counterclockwise
// on |z| = 1 against the closed form -2 pi i R (1 - alpha). The log stays on
// the principal branch; detected winding of its argument throws. Tolerance
// 1e-8.
VerdictRecord residue_check_first(double alpha, double R);

// Same closed form from the inverted integrand
// z^{-2} log(((alpha R z)^{-1} - 1)/((R z)^{-1} - 1)) taken clockwise.
VerdictRecord residue_check_second(double alpha, double R);

// Three P-evaluations at s = 1 of the stated first-order integrands of the
// interpolation construction: (a) c z on the annulus (alpha R, R) with
// c = rho / (2 alpha R (1 - alpha)), (b) its reflection c z / conj(z)^2 on
// (1/R, 1/(alpha R)), (c) their sum. References are the claimed closed forms
// (rho/alpha)(-1+i), (rho/alpha) i, (rho/alpha)(-1+2i); each record also
// carries the value obtained from the independently derived lambda-derivative
// of the coefficient, so a mismatch is adjudicated rather than silently
// asserted. Quadrature ladder per record; tolerance 1e-4.
std::vector<VerdictRecord> integral_crosscheck(
    double alpha, double R,
    const std::vector<LadderRung>& ladder = default_ladder());

// Arithmetic identity rho - alpha conj((rho/alpha)(-1+2i)) = 2 rho (1+i) for
// real alpha in (0,1); tolerance 1e-12. Exact up to rounding.
VerdictRecord multiplier_chain_identity(double alpha, double R);

// Finite-difference Wirtinger derivative at lambda = 0 of
//   g'(lambda) = alpha_tilde(lambda) / h'(0; lambda),
// where h'(0; lambda) = disk_derivative of the symmetrized interpolation
// coefficient at lambda. Four probes (+t, -t, +it, -it) per step, Richardson
// extrapolation over the steps, compared against 2 rho (1 + i) with 5%
// relative tolerance. The solver window is derived from the support radii
// (4x margin); cfg supplies the remaining solver settings.
VerdictRecord end_to_end_derivative(double alpha, double R,
                                    const std::vector<double>& steps,
                                    const SolverConfig& cfg);

}  // namespace wanderlab
