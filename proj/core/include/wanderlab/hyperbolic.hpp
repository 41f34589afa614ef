#pragma once

#include <functional>

#include "wanderlab/numerics.hpp"

namespace wanderlab {

// Density of the curvature -1 hyperbolic metric on the unit disk, 2/(1-|z|^2).
// Throws std::domain_error for |z| >= 1.
double hyp_density(cplx z);

// Hyperbolic distance between two disk points:
// log((1+d)/(1-d)) with d = |z-w| / |1 - conj(z) w|.
double hyp_dist(cplx z, cplx w);

// Hyperbolic distortion |g'(z)| (1-|z|^2)/(1-|g(z)|^2) of a holomorphic disk
// self-map; Schwarz-Pick bounds it by 1. Throws std::domain_error when
// |g(z)| >= 1 (g is not a disk self-map at z).
double hyp_distortion(const std::function<cplx(cplx)>& g,
                      const std::function<cplx(cplx)>& g_prime, cplx z);

}  // namespace wanderlab
