#include <doctest.h>

#include <cmath>
#include <complex>

#include "wanderlab/hyperbolic.hpp"

using namespace wanderlab;

TEST_CASE("hyperbolic density on the unit disk") {
  CHECK(hyp_density(cplx{0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hyp_density(cplx{0.5, 0.0}) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  // Density is radial.
  CHECK(hyp_density(cplx{0.0, 0.5}) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(hyp_density(cplx{1.0, 0.0}), std::domain_error);
}

TEST_CASE("hyperbolic distance basics") {
  CHECK(hyp_dist(cplx{0.0, 0.0}, cplx{0.0, 0.0}) == 0.0);
  // Radial geodesic from the origin integrates to log((1+r)/(1-r)).
  const double r = 0.5;
  CHECK(hyp_dist(cplx{0.0, 0.0}, cplx{r, 0.0}) ==
        doctest::Approx(std::log((1.0 + r) / (1.0 - r))).epsilon(1e-12));
  const cplx z{0.3, -0.2};
  const cplx w{-0.1, 0.55};
  CHECK(hyp_dist(z, w) == doctest::Approx(hyp_dist(w, z)).epsilon(1e-14));
  CHECK(hyp_dist(z, w) > 0.0);
  // Rotation invariance.
  const cplx u = std::polar(1.0, 0.83);
  CHECK(hyp_dist(u * z, u * w) == doctest::Approx(hyp_dist(z, w)).epsilon(1e-12));
}

TEST_CASE("hyperbolic distortion of self-maps of the disk") {
  const auto id = [](cplx z) { return z; };
  const auto one = [](cplx) { return cplx{1.0, 0.0}; };
  CHECK(hyp_distortion(id, one, cplx{0.37, -0.11}) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const cplx alpha{0.3, 0.4};
  const auto scale = [alpha](cplx z) { return alpha * z; };
  const auto scale_deriv = [alpha](cplx) { return alpha; };
  CHECK(hyp_distortion(scale, scale_deriv, cplx{0.0, 0.0}) ==
        doctest::Approx(std::abs(alpha)).epsilon(1e-14));

  // Disk automorphisms achieve equality in the Schwarz-Pick bound at every
  // point, so their hyperbolic distortion is identically 1.
  const cplx c{0.3, 0.1};
  const auto moebius = [c](cplx z) { return (z + c) / (1.0 + std::conj(c) * z); };
  const auto moebius_deriv = [c](cplx z) {
    const cplx den = 1.0 + std::conj(c) * z;
    return (1.0 - std::norm(c)) / (den * den);
  };
  for (const cplx z : {cplx{0.2, -0.4}, cplx{0.0, 0.0}, cplx{-0.55, 0.3}}) {
    CHECK(hyp_distortion(moebius, moebius_deriv, z) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // A genuinely contracting map stays strictly below 1.
  const auto square = [](cplx z) { return 0.5 * z + 0.25 * z * z; };
  const auto square_deriv = [](cplx z) { return 0.5 + 0.5 * z; };
  CHECK(hyp_distortion(square, square_deriv, cplx{0.2, 0.1}) < 1.0);
}
