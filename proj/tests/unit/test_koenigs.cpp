#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wanderlab/koenigs.hpp"

using namespace wanderlab;

namespace {

// Model map with known linearization coefficients: psi(z) = z + c2 z^2 + ...
// determined by psi(g(z)) = alpha psi(z) with g(z) = 0.5 z + z^2.
// Matching z^2 terms: 0.5 c2 + ... gives c2 = 4; z^3 terms give c3 = 32/3.
const cplx kAlpha{0.5, 0.0};
cplx model_map(cplx z) { return 0.5 * z + z * z; }

}  // namespace

TEST_CASE("linearizer of a pure scaling is the identity") {
  const LinearizerModel m = linearizer([](cplx z) { return 0.5 * z; },
                                       cplx{0.5, 0.0}, 0.2, 1e-12);
  REQUIRE(m.coeffs.size() >= 3);
  CHECK(std::abs(m.coeffs[0] - 1.0) == 0.0);  // c1 pinned
  CHECK(std::abs(m.coeffs[1]) < 1e-12);
  CHECK(std::abs(m.coeffs[2]) < 1e-12);
  // High-order coefficients amplify rounding noise through the recursion, but
  // each one is weighted by radius^k when the model is used; the invariant
  // worth holding is that every term is negligible on the validated disk.
  for (std::size_t k = 1; k < m.coeffs.size(); ++k) {
    CHECK(std::abs(m.coeffs[k]) * std::pow(m.radius, static_cast<double>(k + 1)) <
          1e-12);
  }
  CHECK(std::abs(m.eval(cplx{0.05, 0.02}) - cplx{0.05, 0.02}) < 1e-12);
}

TEST_CASE("linearizer solves the functional equation for the model map") {
  const LinearizerModel m = linearizer(model_map, kAlpha, 0.1, 1e-12);
  CHECK(m.radius > 0.0);
  CHECK(m.image_radius > 0.0);

  // Independent series matching: c2 = 4, c3 = 32/3.
  REQUIRE(m.coeffs.size() >= 3);
  CHECK(std::abs(m.coeffs[1] - 4.0) < 1e-9);
  CHECK(std::abs(m.coeffs[2] - 32.0 / 3.0) < 1e-8);

  // Residual of psi(g(z)) - alpha psi(z) stays at the validated tolerance on
  // the validated circle and inside it.
  double worst = 0.0;
  for (int j = 0; j < 256; ++j) {
    const double t = 2.0 * kPi * (j + 0.5) / 256.0;
    for (const double frac : {1.0, 0.5, 0.17}) {
      const cplx z = std::polar(frac * m.radius, t);
      worst = std::max(worst, std::abs(m.eval(model_map(z)) - kAlpha * m.eval(z)));
    }
  }
  CHECK(worst < 1e-10);

  // Derivative consistency: eval_deriv matches a finite difference.
  const cplx z0{0.03, 0.01};
  const double h = 1e-6;
  const cplx fd = (m.eval(z0 + h) - m.eval(z0 - h)) / (2.0 * h);
  CHECK(std::abs(m.eval_deriv(z0) - fd) < 1e-7);
  CHECK(std::abs(m.eval_deriv(cplx{0.0, 0.0}) - 1.0) < 1e-13);
}

TEST_CASE("linearizer inverse inverts on the image disk") {
  const LinearizerModel m = linearizer(model_map, kAlpha, 0.1, 1e-12);

  const cplx w{0.02, 0.01};
  const cplx z = linearizer_inverse(m, w);
  CHECK(std::abs(m.eval(z) - w) < 1e-12);

  // Series reversion oracle:
  //   psi^{-1}(w) = w - c2 w^2 + (2 c2^2 - c3) w^3
  //                 - (5 c2^3 - 5 c2 c3 + c4) w^4 + O(w^5)
  // with c2 = 4, c3 = 32/3, c4 = 12 / (alpha - alpha^4) = 192/7 for this map.
  const cplx w_small{0.01, 0.0};
  const cplx z_small = linearizer_inverse(m, w_small);
  const double c2 = 4.0;
  const double c3 = 32.0 / 3.0;
  const double c4 = 192.0 / 7.0;
  const cplx w2 = w_small * w_small;
  const cplx series = w_small - c2 * w2 + (2.0 * c2 * c2 - c3) * w2 * w_small -
                      (5.0 * c2 * c2 * c2 - 5.0 * c2 * c3 + c4) * w2 * w2;
  CHECK(std::abs(z_small - series) < 1e-7);

  // Round trip the other way from a point inside the validated disk.
  const cplx z1{0.04, -0.02};
  CHECK(std::abs(linearizer_inverse(m, m.eval(z1)) - z1) < 1e-12);
}

TEST_CASE("linearizer rejects non-attracting multipliers") {
  CHECK_THROWS_AS(linearizer(model_map, cplx{1.2, 0.0}, 0.1, 1e-12),
                  std::domain_error);
  CHECK_THROWS_AS(linearizer(model_map, cplx{0.0, 0.0}, 0.1, 1e-12),
                  std::domain_error);
}
