#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wanderlab/herman.hpp"

using namespace wanderlab;

namespace {

std::vector<cplx> box_samples(std::mt19937_64& rng, int count, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<cplx> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.emplace_back(u(rng), u(rng));
  return out;
}

}  // namespace

TEST_CASE("construction pins the multiplier to 1 + a") {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  CHECK(m.multiplier == cplx{0.5, 0.0});
  CHECK_FALSE(m.superattracting);
  CHECK(std::abs(m.h(HermanMap::fixed_point()) - 1.0) < 1e-15);

  // Derivative of h at the fixed point by finite differences.
  const double h_step = 1e-6;
  const cplx fd = (m.h(cplx{1.0 + h_step, 0.0}) - m.h(cplx{1.0 - h_step, 0.0})) /
                  (2.0 * h_step);
  CHECK(std::abs(fd - m.multiplier) < 1e-9);

  const HermanMap super = build_herman(cplx{-1.0, 0.0});
  CHECK(super.multiplier == cplx{0.0, 0.0});
  CHECK(super.superattracting);

  CHECK_THROWS_AS(build_herman(cplx{0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_herman(cplx{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("the exponential semiconjugacy closes to rounding error") {
  std::mt19937_64 rng(0xBADC0DE);
  const std::vector<cplx> samples = box_samples(rng, 10000, 3.0);

  // Five parameter values across the attracting range. The residual is an
  // absolute gap between exponentials that reach ~1e9 when |a| is close to 1
  // (Re f grows like |a| e^3 on this box), so the admissible gap scales with
  // the magnitude of the compared values.
  for (const cplx a : {cplx{-0.5, 0.0}, cplx{-1.0, 0.0}, cplx{-0.3, 0.2},
                       cplx{-0.9, 0.0}, cplx{-0.5, -0.3}}) {
    const HermanMap m = build_herman(a);
    const SemiconjugacyReport rep = semiconjugacy_residual(m, samples);
    CHECK(rep.skipped == 0);
    CHECK(rep.residual < (std::abs(a) > 0.7 ? 1e-7 : 1e-10));
  }

  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  const std::vector<cplx> origin{cplx{0.0, 0.0}};
  CHECK(semiconjugacy_residual(m, origin).residual < 1e-14);

  // Invariance under vertical lattice translation of the sample set.
  std::vector<cplx> shifted = samples;
  for (auto& z : shifted) z += cplx{0.0, 2.0 * kPi};
  const double base = semiconjugacy_residual(m, samples).residual;
  const double moved = semiconjugacy_residual(m, shifted).residual;
  CHECK(std::abs(base - moved) < 1e-12);

  // Samples far to the right are skipped rather than poisoning the max.
  const std::vector<cplx> hot{cplx{800.0, 0.0}, cplx{0.0, 0.0}};
  const SemiconjugacyReport skipped = semiconjugacy_residual(m, hot);
  CHECK(skipped.skipped == 1);
  CHECK(skipped.residual < 1e-14);
}

TEST_CASE("orbit of the origin climbs the vertical lattice exactly") {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  const Orbit o = orbit(m, cplx{0.0, 0.0}, 3);
  REQUIRE(o.points.size() == 3);
  CHECK_FALSE(o.truncated);
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(o.points[k - 1] - cplx{0.0, 2.0 * kPi * k}) < 1e-12);
  }

  // Translation equivariance: the orbit of z0 + 2 pi i is the shifted orbit.
  const cplx z0{0.3, -0.4};
  const Orbit base = orbit(m, z0, 6);
  const Orbit lifted = orbit(m, z0 + cplx{0.0, 2.0 * kPi}, 6);
  REQUIRE(base.points.size() == lifted.points.size());
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    CHECK(std::abs(lifted.points[i] - base.points[i] - cplx{0.0, 2.0 * kPi}) <
          1e-9 * std::max(1.0, std::abs(base.points[i])));
  }

  // a = 0 is not an admissible attracting parameter for the builder, but the
  // map itself degenerates to the pure translation; iterate it directly.
  HermanMap translation;
  translation.a = cplx{0.0, 0.0};
  translation.multiplier = cplx{1.0, 0.0};
  const Orbit t = orbit(translation, cplx{0.7, 0.1}, 4);
  REQUIRE(t.points.size() == 4);
  cplx expected{0.7, 0.1};
  for (int k = 0; k < 4; ++k) {
    expected += cplx{0.0, 2.0 * kPi};
    CHECK(std::abs(t.points[k] - expected) < 1e-14);
  }

  CHECK_THROWS(orbit(m, cplx{0.0, 0.0}, 0));
}

TEST_CASE("orbit truncates on overflow instead of propagating non-finite values") {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  const Orbit o = orbit(m, cplx{710.0, 0.0}, 10);
  CHECK(o.truncated);
  CHECK(o.points.size() < 10);
  for (const cplx z : o.points) {
    CHECK(std::isfinite(z.real()));
    CHECK(std::isfinite(z.imag()));
  }
}

TEST_CASE("distortion sequence is the constant multiplier") {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});
  const DistortionSequence seq = herman_distortion(m, 4);
  REQUIRE(seq.entries.size() == 4);
  for (const cplx e : seq.entries) {
    CHECK(e == m.multiplier);
    CHECK(std::abs(e) == doctest::Approx(std::abs(m.multiplier)).epsilon(1e-15));
  }
  CHECK(classify(seq, TailDescriptor::SumDiverges) == DynamicsClass::Contracting);

  const HermanMap super = build_herman(cplx{-1.0, 0.0});
  CHECK_THROWS_AS(herman_distortion(super, 3), std::invalid_argument);
}

TEST_CASE("escape-time rendering is deterministic and translation invariant") {
  const HermanMap m = build_herman(cplx{-0.5, 0.0});

  const Window w{-3.0, 3.0, -3.0, 3.0};
  const GrayImage img = render_escape(m, w, 128, 128, 50, 50.0);
  REQUIRE(img.width == 128);
  REQUIRE(img.height == 128);
  REQUIRE(img.pixels.size() == 128u * 128u);

  const GrayImage again = render_escape(m, w, 128, 128, 50, 50.0);
  CHECK(img.pixels == again.pixels);

  const Window shifted{-3.0, 3.0, 2.0 * kPi - 3.0, 2.0 * kPi + 3.0};
  const GrayImage img2 = render_escape(m, shifted, 128, 128, 50, 50.0);
  int agree = 0;
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    agree += (img.pixels[i] == img2.pixels[i]) ? 1 : 0;
  }
  CHECK(agree >= static_cast<int>(0.99 * img.pixels.size()));

  // A window around the first lattice point keeps a non-escaping core.
  const Window basin{-1.0, 1.0, 2.0 * kPi - 1.0, 2.0 * kPi + 1.0};
  const GrayImage core = render_escape(m, basin, 64, 64, 60, 50.0);
  int full = 0;
  for (const unsigned char p : core.pixels) full += (p == 255) ? 1 : 0;
  CHECK(full > 0);  // pixels that never escape within the budget

  const GrayImage flat = render_escape(m, w, 32, 32, 0, 50.0);
  for (const unsigned char p : flat.pixels) CHECK(p == flat.pixels[0]);

  CHECK_THROWS(render_escape(m, Window{1.0, 1.0, 0.0, 2.0}, 16, 16, 10, 50.0));
  CHECK_THROWS(render_escape(m, w, 0, 16, 10, 50.0));
  CHECK_THROWS(render_escape(m, w, 16, 16, 10, 5.0));
}
