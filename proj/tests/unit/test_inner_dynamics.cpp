#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wanderlab/hyperbolic.hpp"
#include "wanderlab/inner_dynamics.hpp"

using namespace wanderlab;

TEST_CASE("distortion sequence of a constant linear family") {
  const InnerSystem sys =
      linear_system([](int) { return cplx{0.5, 0.0}; }, TailDescriptor::SumDiverges);
  const DistortionSequence seq = distortion_sequence(sys, 3);
  REQUIRE(seq.entries.size() == 3);
  for (const cplx e : seq.entries) CHECK(std::abs(e - 0.5) < 1e-15);
}

TEST_CASE("distortion sequence of a Blaschke family reads the derivative at 0") {
  // g(z) = z (z + c) / (1 + conj(c) z) has g'(0) = c.
  const InnerSystem sys =
      blaschke_system([](int) { return cplx{0.9, 0.0}; }, TailDescriptor::SumDiverges);
  const DistortionSequence seq = distortion_sequence(sys, 5);
  REQUIRE(seq.entries.size() == 5);
  for (const cplx e : seq.entries) CHECK(std::abs(e - 0.9) < 1e-12);
}

TEST_CASE("classification trichotomy on the three model families") {
  const InnerSystem diverges = linear_system(
      [](int n) { return cplx{1.0 - 1.0 / n, 0.0}; }, TailDescriptor::SumDiverges);
  CHECK(classify(distortion_sequence(diverges, 200), diverges.tail) ==
        DynamicsClass::Contracting);

  const InnerSystem ones =
      linear_system([](int) { return cplx{1.0, 0.0}; }, TailDescriptor::EventuallyOne);
  CHECK(classify(distortion_sequence(ones, 200), ones.tail) ==
        DynamicsClass::EventuallyIsometric);

  const InnerSystem converges =
      linear_system([](int n) { return cplx{1.0 - std::pow(2.0, -n), 0.0}; },
                    TailDescriptor::SumConverges);
  CHECK(classify(distortion_sequence(converges, 200), converges.tail) ==
        DynamicsClass::SemiContracting);

  CHECK(classify(distortion_sequence(ones, 200), TailDescriptor::Unknown) ==
        DynamicsClass::Inconclusive);
}

TEST_CASE("classification labels are stable strings") {
  CHECK(std::string(to_string(DynamicsClass::Contracting)) == "contracting");
  CHECK(std::string(to_string(DynamicsClass::EventuallyIsometric)) ==
        "eventually-isometric");
  CHECK(std::string(to_string(DynamicsClass::SemiContracting)) ==
        "semi-contracting");
}

TEST_CASE("pair tracking is constant under isometries and shrinks under contraction") {
  const InnerSystem rigid =
      linear_system([](int) { return cplx{1.0, 0.0}; }, TailDescriptor::EventuallyOne);
  const cplx z{0.3, 0.0};
  const cplx w{0.0, 0.2};
  const double d0 = hyp_dist(z, w);
  for (const double d : track_pair(rigid, z, w, 50)) {
    CHECK(d == doctest::Approx(d0).epsilon(1e-13));
  }

  const InnerSystem shrink =
      linear_system([](int) { return cplx{0.5, 0.0}; }, TailDescriptor::SumDiverges);
  const std::vector<double> ds = track_pair(shrink, cplx{0.1, 0.0}, cplx{0.2, 0.0}, 50);
  REQUIRE(ds.size() == 50);
  CHECK(ds.front() <= d0);
  for (std::size_t i = 1; i < ds.size(); ++i) CHECK(ds[i] < ds[i - 1]);
  CHECK(ds.back() < 1e-12);
}

TEST_CASE("pair tracking never increases hyperbolic distance") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto disk_point = [&](double radius) {
    while (true) {
      const cplx z{unit(rng), unit(rng)};
      if (std::abs(z) < 1.0) return radius * z;
    }
  };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> cs(60);
    for (auto& c : cs) c = disk_point(0.95);
    const InnerSystem sys = blaschke_system(
        [cs](int n) { return cs[static_cast<std::size_t>(n - 1) % cs.size()]; },
        TailDescriptor::Unknown);
    const cplx z = disk_point(0.8);
    const cplx w = disk_point(0.8);
    const std::vector<double> ds = track_pair(sys, z, w, 60);
    double prev = hyp_dist(z, w);
    for (const double d : ds) {
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("quadratic family stays inside the disk and reports its multiplier") {
  const InnerSystem sys = quadratic_system(
      [](int) { return cplx{0.5, 0.0}; }, [](int) { return cplx{0.25, 0.0}; }, 0.5,
      TailDescriptor::Unknown);
  const DistortionSequence seq = distortion_sequence(sys, 4);
  REQUIRE(seq.entries.size() == 4);
  for (const cplx e : seq.entries) CHECK(std::abs(e - 0.5) < 1e-12);
  // Iterates of the tracked pair stay defined (maps are disk self-maps).
  const std::vector<double> ds = track_pair(sys, cplx{0.05, 0.0}, cplx{0.0, 0.08}, 40);
  CHECK(ds.size() == 40);
}
