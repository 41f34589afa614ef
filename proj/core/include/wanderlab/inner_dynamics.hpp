#pragma once

#include <functional>
#include <vector>

#include "wanderlab/numerics.hpp"

namespace wanderlab {

// Symbolic description of the tail behavior of sum(1 - |g_n'(0)|). The
// trichotomy below depends on the infinite tail, which finite numerics
// cannot decide, so the constructor of a system states it.
enum class TailDescriptor { SumDiverges, SumConverges, EventuallyOne, Unknown };

enum class DynamicsClass {
  Contracting,
  EventuallyIsometric,
  SemiContracting,
  Inconclusive
};

const char* to_string(TailDescriptor t);
const char* to_string(DynamicsClass c);

// One step of a forward composition system: a holomorphic self-map of the
// disk of radius domain_radius, fixing 0, with its derivative available in
// closed form.
struct Generator {
  std::function<cplx(cplx)> map;
  std::function<cplx(cplx)> deriv;
  cplx deriv0{};
  double domain_radius = 1.0;
};

struct InnerSystem {
  // n-th map for n >= 1. Factories below validate parameters on each call
  // and throw when the requested map is not a self-map of its stated domain.
  std::function<Generator(int)> generator;
  TailDescriptor tail = TailDescriptor::Unknown;
};

// g_n(z) = c(n) z, |c(n)| <= 1.
InnerSystem linear_system(std::function<cplx(int)> c_of_n, TailDescriptor tail);

// g_n(z) = z (z + c(n)) / (1 + conj(c(n)) z), |c(n)| < 1; g_n'(0) = c(n).
InnerSystem blaschke_system(std::function<cplx(int)> c_of_n, TailDescriptor tail);

// g_n(z) = c(n) z + b(n) z^2 restricted to |z| <= subdisk_radius, validated
// as invariant: |c| + |b| subdisk_radius <= 1.
InnerSystem quadratic_system(std::function<cplx(int)> c_of_n,
                             std::function<cplx(int)> b_of_n,
                             double subdisk_radius, TailDescriptor tail);

struct DistortionSequence {
  std::vector<cplx> entries;  // entries[n-1] = g_n'(0)
};

// First `horizon` derivatives at the fixed origin. Throws when a generator
// fails validation or exceeds modulus 1 + 1e-12 at the origin.
DistortionSequence distortion_sequence(const InnerSystem& sys, int horizon);

// Trichotomy driven by the stated tail descriptor; the computed entries are
// only consulted for the eventually-isometric case (their tail must reach
// modulus 1 within 1e-12, otherwise the data contradicts the descriptor and
// the result is Inconclusive).
DynamicsClass classify(const DistortionSequence& seq, TailDescriptor tail);

// d_n = hyp_dist(G_n(z), G_n(w)) for G_n = g_n o ... o g_1, n = 1..horizon.
// Schwarz-Pick makes the sequence nonincreasing. Throws with the step index
// when an orbit leaves a generator's stated domain.
std::vector<double> track_pair(const InnerSystem& sys, cplx z, cplx w,
                               int horizon);

}  // namespace wanderlab
