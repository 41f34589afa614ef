#pragma once

#include <span>
#include <vector>

#include "wanderlab/inner_dynamics.hpp"
#include "wanderlab/numerics.hpp"

namespace wanderlab {

// Explicit entire map with a wandering lift: f commutes with z -> z + 2 pi i
// up to the lattice step and projects through exp onto h, which fixes 1 with
// multiplier 1 + a:
//   f(z) = z + 2 pi i + a (e^z - 1),   h(w) = w e^{a (w - 1)},
//   exp(f(z)) = h(exp z) identically.
struct HermanMap {
  cplx a{};
  cplx multiplier{};             // 1 + a = h'(1)
  bool superattracting = false;  // a = -1; accepted but flagged

  cplx f(cplx z) const;
  cplx h(cplx w) const;
  static cplx fixed_point() { return cplx{1.0, 0.0}; }  // h(1) = 1
};

// Requires |1 + a| < 1 (attracting or superattracting fixed point).
HermanMap build_herman(cplx a);

struct SemiconjugacyReport {
  double residual = 0.0;  // max |exp(f(z)) - h(exp z)| over kept samples
  int skipped = 0;        // samples dropped because e^z overflows
};

// Both routes are evaluated in extended precision: the compared values reach
// ~1e5 on moderate windows, where double rounding alone would swamp the
// identity being checked.
SemiconjugacyReport semiconjugacy_residual(const HermanMap& m,
                                           std::span<const cplx> samples);

struct Orbit {
  std::vector<cplx> points;  // f(z0), f^2(z0), ..., length <= n
  bool truncated = false;    // stopped early on overflow
};

// Iterates f from z0 for n >= 1 steps. The imaginary-axis lattice is mapped
// exactly: f(2 pi i k) = 2 pi i (k + 1) up to rounding of 2 pi k.
Orbit orbit(const HermanMap& m, cplx z0, int n);

// The distortion sequence of the wandering orbit is the constant 1 + a.
// Cross-checked by linearizing the local disk model of h at its fixed point;
// throws in the superattracting case, where no linearizing coordinate exists.
DistortionSequence herman_distortion(const HermanMap& m, int n);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;  // row-major from top-left
};

// Escape-time render over `window`: per pixel, iterations until
// |Re f^k(z)| > escape_radius, capped at max_iter, scaled to 0..255.
// Iterates drift in the imaginary direction by construction, so the real
// part is the escape signal. Requires escape_radius > 10. Deterministic,
// scanline-parallel.
GrayImage render_escape(const HermanMap& m, const Window& window, int width,
                        int height, int max_iter, double escape_radius);

}  // namespace wanderlab
