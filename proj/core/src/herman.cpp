#include "wanderlab/herman.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wanderlab/hyperbolic.hpp"
#include "wanderlab/koenigs.hpp"

namespace wanderlab {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kExpOverflowRe = 700.0;  // e^z leaves double range

using lcplx = std::complex<long double>;

lcplx widen(cplx z) { return lcplx{z.real(), z.imag()}; }

bool finite(const lcplx& z) {
  return std::isfinite(static_cast<double>(z.real())) &&
         std::isfinite(static_cast<double>(z.imag()));
}

}  // namespace

cplx HermanMap::f(cplx z) const { return z + cplx{0.0, kTwoPi} + a * (std::exp(z) - 1.0); }

cplx HermanMap::h(cplx w) const { return w * std::exp(a * (w - 1.0)); }

HermanMap build_herman(cplx a) {
  const cplx multiplier = 1.0 + a;
  if (!(std::abs(multiplier) < 1.0)) {
    std::ostringstream os;
    os << "build_herman: |1 + a| = " << std::abs(multiplier)
       << " must be < 1 (fixed point not attracting)";
    throw std::invalid_argument(os.str());
  }
  HermanMap m;
  m.a = a;
  m.multiplier = multiplier;
  m.superattracting = multiplier == cplx{0.0, 0.0};
  return m;
}

SemiconjugacyReport semiconjugacy_residual(const HermanMap& m,
                                           std::span<const cplx> samples) {
  const lcplx a = widen(m.a);
  const lcplx two_pi_i{0.0L, 2.0L * std::numbers::pi_v<long double>};
  SemiconjugacyReport report;
  long double worst = 0.0L;
  for (const cplx z : samples) {
    if (z.real() > kExpOverflowRe) {
      ++report.skipped;
      continue;
    }
    const lcplx ez = std::exp(widen(z));
    const lcplx fz = widen(z) + two_pi_i + a * (ez - 1.0L);
    const lcplx via_f = std::exp(fz);
    const lcplx via_h = ez * std::exp(a * (ez - 1.0L));
    if (!finite(via_f) || !finite(via_h)) {
      ++report.skipped;
      continue;
    }
    worst = std::max(worst, std::abs(via_f - via_h));
  }
  report.residual = static_cast<double>(worst);
  return report;
}

Orbit orbit(const HermanMap& m, cplx z0, int n) {
  if (n < 1) throw std::invalid_argument("orbit: n must be >= 1");
  Orbit out;
  out.points.reserve(static_cast<std::size_t>(n));
  cplx z = z0;
  for (int k = 0; k < n; ++k) {
    z = m.f(z);
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag()))) {
      out.truncated = true;
      break;
    }
    out.points.push_back(z);
  }
  return out;
}

DistortionSequence herman_distortion(const HermanMap& m, int n) {
  if (n < 1) throw std::invalid_argument("herman_distortion: n must be >= 1");
  if (m.superattracting) {
    throw std::invalid_argument(
        "herman_distortion: multiplier 0 admits no linearizing coordinate");
  }
  // Local disk model of h at its fixed point; a successful linearization
  // certifies the multiplier, and the linear model's hyperbolic distortion
  // at 0 is that multiplier's modulus.
  const auto disk_model = [&m](cplx zeta) {
    return m.h(HermanMap::fixed_point() + zeta) - HermanMap::fixed_point();
  };
  const LinearizerModel model = linearizer(disk_model, m.multiplier, 0.05, 1e-9);
  const double linear_distortion = hyp_distortion(
      [&model](cplx z) { return model.alpha * z; },
      [&model](cplx) { return model.alpha; }, cplx{0.0, 0.0});
  if (std::abs(linear_distortion - std::abs(m.multiplier)) > 1e-12) {
    throw std::runtime_error(
        "herman_distortion: linear-model distortion disagrees with |1 + a|");
  }
  DistortionSequence seq;
  seq.entries.assign(static_cast<std::size_t>(n), m.multiplier);
  return seq;
}

GrayImage render_escape(const HermanMap& m, const Window& window, int width,
                        int height, int max_iter, double escape_radius) {
  window.validate();
  if (width < 1 || height < 1) {
    throw std::invalid_argument("render_escape: resolution must be positive");
  }
  if (max_iter < 0) {
    throw std::invalid_argument("render_escape: max_iter must be >= 0");
  }
  if (!(escape_radius > 10.0)) {
    throw std::invalid_argument("render_escape: escape_radius must exceed 10");
  }

  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, 0);
  if (max_iter == 0) return img;  // uniform by convention

  const double px_w = window.width() / width;
  const double px_h = window.height() / height;
  parallel_for_index(static_cast<std::size_t>(height), [&](std::size_t row) {
    const double y = window.y_max - (static_cast<double>(row) + 0.5) * px_h;
    unsigned char* line = img.pixels.data() + row * static_cast<std::size_t>(width);
    for (int col = 0; col < width; ++col) {
      const double x = window.x_min + (col + 0.5) * px_w;
      cplx z{x, y};
      int count = max_iter;
      for (int k = 0; k < max_iter; ++k) {
        if (std::abs(z.real()) > escape_radius) {
          count = k;
          break;
        }
        z = m.f(z);
        if (!(std::isfinite(z.real()) && std::isfinite(z.imag()))) {
          count = k + 1;
          break;
        }
      }
      line[col] = static_cast<unsigned char>((count * 255) / max_iter);
    }
  });
  return img;
}

}  // namespace wanderlab
