#include "wanderlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wanderlab {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

[[noreturn]] void fail_invalid(const std::string& msg) {
  throw std::invalid_argument(msg);
}

}  // namespace

void PolarAnnulus::validate() const {
  if (!(std::isfinite(r_in) && std::isfinite(r_out))) {
    fail_invalid("PolarAnnulus: radii must be finite");
  }
  if (!(r_in >= 0.0 && r_in < r_out)) {
    std::ostringstream os;
    os << "PolarAnnulus: need 0 <= r_in < r_out, got r_in=" << r_in
       << " r_out=" << r_out;
    fail_invalid(os.str());
  }
  if (n_r < 1) fail_invalid("PolarAnnulus: n_r must be >= 1");
  if (n_theta < 4) fail_invalid("PolarAnnulus: n_theta must be >= 4");
}

double PolarAnnulus::area() const { return kPi * (r_out * r_out - r_in * r_in); }

bool PolarAnnulus::contains(cplx z) const {
  const double t = std::abs(z);
  return t >= r_in && t <= r_out;
}

PolarAnnulus PolarAnnulus::with_resolution(int nr, int ntheta) const {
  return PolarAnnulus{r_in, r_out, nr, ntheta};
}

bool Window::contains(cplx z) const {
  return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min &&
         z.imag() <= y_max;
}

void Window::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
        std::isfinite(y_max))) {
    fail_invalid("Window: bounds must be finite");
  }
  if (!(x_min < x_max && y_min < y_max)) {
    fail_invalid("Window: must have positive area");
  }
}

Window centered_square(double half_extent) {
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
    fail_invalid("centered_square: half_extent must be positive and finite");
  }
  return Window{-half_extent, half_extent, -half_extent, half_extent};
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

ComplexGridField ComplexGridField::zeros(const Window& w, int nx, int ny) {
  w.validate();
  if (!is_power_of_two(nx) || !is_power_of_two(ny)) {
    fail_invalid("ComplexGridField: nx and ny must be powers of two");
  }
  ComplexGridField f;
  f.window = w;
  f.nx = nx;
  f.ny = ny;
  f.values.assign(static_cast<std::size_t>(nx) * ny, cplx{0.0, 0.0});
  return f;
}

cplx ComplexGridField::node(int ix, int iy) const {
  return cplx{window.x_min + (ix + 0.5) * dx(), window.y_min + (iy + 0.5) * dy()};
}

bool ComplexGridField::in_support(cplx z) const {
  if (support.empty()) return true;
  for (const auto& a : support) {
    if (a.contains(z)) return true;
  }
  return false;
}

cplx ComplexGridField::sample(cplx z) const {
  if (!window.contains(z)) return cplx{0.0, 0.0};
  if (!in_support(z)) return cplx{0.0, 0.0};
  // Cell-center lattice: clamp the four surrounding samples to the grid so
  // points in the outer half-cell ring extrapolate constantly.
  const double fx = (z.real() - window.x_min) / dx() - 0.5;
  const double fy = (z.imag() - window.y_min) / dy() - 0.5;
  const double flx = std::floor(fx);
  const double fly = std::floor(fy);
  const double wx = fx - flx;
  const double wy = fy - fly;
  const int ix0 = std::clamp(static_cast<int>(flx), 0, nx - 1);
  const int ix1 = std::clamp(static_cast<int>(flx) + 1, 0, nx - 1);
  const int iy0 = std::clamp(static_cast<int>(fly), 0, ny - 1);
  const int iy1 = std::clamp(static_cast<int>(fly) + 1, 0, ny - 1);
  return (1.0 - wy) * ((1.0 - wx) * at(ix0, iy0) + wx * at(ix1, iy0)) +
         wy * ((1.0 - wx) * at(ix0, iy1) + wx * at(ix1, iy1));
}

void ComplexGridField::validate() const {
  window.validate();
  if (!is_power_of_two(nx) || !is_power_of_two(ny)) {
    fail_invalid("ComplexGridField: nx and ny must be powers of two");
  }
  if (values.size() != static_cast<std::size_t>(nx) * ny) {
    fail_invalid("ComplexGridField: value count does not match nx*ny");
  }
  for (const auto& a : support) a.validate();
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

namespace {

template <typename T>
T pairwise_impl(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_impl(xs.first(half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise_impl(xs); }

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("WANDERLAB_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1) {
      return static_cast<int>(std::min<long>(parsed, hw));
    }
  }
  return hw;
}

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

cplx polar_quadrature(const std::function<cplx(cplx)>& f, const PolarAnnulus& a) {
  a.validate();
  const double dt = (a.r_out - a.r_in) / a.n_r;
  const double dth = 2.0 * kPi / a.n_theta;
  const double cell = dt * dth;

  std::vector<cplx> ring_sums(static_cast<std::size_t>(a.n_r));
  std::vector<int> bad_theta(static_cast<std::size_t>(a.n_r), -1);

  parallel_for_index(static_cast<std::size_t>(a.n_r), [&](std::size_t i) {
    const double t = a.r_in + (static_cast<double>(i) + 0.5) * dt;
    std::vector<cplx> terms(static_cast<std::size_t>(a.n_theta));
    for (int j = 0; j < a.n_theta; ++j) {
      const double th = (j + 0.5) * dth;
      const cplx z = std::polar(t, th);
      const cplx v = f(z);
      if (!finite(v)) {
        bad_theta[i] = j;
        return;
      }
      terms[static_cast<std::size_t>(j)] = v * (t * cell);
    }
    ring_sums[i] = pairwise_sum(std::span<const cplx>(terms));
  });

  for (int i = 0; i < a.n_r; ++i) {
    if (bad_theta[static_cast<std::size_t>(i)] >= 0) {
      const double t = a.r_in + (i + 0.5) * dt;
      const double th = (bad_theta[static_cast<std::size_t>(i)] + 0.5) * dth;
      std::ostringstream os;
      os << "polar_quadrature: non-finite sample at node t=" << t
         << " theta=" << th << " (radial cell " << i << ", angular cell "
         << bad_theta[static_cast<std::size_t>(i)] << ")";
      throw std::runtime_error(os.str());
    }
  }
  return pairwise_sum(std::span<const cplx>(ring_sums));
}

cplx contour_integral(const std::function<cplx(cplx)>& g, double radius,
                      int orientation, int n_nodes) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail_invalid("contour_integral: radius must be positive and finite");
  }
  if (orientation != 1 && orientation != -1) {
    fail_invalid("contour_integral: orientation must be +1 or -1");
  }
  if (n_nodes < 8) fail_invalid("contour_integral: need n_nodes >= 8");

  std::vector<cplx> terms(static_cast<std::size_t>(n_nodes));
  std::vector<int> bad(static_cast<std::size_t>(n_nodes), 0);
  parallel_for_index(static_cast<std::size_t>(n_nodes), [&](std::size_t j) {
    const double th = 2.0 * kPi * static_cast<double>(j) / n_nodes;
    const cplx z = std::polar(radius, th);
    const cplx v = g(z);
    if (!finite(v)) {
      bad[j] = 1;
      return;
    }
    terms[j] = v * z;  // dz = i z dtheta; the i*dtheta factor is applied once
  });
  for (int j = 0; j < n_nodes; ++j) {
    if (bad[static_cast<std::size_t>(j)]) {
      std::ostringstream os;
      os << "contour_integral: non-finite sample at node " << j << " of "
         << n_nodes;
      throw std::runtime_error(os.str());
    }
  }
  const cplx sum = pairwise_sum(std::span<const cplx>(terms));
  return static_cast<double>(orientation) * sum * kI * (2.0 * kPi / n_nodes);
}

WirtingerPair wirtinger_fd(const std::function<cplx(cplx)>& f, cplx z, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    fail_invalid("wirtinger_fd: step h must be positive and finite");
  }
  const cplx fx = (f(z + h) - f(z - h)) / (4.0 * h);
  const cplx fy = (f(z + kI * h) - f(z - kI * h)) / (4.0 * h);
  // d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2 applied to the
  // half-width central differences above.
  return WirtingerPair{fx - kI * fy, fx + kI * fy};
}

const char* to_string(ConvergenceStatus s) {
  switch (s) {
    case ConvergenceStatus::ConvergedMatch:
      return "converged-match";
    case ConvergenceStatus::ConvergedMismatch:
      return "converged-mismatch";
    case ConvergenceStatus::NotConverged:
      return "not-converged";
  }
  return "unknown";
}

RichardsonVerdict richardson_verdict(const std::vector<cplx>& values, cplx target,
                                     double tol) {
  if (values.size() < 3) {
    fail_invalid("richardson_verdict: need at least 3 resolutions");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    fail_invalid("richardson_verdict: tol must be positive");
  }
  for (const cplx v : values) {
    if (!finite(v)) fail_invalid("richardson_verdict: non-finite value");
  }
  const std::size_t n = values.size();
  const cplx v0 = values[n - 3];
  const cplx v1 = values[n - 2];
  const cplx v2 = values[n - 1];
  const double d_prev = std::abs(v1 - v0);
  const double d_last = std::abs(v2 - v1);

  RichardsonVerdict out;
  const bool converged = d_last <= tol && (d_last <= d_prev || d_prev <= tol);
  if (!converged) {
    out.status = ConvergenceStatus::NotConverged;
    out.extrapolated = v2;
    out.gap = std::abs(v2 - target);
    return out;
  }
  cplx extrap = v2;
  const cplx denom = v2 - 2.0 * v1 + v0;
  const double scale = std::abs(v0) + std::abs(v1) + std::abs(v2) + 1.0;
  if (std::abs(denom) > 1e-14 * scale) {
    const cplx candidate = v2 - (v2 - v1) * (v2 - v1) / denom;
    // Acceleration is only trusted as a small correction to the tail.
    if (std::abs(candidate - v2) <= 10.0 * d_last) extrap = candidate;
  }
  out.extrapolated = extrap;
  out.gap = std::abs(extrap - target);
  out.status = out.gap <= tol ? ConvergenceStatus::ConvergedMatch
                              : ConvergenceStatus::ConvergedMismatch;
  return out;
}

std::vector<LadderRung> default_ladder() {
  return {{128, 256}, {256, 512}, {512, 1024}};
}

}  // namespace wanderlab
