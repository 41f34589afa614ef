#include "wanderlab/ahlfors_bers.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace wanderlab {

namespace {

// 1/(z-s) - 1/z in the cancellation-free form s / (z (z-s)).
cplx cauchy_kernel(cplx z, cplx s) { return s / (z * (z - s)); }

struct NodeError {
  bool bad = false;
  double t = 0.0;
  double theta = 0.0;
};

// Midpoint quadrature of eval(z) * kernel(z, s) over one annulus with local
// 16x16 subdivision of cells near s; the subcell containing s is excluded.
cplx integrate_annulus_against_kernel(const std::function<cplx(cplx)>& eval,
                                      const PolarAnnulus& a, cplx s) {
  a.validate();
  const double dt = (a.r_out - a.r_in) / a.n_r;
  const double dth = 2.0 * kPi / a.n_theta;
  const double ts = std::abs(s);
  double th_s = std::atan2(s.imag(), s.real());
  if (th_s < 0.0) th_s += 2.0 * kPi;

  std::vector<cplx> ring_sums(static_cast<std::size_t>(a.n_r));
  std::vector<NodeError> ring_errors(static_cast<std::size_t>(a.n_r));

  parallel_for_index(static_cast<std::size_t>(a.n_r), [&](std::size_t i) {
    const double t0 = a.r_in + static_cast<double>(i) * dt;
    const double tc = t0 + 0.5 * dt;
    std::vector<cplx> terms(static_cast<std::size_t>(a.n_theta));
    for (int j = 0; j < a.n_theta; ++j) {
      const double th0 = j * dth;
      const double thc = th0 + 0.5 * dth;
      const cplx zc = std::polar(tc, thc);
      const double diag = std::hypot(dt, tc * dth);
      cplx term;
      if (std::abs(zc - s) > 2.5 * diag) {
        const cplx v = eval(zc);
        term = v * cauchy_kernel(zc, s) * (tc * dt * dth);
      } else {
        // Near-singular cell: 16x16 midpoint subcells, skipping the one that
        // contains s (the kernel is integrable, so the loss is O(subcell)).
        constexpr int kSub = 16;
        const double dts = dt / kSub;
        const double dths = dth / kSub;
        cplx acc{0.0, 0.0};
        for (int ai = 0; ai < kSub; ++ai) {
          const double tlo = t0 + ai * dts;
          for (int bj = 0; bj < kSub; ++bj) {
            const double thlo = th0 + bj * dths;
            const bool holds_s = ts >= tlo && ts <= tlo + dts && th_s >= thlo &&
                                 th_s <= thlo + dths;
            if (holds_s) continue;
            const double tsub = tlo + 0.5 * dts;
            const double thsub = thlo + 0.5 * dths;
            const cplx z = std::polar(tsub, thsub);
            acc += eval(z) * cauchy_kernel(z, s) * tsub;
          }
        }
        term = acc * (dts * dths);
      }
      if (!(std::isfinite(term.real()) && std::isfinite(term.imag()))) {
        ring_errors[i] = NodeError{true, tc, thc};
        return;
      }
      terms[static_cast<std::size_t>(j)] = term;
    }
    ring_sums[i] = pairwise_sum(std::span<const cplx>(terms));
  });

  for (std::size_t i = 0; i < ring_errors.size(); ++i) {
    if (ring_errors[i].bad) {
      std::ostringstream os;
      os << "p_transform: non-finite sample near t=" << ring_errors[i].t
         << " theta=" << ring_errors[i].theta;
      throw std::runtime_error(os.str());
    }
  }
  return pairwise_sum(std::span<const cplx>(ring_sums));
}

}  // namespace

cplx p_transform(const AnnularField& theta, cplx s) {
  if (!theta.eval) {
    throw std::invalid_argument("p_transform: missing integrand");
  }
  if (theta.support.empty()) {
    throw std::invalid_argument("p_transform: support undeclared");
  }
  if (s == cplx{0.0, 0.0}) return cplx{0.0, 0.0};  // kernel vanishes identically
  std::vector<cplx> parts;
  parts.reserve(theta.support.size());
  for (const auto& a : theta.support) {
    parts.push_back(integrate_annulus_against_kernel(theta.eval, a, s));
  }
  return (-1.0 / kPi) * pairwise_sum(std::span<const cplx>(parts));
}

// ---------------------------------------------------------------------------
// Spectral Beurling transform
// ---------------------------------------------------------------------------

namespace {

struct PlanEntry {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  std::size_t count = 0;

  ~PlanEntry() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (buf) fftw_free(buf);
  }
};

std::mutex& fft_mutex() {
  static std::mutex m;
  return m;
}

PlanEntry& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanEntry>> registry;
  auto it = registry.find(n);
  if (it == registry.end()) {
    auto entry = std::make_unique<PlanEntry>();
    entry->count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    entry->buf = fftw_alloc_complex(entry->count);
    if (!entry->buf) throw std::bad_alloc();
    // FFTW_ESTIMATE keeps planning deterministic (no timing feedback).
    entry->fwd = fftw_plan_dft_2d(n, n, entry->buf, entry->buf, FFTW_FORWARD,
                                  FFTW_ESTIMATE);
    entry->inv = fftw_plan_dft_2d(n, n, entry->buf, entry->buf, FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
    if (!entry->fwd || !entry->inv) {
      throw std::runtime_error("t_transform: FFTW plan creation failed");
    }
    it = registry.emplace(n, std::move(entry)).first;
  }
  return *it->second;
}

double edge_fit(const Window& w) {
  return std::min(std::min(-w.x_min, w.x_max), std::min(-w.y_min, w.y_max));
}

double max_support_radius(const std::vector<PolarAnnulus>& support) {
  double r = 0.0;
  for (const auto& a : support) r = std::max(r, a.r_out);
  return r;
}

}  // namespace

ComplexGridField t_transform(const ComplexGridField& theta, int pad_factor) {
  theta.validate();
  if (theta.support.empty()) {
    throw std::invalid_argument("t_transform: support undeclared");
  }
  if (theta.nx != theta.ny) {
    throw std::invalid_argument("t_transform: grid must be square");
  }
  if (pad_factor < 1) {
    throw std::invalid_argument("t_transform: pad_factor must be >= 1");
  }
  const double fit = edge_fit(theta.window);
  const double r_max = max_support_radius(theta.support);
  if (!(fit >= 2.0 * r_max)) {
    std::ostringstream os;
    os << "t_transform: support radius " << r_max
       << " reaches within the padding margin of the window edge (fit " << fit
       << ")";
    throw std::runtime_error(os.str());
  }

  const int n = theta.nx;
  const int N = n * pad_factor;
  const int offset = (pad_factor - 1) * n / 2;
  const double wx = theta.window.width() * pad_factor;
  const double wy = theta.window.height() * pad_factor;

  std::lock_guard<std::mutex> lock(fft_mutex());
  PlanEntry& plans = plans_for(N);

  std::fill_n(reinterpret_cast<double*>(plans.buf), 2 * plans.count, 0.0);
  for (int iy = 0; iy < n; ++iy) {
    const std::size_t dst =
        static_cast<std::size_t>(iy + offset) * N + static_cast<std::size_t>(offset);
    const std::size_t src = static_cast<std::size_t>(iy) * n;
    for (int ix = 0; ix < n; ++ix) {
      plans.buf[dst + ix][0] = theta.values[src + ix].real();
      plans.buf[dst + ix][1] = theta.values[src + ix].imag();
    }
  }

  fftw_execute(plans.fwd);

  for (int iy = 0; iy < N; ++iy) {
    const int ky = iy <= N / 2 ? iy : iy - N;
    const double xi2 = ky / wy;
    for (int ix = 0; ix < N; ++ix) {
      const int kx = ix <= N / 2 ? ix : ix - N;
      const double xi1 = kx / wx;
      const std::size_t idx = static_cast<std::size_t>(iy) * N + ix;
      if (kx == 0 && ky == 0) {
        plans.buf[idx][0] = 0.0;  // DC: PV symmetry forces mean-zero action
        plans.buf[idx][1] = 0.0;
        continue;
      }
      const cplx xi{xi1, xi2};
      const cplx m = std::conj(xi) / xi;
      const cplx v{plans.buf[idx][0], plans.buf[idx][1]};
      const cplx out = m * v;
      plans.buf[idx][0] = out.real();
      plans.buf[idx][1] = out.imag();
    }
  }

  fftw_execute(plans.inv);

  ComplexGridField out = ComplexGridField::zeros(theta.window, n, n);
  const double scale = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  for (int iy = 0; iy < n; ++iy) {
    const std::size_t src =
        static_cast<std::size_t>(iy + offset) * N + static_cast<std::size_t>(offset);
    const std::size_t dst = static_cast<std::size_t>(iy) * n;
    for (int ix = 0; ix < n; ++ix) {
      out.values[dst + ix] =
          cplx{plans.buf[src + ix][0] * scale, plans.buf[src + ix][1] * scale};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-point solve and principal map
// ---------------------------------------------------------------------------

void SolverConfig::validate() const {
  window.validate();
  if (!is_power_of_two(grid_n)) {
    throw std::invalid_argument("SolverConfig: grid_n must be a power of two");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  }
  if (!(fix_tol > 0.0)) {
    throw std::invalid_argument("SolverConfig: fix_tol must be positive");
  }
  if (!(k_bound >= 0.0 && k_bound < 1.0)) {
    std::ostringstream os;
    os << "SolverConfig: k_bound = " << k_bound
       << " must lie in [0, 1) for the Neumann series to contract";
    throw std::invalid_argument(os.str());
  }
  if (quad_n_r < 1 || quad_n_theta < 4) {
    throw std::invalid_argument("SolverConfig: quadrature resolution too small");
  }
  if (pad_factor < 1) {
    throw std::invalid_argument("SolverConfig: pad_factor must be >= 1");
  }
}

void SolverConfig::validate_for(const BeltramiField& mu) const {
  validate();
  mu.validate();
  if (mu.sup_bound > k_bound + 1e-12) {
    std::ostringstream os;
    os << "SolverConfig: coefficient bound " << mu.sup_bound
       << " exceeds the configured k_bound " << k_bound;
    throw std::invalid_argument(os.str());
  }
  const double fit = edge_fit(window);
  const double r_max = max_support_radius(mu.support);
  if (!(fit >= 4.0 * r_max)) {
    std::ostringstream os;
    os << "SolverConfig: window edge distance " << fit
       << " is below 4x the outer support radius " << r_max
       << " (padding factor >= 4 required)";
    throw std::invalid_argument(os.str());
  }
}

SolverConfig SolverConfig::for_field(const BeltramiField& mu) {
  mu.validate();
  SolverConfig cfg;
  cfg.window = mu.window;
  cfg.grid_n = mu.grid_n;
  cfg.k_bound = mu.sup_bound;
  return cfg;
}

namespace {

ComplexGridField realize_on_grid(const BeltramiField& mu, const Window& w, int n) {
  ComplexGridField g = ComplexGridField::zeros(w, n, n);
  g.support = mu.support;
  parallel_for_index(static_cast<std::size_t>(n), [&](std::size_t iy) {
    for (int ix = 0; ix < n; ++ix) {
      g.at(ix, static_cast<int>(iy)) = mu(g.node(ix, static_cast<int>(iy)));
    }
  });
  return g;
}

std::vector<PolarAnnulus> with_quadrature(const std::vector<PolarAnnulus>& support,
                                          int n_r, int n_theta) {
  std::vector<PolarAnnulus> out = support;
  for (auto& a : out) {
    a.n_r = n_r;
    a.n_theta = n_theta;
  }
  return out;
}

}  // namespace

ThetaSolveResult solve_theta(const BeltramiField& mu, const SolverConfig& cfg) {
  cfg.validate_for(mu);
  const int n = cfg.grid_n;
  const ComplexGridField mu_grid = realize_on_grid(mu, cfg.window, n);

  ComplexGridField theta = ComplexGridField::zeros(cfg.window, n, n);
  ComplexGridField product = ComplexGridField::zeros(cfg.window, n, n);
  product.support = mu.support;

  ThetaSolveResult result;
  double prev_change = -1.0;
  for (int j = 1; j <= cfg.max_iters; ++j) {
    for (std::size_t i = 0; i < product.values.size(); ++i) {
      product.values[i] = mu_grid.values[i] * (theta.values[i] + 1.0);
    }
    ComplexGridField next = t_transform(product, cfg.pad_factor);

    double change = 0.0;
    for (std::size_t i = 0; i < next.values.size(); ++i) {
      change = std::max(change, std::abs(next.values[i] - theta.values[i]));
    }
    theta.values.swap(next.values);
    result.iterations = j;
    if (j >= 2 && prev_change > 0.0) {
      result.ratios.push_back(change / prev_change);
    }
    prev_change = change;
    if (change < cfg.fix_tol) {
      result.theta = std::move(theta);
      result.theta.support.clear();  // T output is not compactly supported
      return result;
    }
  }
  std::ostringstream os;
  os << "solve_theta: no fixed point within " << cfg.max_iters
     << " iterations; last contraction ratio "
     << (result.ratios.empty() ? 0.0 : result.ratios.back()) << ", last change "
     << prev_change;
  throw std::runtime_error(os.str());
}

cplx PrincipalMap::operator()(cplx s) const {
  AnnularField direct;
  direct.support = with_quadrature(mu.support, quad_n_r, quad_n_theta);
  direct.eval = [this](cplx z) { return mu(z); };

  AnnularField correction;
  correction.support = direct.support;
  correction.eval = [this](cplx z) { return mu(z) * theta.sample(z); };

  return s + p_transform(direct, s) + p_transform(correction, s);
}

PrincipalMap principal_solution(const BeltramiField& mu, const SolverConfig& cfg) {
  ThetaSolveResult solved = solve_theta(mu, cfg);
  PrincipalMap map;
  map.mu = mu;
  map.theta = std::move(solved.theta);
  map.quad_n_r = cfg.quad_n_r;
  map.quad_n_theta = cfg.quad_n_theta;
  return map;
}

FrechetReport frechet_check(const BeltramiField& nu,
                            const std::vector<double>& scales,
                            const SolverConfig& cfg) {
  nu.validate();
  if (scales.size() < 3) {
    throw std::invalid_argument("frechet_check: need at least 3 scales");
  }
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] < scales[i - 1]))) {
      throw std::invalid_argument(
          "frechet_check: scales must be positive and strictly decreasing");
    }
    if (!(scales[i] * nu.sup_bound < 1.0)) {
      throw std::invalid_argument(
          "frechet_check: t * sup|nu| must stay below 1");
    }
  }

  AnnularField nu_field;
  nu_field.support = with_quadrature(nu.support, cfg.quad_n_r, cfg.quad_n_theta);
  nu_field.eval = [&nu](cplx z) { return nu(z); };
  const cplx p1 = p_transform(nu_field, cplx{1.0, 0.0});

  FrechetReport report;
  report.scales = scales;
  for (const double t : scales) {
    BeltramiField scaled = nu;
    const auto base = nu.eval;
    scaled.eval = [base, t](cplx z) { return t * base(z); };
    scaled.sup_bound = t * nu.sup_bound;
    SolverConfig run_cfg = cfg;
    run_cfg.k_bound = scaled.sup_bound;
    const PrincipalMap f = principal_solution(scaled, run_cfg);
    const cplx f1 = f(cplx{1.0, 0.0});
    report.errors.push_back(std::abs(f1 - 1.0 - t * p1));
  }

  bool degenerate = false;
  for (const double e : report.errors) {
    if (e < 1e-14) degenerate = true;
  }
  report.degenerate = degenerate;
  if (!degenerate) {
    // Least-squares slope of log e against log t.
    const std::size_t m = scales.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::log(scales[i]);
      const double y = std::log(report.errors[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    report.slope = (m * sxy - sx * sy) / denom;
  }
  return report;
}

cplx disk_derivative(const BeltramiField& mu_hat, const SolverConfig& cfg) {
  mu_hat.validate();
  for (const auto& a : mu_hat.support) {
    if (a.contains(cplx{1.0, 0.0})) {
      throw std::invalid_argument(
          "disk_derivative: support must stay away from z = 1");
    }
  }

  // The inner annulus drives the reflection sampling.
  const PolarAnnulus* inner = nullptr;
  for (const auto& a : mu_hat.support) {
    if (a.r_out < 1.0) inner = &a;
  }
  if (inner != nullptr) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double t =
          inner->r_in + (i + 0.5) * (inner->r_out - inner->r_in) / 8.0;
      for (int j = 0; j < 8; ++j) {
        const double th = 2.0 * kPi * (j + 0.37) / 8.0;
        const cplx z = std::polar(t, th);
        const cplx zbar = std::conj(z);
        const cplx reflected = mu_hat(1.0 / zbar);
        const cplx expected = std::conj(mu_hat(z)) * (z * z) / (zbar * zbar);
        worst = std::max(worst, std::abs(reflected - expected));
      }
    }
    if (worst > 1e-8) {
      std::ostringstream os;
      os << "disk_derivative: unit-circle reflection symmetry violated by "
         << worst << " (> 1e-8)";
      throw std::runtime_error(os.str());
    }
  }

  const PrincipalMap f = principal_solution(mu_hat, cfg);
  return std::conj(f(cplx{1.0, 0.0}));
}

}  // namespace wanderlab
