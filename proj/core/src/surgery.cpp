#include "wanderlab/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wanderlab {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

double annulus_radius(cplx z) { return std::abs(z); }

}  // namespace

InterpolationParams InterpolationParams::make(cplx alpha, double R, cplx lambda) {
  InterpolationParams p;
  p.alpha = alpha;
  p.R = R;
  p.lambda = lambda;
  const double a = std::abs(alpha);
  p.r = a * R;
  p.rho = a / 2.0 * std::min(a, 1.0 - a);
  p.alpha_tilde = alpha + p.rho * lambda;
  p.validate();
  return p;
}

void InterpolationParams::validate() const {
  const double a = std::abs(alpha);
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << "InterpolationParams: need 0 < |alpha| < 1, got |alpha| = " << a;
    throw std::invalid_argument(os.str());
  }
  if (!(R > 0.0 && R < 1.0)) {
    throw std::invalid_argument("InterpolationParams: need R in (0, 1)");
  }
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("InterpolationParams: need |lambda| < 1");
  }
  if (r != a * R) {
    throw std::invalid_argument("InterpolationParams: r must equal |alpha| R");
  }
  if (rho != a / 2.0 * std::min(a, 1.0 - a)) {
    throw std::invalid_argument(
        "InterpolationParams: rho must equal |alpha|/2 min(|alpha|, 1-|alpha|)");
  }
  if (alpha_tilde != alpha + rho * lambda) {
    throw std::invalid_argument(
        "InterpolationParams: alpha_tilde must equal alpha + rho lambda");
  }
}

cplx InterpolationParams::profile(double t) const {
  return ((R - t) * alpha_tilde + (t - r) * alpha) / (R - r);
}

cplx InterpolationParams::profile_slope() const {
  return (alpha - alpha_tilde) / (R - r);
}

cplx interpolate(const InterpolationParams& p, cplx z) {
  const double t = annulus_radius(z);
  if (!(t >= p.r && t <= p.R)) {
    std::ostringstream os;
    os << "interpolate: |z| = " << t << " outside [" << p.r << ", " << p.R << "]";
    throw std::domain_error(os.str());
  }
  if (t == p.r) return p.alpha_tilde * z;
  if (t == p.R) return p.alpha * z;
  return p.profile(t) * z;
}

namespace {

// Shared closed form of the Wirtinger quotient on the open annulus; returns
// false when the denominator degenerates.
bool beltrami_closed_form(const InterpolationParams& p, cplx z, cplx* out) {
  const double t = annulus_radius(z);
  const cplx e2 = (z * z) / (t * t);  // e^{2 i theta}
  const cplx half_t_slope = 0.5 * t * p.profile_slope();
  const cplx den = p.profile(t) + half_t_slope;
  if (std::abs(den) < 1e-14) return false;
  *out = half_t_slope * e2 / den;
  return true;
}

void require_open_annulus(const InterpolationParams& p, cplx z, const char* who) {
  const double t = annulus_radius(z);
  if (!(t > p.r && t < p.R)) {
    std::ostringstream os;
    os << who << ": |z| = " << t << " outside the open annulus (" << p.r << ", "
       << p.R << ")";
    throw std::domain_error(os.str());
  }
}

}  // namespace

cplx beltrami_of_interpolation(const InterpolationParams& p, cplx z) {
  require_open_annulus(p, z, "beltrami_of_interpolation");
  cplx mu;
  if (!beltrami_closed_form(p, z, &mu)) {
    fail("beltrami_of_interpolation: differential degenerates "
         "(|dphi/dz| < 1e-14)");
  }
  return mu;
}

LambdaDerivativeReport dnu_dlambda(const InterpolationParams& p, cplx z) {
  if (p.lambda != cplx{0.0, 0.0}) {
    throw std::invalid_argument("dnu_dlambda: defined at lambda = 0 only");
  }
  require_open_annulus(p, z, "dnu_dlambda");
  const double t = annulus_radius(z);
  const cplx e2 = (z * z) / (t * t);
  const cplx e1 = z / t;

  LambdaDerivativeReport rep;
  // Route (a): at lambda = 0 the numerator of mu vanishes, so the quotient
  // rule collapses to d(numerator)/dlambda over A(t) = alpha.
  rep.derivative = -(0.5 * t * p.rho / (p.R - p.r)) * e2 / p.alpha;

  // Route (b): complex 4-point stencil in lambda.
  const double h = 1e-5;
  const auto mu_at = [&](cplx lam) {
    return beltrami_of_interpolation(InterpolationParams::make(p.alpha, p.R, lam),
                                     z);
  };
  rep.stencil = (mu_at(cplx{h, 0.0}) - mu_at(cplx{-h, 0.0})) / (4.0 * h) +
                (mu_at(cplx{0.0, h}) - mu_at(cplx{0.0, -h})) / (4.0 * h * kI);

  if (std::abs(rep.derivative - rep.stencil) > 1e-5) {
    std::ostringstream os;
    os << "dnu_dlambda: symbolic and finite-difference routes disagree by "
       << std::abs(rep.derivative - rep.stencil) << " (> 1e-5)";
    fail(os.str());
  }

  const cplx common = p.rho * t / (2.0 * p.alpha * p.R * (1.0 - p.alpha));
  rep.candidate_two_theta = common * e2;
  rep.candidate_one_theta = common * e1;
  const auto matches = [&](cplx candidate) {
    return std::abs(rep.derivative - candidate) <=
           1e-6 * std::max(1.0, std::abs(candidate));
  };
  rep.matches_two_theta = matches(rep.candidate_two_theta);
  rep.matches_one_theta = matches(rep.candidate_one_theta);
  return rep;
}

cplx BeltramiField::operator()(cplx z) const {
  if (support.empty()) return cplx{0.0, 0.0};
  for (const auto& a : support) {
    if (a.contains(z)) return eval(z);
  }
  return cplx{0.0, 0.0};
}

ComplexGridField BeltramiField::to_grid() const {
  validate();
  ComplexGridField g = ComplexGridField::zeros(window, grid_n, grid_n);
  g.support = support;
  parallel_for_index(static_cast<std::size_t>(grid_n), [&](std::size_t iy) {
    for (int ix = 0; ix < grid_n; ++ix) {
      const cplx z = g.node(ix, static_cast<int>(iy));
      g.at(ix, static_cast<int>(iy)) = (*this)(z);
    }
  });
  return g;
}

void BeltramiField::validate() const {
  if (!eval) throw std::invalid_argument("BeltramiField: missing evaluator");
  if (support.empty()) {
    throw std::invalid_argument("BeltramiField: support undeclared");
  }
  for (const auto& a : support) a.validate();
  window.validate();
  if (!is_power_of_two(grid_n)) {
    throw std::invalid_argument("BeltramiField: grid_n must be a power of two");
  }
  if (!(sup_bound >= 0.0) || !std::isfinite(sup_bound)) {
    throw std::invalid_argument("BeltramiField: sup_bound must be finite");
  }
}

BeltramiField interpolation_field(const InterpolationParams& p,
                                  const Window& window, int grid_n) {
  p.validate();
  BeltramiField f;
  f.eval = [p](cplx z) {
    const double t = annulus_radius(z);
    if (!(t > p.r && t < p.R)) return cplx{0.0, 0.0};
    cplx mu;
    if (!beltrami_closed_form(p, z, &mu)) {
      fail("interpolation_field: differential degenerates inside the annulus");
    }
    return mu;
  };
  f.support = {PolarAnnulus{p.r, p.R, 128, 256}};
  f.sup_bound = std::abs(p.lambda);
  f.window = window;
  f.grid_n = grid_n;
  f.validate();
  return f;
}

cplx tau_pullback_point(const std::function<cplx(cplx)>& nu, cplx z) {
  if (z == cplx{0.0, 0.0}) {
    throw std::domain_error("tau_pullback_point: undefined at the origin");
  }
  const cplx w = 1.0 / std::conj(z);
  const cplx zbar = std::conj(z);
  return std::conj(nu(w)) * (z * z) / (zbar * zbar);
}

BeltramiField symmetrize(const BeltramiField& nu) {
  nu.validate();
  if (nu.support.size() != 1) {
    throw std::invalid_argument(
        "symmetrize: expects a coefficient supported on a single annulus "
        "inside the unit circle");
  }
  const double r = nu.support.front().r_in;
  const double R = nu.support.front().r_out;
  if (!(r > 0.0 && R < 1.0)) {
    throw std::invalid_argument(
        "symmetrize: support must satisfy 0 < r < R < 1");
  }
  const double dx = nu.window.width() / nu.grid_n;
  if (!(r >= 4.0 * dx)) {
    std::ostringstream os;
    os << "symmetrize: inner radius " << r << " is below the resolvable scale "
       << 4.0 * dx << " of the target grid";
    fail(os.str());
  }
  const double fit = std::min(std::min(-nu.window.x_min, nu.window.x_max),
                              std::min(-nu.window.y_min, nu.window.y_max));
  if (!(1.0 / r + 2.0 * dx <= fit)) {
    std::ostringstream os;
    os << "symmetrize: reflected support radius " << 1.0 / r
       << " touches the grid window boundary (fits only below " << fit << ")";
    fail(os.str());
  }

  BeltramiField out;
  const auto inner_eval = nu.eval;
  out.eval = [inner_eval, r, R](cplx z) {
    const double t = annulus_radius(z);
    if (t > r && t < R) return inner_eval(z);
    if (t > 1.0 / R && t < 1.0 / r) return tau_pullback_point(inner_eval, z);
    return cplx{0.0, 0.0};
  };
  out.support = {PolarAnnulus{r, R, 128, 256},
                 PolarAnnulus{1.0 / R, 1.0 / r, 128, 256}};
  out.sup_bound = nu.sup_bound;  // |tau* nu| = |nu| pointwise
  out.window = nu.window;
  out.grid_n = nu.grid_n;
  return out;
}

cplx beltrami_pullback(const std::function<cplx(cplx)>& mu,
                       const std::function<cplx(cplx)>& f,
                       const std::function<cplx(cplx)>& f_prime, cplx z) {
  const cplx fp = f_prime(z);
  if (std::abs(fp) == 0.0) {
    throw std::domain_error("beltrami_pullback: critical point (f'(z) = 0)");
  }
  return mu(f(z)) * std::conj(fp) / fp;
}

}  // namespace wanderlab
