#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "wanderlab/ahlfors_bers.hpp"

using namespace wanderlab;

namespace {

// mu for the plane map z -> z|z| inside the unit disk: K = 2 radial stretch.
BeltramiField radial_stretch(double strength, const Window& w, int grid_n) {
  BeltramiField f;
  f.eval = [strength](cplx z) {
    if (z == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
    return strength * z / std::conj(z);
  };
  f.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  f.sup_bound = strength;
  f.window = w;
  f.grid_n = grid_n;
  return f;
}

SolverConfig coarse_config(const BeltramiField& mu) {
  SolverConfig cfg = SolverConfig::for_field(mu);
  cfg.quad_n_r = 128;
  cfg.quad_n_theta = 256;
  return cfg;
}

}  // namespace

TEST_CASE("P transform of the disk indicator matches the mean-value identity") {
  // For |s| > r0 the area integral of 1/(z - s) over the disk of radius r0 is
  // -pi r0^2 / s by the mean-value property, and the 1/z term integrates to 0,
  // so P maps the indicator to r0^2 / s.
  AnnularField chi;
  chi.eval = [](cplx) { return cplx{1.0, 0.0}; };
  chi.support = {PolarAnnulus{0.0, 1.0, 512, 1024}};

  CHECK(std::abs(p_transform(chi, cplx{2.0, 0.0}) - 0.5) < 1e-6);
  CHECK(std::abs(p_transform(chi, cplx{-3.0, 0.0}) + 1.0 / 3.0) < 1e-6);

  // Inside the support P(chi)(s) = conj(s): the indicator is the d-bar
  // derivative of the conjugate coordinate there.
  const cplx s_in{0.5, 0.25};
  CHECK(std::abs(p_transform(chi, s_in) - std::conj(s_in)) < 5e-3);

  // Kernel vanishes identically at the base point.
  CHECK(p_transform(chi, cplx{0.0, 0.0}) == cplx{0.0, 0.0});
}

TEST_CASE("P transform demands a declared support and tolerates zero data") {
  AnnularField zero;
  zero.eval = [](cplx) { return cplx{0.0, 0.0}; };
  zero.support = {PolarAnnulus{0.2, 0.8, 64, 128}};
  CHECK(p_transform(zero, cplx{1.5, 0.3}) == cplx{0.0, 0.0});
  CHECK(p_transform(zero, cplx{0.5, 0.0}) == cplx{0.0, 0.0});

  AnnularField undeclared;
  undeclared.eval = [](cplx) { return cplx{1.0, 0.0}; };
  CHECK_THROWS_AS(p_transform(undeclared, cplx{2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("spectral transform inverts d-bar against d on a rapidly decaying field") {
  // theta = d-bar of conj(z) exp(-sigma |z|^2) transforms to the d-derivative
  // -sigma conj(z)^2 exp(-sigma |z|^2); validates the multiplier convention.
  const double sigma = 2.0;
  const Window w = centered_square(6.0);
  const int n = 512;
  ComplexGridField theta = ComplexGridField::zeros(w, n, n);
  theta.support = {PolarAnnulus{0.0, 3.0, 64, 128}};
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const cplx z = theta.node(ix, iy);
      theta.at(ix, iy) =
          (1.0 - sigma * std::norm(z)) * std::exp(-sigma * std::norm(z));
    }
  }
  const ComplexGridField out = t_transform(theta, 2);
  double worst = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const cplx z = out.node(ix, iy);
      if (std::abs(z) > 1.5) continue;
      const cplx want =
          -sigma * std::conj(z) * std::conj(z) * std::exp(-sigma * std::norm(z));
      worst = std::max(worst, std::abs(out.at(ix, iy) - want));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("spectral transform of the disk indicator matches the exterior identity") {
  const Window w = centered_square(4.0);
  const int n = 1024;
  ComplexGridField chi = ComplexGridField::zeros(w, n, n);
  chi.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      chi.at(ix, iy) = std::abs(chi.node(ix, iy)) < 1.0 ? cplx{1.0, 0.0}
                                                        : cplx{0.0, 0.0};
    }
  }
  const ComplexGridField out = t_transform(chi, 4);
  for (const cplx s : {cplx{2.0, 0.0}, cplx{0.0, -2.5}, cplx{1.8, 1.2}}) {
    const cplx want = -1.0 / (s * s);
    CHECK(std::abs(out.sample(s) - want) < 5e-3 * std::abs(want));
  }
}

TEST_CASE("spectral transform is linear and annihilates zero") {
  const Window w = centered_square(4.0);
  const int n = 128;
  ComplexGridField a = ComplexGridField::zeros(w, n, n);
  ComplexGridField b = ComplexGridField::zeros(w, n, n);
  a.support = {PolarAnnulus{0.0, 1.5, 32, 64}};
  b.support = a.support;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const cplx z = a.node(ix, iy);
      const double bump = std::exp(-2.0 * std::norm(z));
      a.at(ix, iy) = bump * cplx{unit(rng), unit(rng)};
      b.at(ix, iy) = bump * cplx{unit(rng), unit(rng)};
    }
  }
  const cplx ca{0.7, -0.2};
  const cplx cb{-0.3, 1.1};
  ComplexGridField combo = ComplexGridField::zeros(w, n, n);
  combo.support = a.support;
  for (std::size_t i = 0; i < combo.values.size(); ++i) {
    combo.values[i] = ca * a.values[i] + cb * b.values[i];
  }
  const ComplexGridField ta = t_transform(a, 2);
  const ComplexGridField tb = t_transform(b, 2);
  const ComplexGridField tc = t_transform(combo, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < tc.values.size(); ++i) {
    worst = std::max(worst,
                     std::abs(tc.values[i] - ca * ta.values[i] - cb * tb.values[i]));
  }
  CHECK(worst < 1e-10);

  ComplexGridField zero = ComplexGridField::zeros(w, n, n);
  zero.support = a.support;
  const ComplexGridField tz = t_transform(zero, 2);
  for (const cplx v : tz.values) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("spectral transform rejects support too close to the window edge") {
  const Window w = centered_square(2.0);
  ComplexGridField wide = ComplexGridField::zeros(w, 64, 64);
  wide.support = {PolarAnnulus{0.0, 1.5, 32, 64}};  // needs edge fit >= 3
  CHECK_THROWS_AS(t_transform(wide, 2), std::runtime_error);
}

TEST_CASE("fixed-point solve: zero coefficient, first iterate, contraction rate") {
  const Window w = centered_square(4.0);

  BeltramiField zero = radial_stretch(0.0, w, 128);
  const ThetaSolveResult rz = solve_theta(zero, coarse_config(zero));
  for (const cplx v : rz.theta.values) CHECK(std::abs(v) == 0.0);

  BeltramiField mu = radial_stretch(0.3, w, 128);
  // A huge fixed-point tolerance stops the iteration after one step, which by
  // construction is exactly the spectral transform of mu itself.
  SolverConfig one_step = coarse_config(mu);
  one_step.fix_tol = 1e30;
  const ThetaSolveResult r1 = solve_theta(mu, one_step);
  CHECK(r1.iterations == 1);
  const ComplexGridField t_mu = t_transform(mu.to_grid(), one_step.pad_factor);
  double gap = 0.0;
  for (std::size_t i = 0; i < t_mu.values.size(); ++i) {
    gap = std::max(gap, std::abs(r1.theta.values[i] - t_mu.values[i]));
  }
  CHECK(gap == 0.0);

  const ThetaSolveResult rs = solve_theta(mu, coarse_config(mu));
  CHECK(rs.iterations >= 3);
  REQUIRE(!rs.ratios.empty());
  // The sup-change ratio overshoots sup|mu| = 0.3: the spectral transform is
  // an L2 isometry, not a sup-norm contraction, and the coefficient jumps at
  // the disk edge. It still stays uniformly below 1.
  for (const double ratio : rs.ratios) CHECK(ratio <= 0.8);

  SolverConfig starved = coarse_config(mu);
  starved.max_iters = 2;
  CHECK_THROWS_AS(solve_theta(mu, starved), std::runtime_error);
}

TEST_CASE("principal solution of zero coefficient is the identity") {
  const Window w = centered_square(4.0);
  BeltramiField zero = radial_stretch(0.0, w, 128);
  const PrincipalMap f = principal_solution(zero, coarse_config(zero));
  for (const cplx z : {cplx{0.3, 0.0}, cplx{0.0, -0.7}, cplx{1.0, 0.0},
                       cplx{2.0, 1.0}}) {
    CHECK(std::abs(f(z) - z) < 1e-12);
  }
  CHECK(f(cplx{0.0, 0.0}) == cplx{0.0, 0.0});
}

TEST_CASE("principal solution recovers the radial stretch map") {
  const Window w = centered_square(4.0);
  BeltramiField mu = radial_stretch(1.0 / 3.0, w, 256);
  const PrincipalMap f = principal_solution(mu, coarse_config(mu));

  // F(z) = z |z| inside the disk.
  for (const double t : {0.3, 0.5, 0.7, 0.9}) {
    for (const double ang : {0.4, 2.7}) {
      const cplx z = std::polar(t, ang);
      const cplx want = z * t;
      CHECK(std::abs(f(z) - want) < 2e-2 * std::abs(want));
    }
  }
  CHECK(std::abs(f(cplx{0.5, 0.0}) - 0.25) < 2e-2 * 0.25);

  // Boundary is fixed and the map is the identity outside.
  CHECK(std::abs(f(cplx{1.0, 0.0}) - 1.0) < 5e-3);
  const cplx far{2.0, 1.0};
  CHECK(std::abs(f(far) - far) < 1e-2 * std::abs(far));

  CHECK(f(cplx{0.0, 0.0}) == cplx{0.0, 0.0});
}

TEST_CASE("remainder after the linear term is quadratic in the dial") {
  const Window w = centered_square(4.0);
  BeltramiField nu = radial_stretch(1.0, w, 256);
  SolverConfig cfg = coarse_config(nu);
  cfg.k_bound = 0.5;  // bound applies to the scaled coefficients t * nu
  const FrechetReport rep = frechet_check(nu, {0.2, 0.1, 0.05}, cfg);
  REQUIRE(!rep.degenerate);
  REQUIRE(rep.errors.size() == 3);
  CHECK(rep.errors[1] < rep.errors[0]);
  CHECK(rep.errors[2] < rep.errors[1]);
  CHECK(rep.slope == doctest::Approx(2.0).epsilon(0.15));

  BeltramiField zero = radial_stretch(0.0, w, 128);
  SolverConfig zcfg = coarse_config(zero);
  const FrechetReport rep0 = frechet_check(zero, {0.2, 0.1, 0.05}, zcfg);
  CHECK(rep0.degenerate);
  for (const double e : rep0.errors) CHECK(e < 1e-14);
}

TEST_CASE("disk derivative is 1 for a vanishing coefficient and guards symmetry") {
  const Window w = centered_square(16.0);
  BeltramiField zero;
  zero.eval = [](cplx) { return cplx{0.0, 0.0}; };
  zero.support = {PolarAnnulus{0.25, 0.5, 32, 64}, PolarAnnulus{2.0, 4.0, 32, 64}};
  zero.sup_bound = 0.0;
  zero.window = w;
  zero.grid_n = 256;
  SolverConfig cfg = SolverConfig::for_field(zero);
  cfg.quad_n_r = 64;
  cfg.quad_n_theta = 128;
  CHECK(std::abs(disk_derivative(zero, cfg) - 1.0) < 1e-12);

  BeltramiField skew = zero;
  skew.eval = [](cplx) { return cplx{0.3, 0.0}; };
  skew.sup_bound = 0.3;
  SolverConfig scfg = cfg;
  scfg.k_bound = 0.3;
  CHECK_THROWS_AS(disk_derivative(skew, scfg), std::runtime_error);

  BeltramiField touching = zero;
  touching.support = {PolarAnnulus{0.5, 1.5, 32, 64}};
  CHECK_THROWS_AS(disk_derivative(touching, cfg), std::invalid_argument);
}
