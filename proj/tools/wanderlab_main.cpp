// Command line front end: parameter parsing, suite orchestration, report
// serialization. Exit codes: 0 all verdicts match, 1 any mismatch or runtime
// failure, 2 usage error (unknown flag or violated parameter constraint).
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wanderlab/ahlfors_bers.hpp"
#include "wanderlab/herman.hpp"
#include "wanderlab/hyperbolic.hpp"
#include "wanderlab/inner_dynamics.hpp"
#include "wanderlab/koenigs.hpp"
#include "wanderlab/numerics.hpp"
#include "wanderlab/report.hpp"
#include "wanderlab/surgery.hpp"
#include "wanderlab/verify.hpp"

namespace {

using namespace wanderlab;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  double alpha = 0.5;
  double R = 0.1;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  double a_re = -0.5;
  double a_im = 0.0;
  double a_shorthand = 0.0;
  bool a_shorthand_set = false;
  int grid = 1024;
  double tol = 1e-9;
  int horizon = 200;
  int max_iter = 100;
  double escape_radius = 50.0;
  std::string out;
  std::string csv;
  bool timing = false;

  cplx lambda() const { return {lambda_re, lambda_im}; }
  cplx a() const {
    return a_shorthand_set ? cplx{a_shorthand, 0.0} : cplx{a_re, a_im};
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_alpha_R(const Params& p) {
  require(p.alpha > 0.0 && p.alpha < 1.0,
          "alpha = " + fmt(p.alpha) + " violates 0 < |alpha| < 1");
  require(p.R > 0.0 && p.R < 1.0, "R = " + fmt(p.R) + " violates 0 < R < 1");
}

VerdictRecord gap_record(std::string name, cplx computed, cplx reference,
                         double tolerance, std::vector<std::string> resolutions) {
  VerdictRecord rec;
  rec.name = std::move(name);
  rec.computed = computed;
  rec.reference_value = reference;
  rec.tolerance = tolerance;
  rec.abs_gap = std::abs(computed - reference);
  rec.verdict = rec.abs_gap < tolerance ? ConvergenceStatus::ConvergedMatch
                                        : ConvergenceStatus::ConvergedMismatch;
  rec.resolutions = std::move(resolutions);
  return rec;
}

// For one-sided bounds: pass when computed <= limit + tolerance headroom.
VerdictRecord bound_record(std::string name, double computed, double limit,
                           double tolerance, std::vector<std::string> resolutions) {
  VerdictRecord rec;
  rec.name = std::move(name);
  rec.computed = cplx{computed, 0.0};
  rec.reference_value = cplx{limit, 0.0};
  rec.tolerance = tolerance;
  rec.abs_gap = std::max(0.0, computed - limit);
  rec.verdict = rec.abs_gap < tolerance ? ConvergenceStatus::ConvergedMatch
                                        : ConvergenceStatus::ConvergedMismatch;
  rec.resolutions = std::move(resolutions);
  return rec;
}

VerdictRecord label_record(std::string name, DynamicsClass computed,
                           DynamicsClass expected, int horizon) {
  VerdictRecord rec =
      gap_record(std::move(name), cplx{static_cast<double>(computed), 0.0},
                 cplx{static_cast<double>(expected), 0.0}, 0.5, {});
  rec.resolutions = {"horizon=" + std::to_string(horizon),
                     std::string("label=") + to_string(computed),
                     std::string("expected=") + to_string(expected)};
  return rec;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

std::vector<VerdictRecord> classify_suite(const Params& p) {
  struct Family {
    std::string name;
    InnerSystem sys;
    DynamicsClass expected;
  };
  std::vector<Family> families;
  families.push_back({"classify-sum-diverges",
                      linear_system([](int n) { return cplx{1.0 - 1.0 / n, 0.0}; },
                                    TailDescriptor::SumDiverges),
                      DynamicsClass::Contracting});
  families.push_back({"classify-eventually-one",
                      linear_system([](int) { return cplx{1.0, 0.0}; },
                                    TailDescriptor::EventuallyOne),
                      DynamicsClass::EventuallyIsometric});
  families.push_back(
      {"classify-sum-converges",
       linear_system([](int n) { return cplx{1.0 - std::pow(2.0, -n), 0.0}; },
                     TailDescriptor::SumConverges),
       DynamicsClass::SemiContracting});

  std::vector<VerdictRecord> records;
  for (const auto& family : families) {
    const DistortionSequence seq = distortion_sequence(family.sys, p.horizon);
    const DynamicsClass label = classify(seq, family.sys.tail);
    records.push_back(label_record(family.name, label, family.expected, p.horizon));
  }
  return records;
}

std::vector<VerdictRecord> distortion_suite(const Params& p) {
  const InnerSystem sys = blaschke_system(
      [](int) { return cplx{0.5, 0.0}; }, TailDescriptor::SumDiverges);
  const DistortionSequence seq = distortion_sequence(sys, p.horizon);
  double max_mod = 0.0;
  for (const cplx e : seq.entries) max_mod = std::max(max_mod, std::abs(e));

  const cplx z{0.3, 0.0};
  const cplx w{0.0, 0.2};
  const std::vector<double> d = track_pair(sys, z, w, p.horizon);
  double worst_increase = 0.0;
  double prev = hyp_dist(z, w);
  for (const double dn : d) {
    worst_increase = std::max(worst_increase, dn - prev);
    prev = dn;
  }

  const Generator g1 = sys.generator(1);
  const double distortion = hyp_distortion(g1.map, g1.deriv, cplx{0.2, 0.1});

  const std::vector<std::string> res = {"horizon=" + std::to_string(p.horizon)};
  std::vector<VerdictRecord> records;
  records.push_back(
      bound_record("distortion-modulus-bound", max_mod, 1.0, 1e-12, res));
  records.push_back(
      bound_record("schwarz-pick-monotone", worst_increase, 0.0, 1e-12, res));
  records.push_back(
      bound_record("hyperbolic-distortion-bound", distortion, 1.0, 1e-12, res));
  return records;
}

std::vector<VerdictRecord> koenigs_suite(const Params& p) {
  const auto g = [](cplx z) { return 0.5 * z + z * z; };
  const LinearizerModel model = linearizer(g, cplx{0.5, 0.0}, 0.1, 1e-12);

  double residual = 0.0;
  for (int j = 0; j < 256; ++j) {
    const cplx z = std::polar(model.radius, 2.0 * kPi * j / 256);
    residual = std::max(residual,
                        std::abs(model.eval(g(z)) - model.alpha * model.eval(z)));
  }
  const cplx w{0.02, 0.01};
  const cplx z_inv = linearizer_inverse(model, w);

  const std::vector<std::string> res = {"nodes=256", "radius=0.1"};
  std::vector<VerdictRecord> records;
  records.push_back(gap_record("koenigs-residual", cplx{residual, 0.0},
                               cplx{0.0, 0.0}, p.tol, res));
  records.push_back(
      gap_record("koenigs-c2", model.coeffs[1], cplx{4.0, 0.0}, 1e-9, res));
  records.push_back(gap_record("koenigs-c3", model.coeffs[2],
                               cplx{32.0 / 3.0, 0.0}, 1e-8, res));
  records.push_back(gap_record("koenigs-inverse-roundtrip", model.eval(z_inv), w,
                               p.tol, res));
  return records;
}

std::vector<VerdictRecord> surgery_suite(const Params& p) {
  require_alpha_R(p);
  require(std::abs(p.lambda()) <= 0.9,
          "lambda magnitude must be <= 0.9 (finite-difference headroom)");
  const InterpolationParams pp =
      InterpolationParams::make(p.alpha, p.R, p.lambda());

  const double boundary_gap = std::max(
      std::abs(interpolate(pp, cplx{pp.r, 0.0}) - pp.alpha_tilde * pp.r),
      std::abs(interpolate(pp, cplx{pp.R, 0.0}) - pp.alpha * pp.R));

  std::mt19937_64 rng(9001);
  double max_mu = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double t = pp.r + (0.001 + 0.998 * unit_double(rng)) * (pp.R - pp.r);
    const double th = 2.0 * kPi * unit_double(rng);
    max_mu = std::max(max_mu,
                      std::abs(beltrami_of_interpolation(pp, std::polar(t, th))));
  }

  const cplx probe = std::polar(std::sqrt(pp.r * pp.R), 0.7);
  const auto mu_of_lambda = [&p, probe](cplx lam) {
    return beltrami_of_interpolation(InterpolationParams::make(p.alpha, p.R, lam),
                                     probe);
  };
  const WirtingerPair wp = wirtinger_fd(mu_of_lambda, p.lambda(), 1e-4);

  const std::vector<std::string> res = {"samples=4096"};
  std::vector<VerdictRecord> records;
  records.push_back(gap_record("interpolation-boundary-agreement",
                               cplx{boundary_gap, 0.0}, cplx{0.0, 0.0}, 1e-12,
                               res));
  records.push_back(bound_record("coefficient-sup-bound", max_mu,
                                 std::abs(p.lambda()), 1e-9, res));
  records.push_back(bound_record("antiholomorphic-derivative",
                                 std::abs(wp.d_zbar), 0.0, 1e-8,
                                 {"stencil=1e-4"}));
  if (p.lambda() == cplx{0.0, 0.0}) {
    const LambdaDerivativeReport rep = dnu_dlambda(pp, probe);
    records.push_back(gap_record("lambda-derivative-routes", rep.derivative,
                                 rep.stencil, 1e-6, {"stencil=1e-5"}));
  }
  return records;
}

std::vector<VerdictRecord> integrals_suite(const Params& p) {
  require_alpha_R(p);
  std::vector<VerdictRecord> records;
  records.push_back(residue_check_first(p.alpha, p.R));
  records.push_back(residue_check_second(p.alpha, p.R));
  for (auto& rec : integral_crosscheck(p.alpha, p.R)) {
    records.push_back(std::move(rec));
  }
  records.push_back(multiplier_chain_identity(p.alpha, p.R));
  return records;
}

SolverConfig config_for_grid(int grid) {
  require(is_power_of_two(grid), "grid must be a power of two");
  SolverConfig cfg;
  cfg.grid_n = grid;
  cfg.quad_n_r = std::max(64, grid / 2);
  cfg.quad_n_theta = std::max(128, grid);
  return cfg;
}

std::vector<VerdictRecord> beltrami_suite(const Params& p) {
  const SolverConfig cfg = config_for_grid(p.grid);
  const std::vector<std::string> res = {"grid=" + std::to_string(p.grid)};
  std::vector<VerdictRecord> records;

  // mu = 0: the solve must return the identity exactly.
  BeltramiField zero;
  zero.eval = [](cplx) { return cplx{0.0, 0.0}; };
  zero.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  zero.sup_bound = 0.0;
  zero.window = cfg.window;
  zero.grid_n = p.grid;
  const PrincipalMap f0 = principal_solution(zero, cfg);
  double identity_gap = 0.0;
  for (const cplx s : {cplx{0.3, 0.0}, cplx{0.0, -0.7}, cplx{1.0, 0.0}, cplx{2.0, 1.0}}) {
    identity_gap = std::max(identity_gap, std::abs(f0(s) - s));
  }
  records.push_back(gap_record("identity-at-zero-coefficient",
                               cplx{identity_gap, 0.0}, cplx{0.0, 0.0}, 1e-12,
                               res));

  // Radial stretch z -> z|z| on the disk: coefficient (1/3) z / conj(z).
  BeltramiField stretch;
  stretch.eval = [](cplx z) {
    return z == cplx{0.0, 0.0} ? cplx{0.0, 0.0} : z / (3.0 * std::conj(z));
  };
  stretch.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  stretch.sup_bound = 1.0 / 3.0;
  stretch.window = cfg.window;
  stretch.grid_n = p.grid;
  const PrincipalMap f = principal_solution(stretch, cfg);
  double rel_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = 0.3 + 0.65 * i / 19.0;
    const cplx z = std::polar(t, 2.399963229728653 * i);
    const cplx expected = z * std::abs(z);
    rel_err = std::max(rel_err, std::abs(f(z) - expected) / std::abs(expected));
  }
  records.push_back(gap_record("radial-stretch-probes", cplx{rel_err, 0.0},
                               cplx{0.0, 0.0}, 5e-3, res));
  records.push_back(gap_record("radial-stretch-fixes-one", f(cplx{1.0, 0.0}),
                               cplx{1.0, 0.0}, 5e-3, res));

  BeltramiField direction;
  direction.eval = [](cplx z) {
    return z == cplx{0.0, 0.0} ? cplx{0.0, 0.0} : z / std::conj(z);
  };
  direction.support = {PolarAnnulus{0.0, 1.0, 64, 128}};
  direction.sup_bound = 1.0;
  direction.window = cfg.window;
  direction.grid_n = p.grid;
  const FrechetReport frechet = frechet_check(direction, {0.2, 0.1, 0.05}, cfg);
  VerdictRecord slope = gap_record("frechet-slope", cplx{frechet.slope, 0.0},
                                   cplx{2.0, 0.0}, 0.3, res);
  slope.resolutions.push_back("scales=0.2;0.1;0.05");
  if (frechet.degenerate) slope.resolutions.push_back("degenerate");
  records.push_back(std::move(slope));
  return records;
}

std::vector<VerdictRecord> newchain_suite(const Params& p) {
  require_alpha_R(p);
  std::vector<VerdictRecord> records;
  records.push_back(multiplier_chain_identity(p.alpha, p.R));

  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    worst = std::max(worst,
                     multiplier_chain_identity(k / 51.0, p.R).abs_gap);
  }
  records.push_back(bound_record("multiplier-chain-sweep", worst, 0.0, 1e-12,
                                 {"samples=50"}));

  // Full pipeline derivative. The model-case outer radius is pinned to 0.5:
  // smaller R pushes the inner annulus below grid resolution once the window
  // is scaled to contain the reflected annulus.
  SolverConfig cfg = config_for_grid(p.grid);
  VerdictRecord e2e =
      end_to_end_derivative(p.alpha, 0.5, {1e-2, 5e-3, 2.5e-3}, cfg);
  e2e.resolutions.push_back("R=0.5");
  e2e.resolutions.push_back("grid=" + std::to_string(p.grid));
  records.push_back(std::move(e2e));
  return records;
}

std::vector<VerdictRecord> herman_suite(const Params& p) {
  HermanMap m;
  try {
    m = build_herman(p.a());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::mt19937_64 rng(0xC0FFEE);
  std::vector<cplx> samples(10000);
  for (auto& z : samples) {
    z = cplx{6.0 * unit_double(rng) - 3.0, 6.0 * unit_double(rng) - 3.0};
  }
  const SemiconjugacyReport semi = semiconjugacy_residual(m, samples);

  double lattice_gap = 0.0;
  for (int k = -100; k <= 100; ++k) {
    const cplx zk{0.0, 2.0 * kPi * k};
    const cplx target{0.0, 2.0 * kPi * (k + 1)};
    lattice_gap = std::max(lattice_gap, std::abs(m.f(zk) - target));
  }

  std::vector<VerdictRecord> records;
  records.push_back(gap_record(
      "semiconjugacy-residual", cplx{semi.residual, 0.0}, cplx{0.0, 0.0}, 1e-10,
      {"samples=10000", "skipped=" + std::to_string(semi.skipped)}));
  records.push_back(gap_record("lattice-orbit-exactness", cplx{lattice_gap, 0.0},
                               cplx{0.0, 0.0}, 1e-12, {"k=-100..100"}));
  if (m.superattracting) {
    VerdictRecord flag = gap_record("distortion-superattracting", m.multiplier,
                                    cplx{0.0, 0.0}, 1e-15, {"flag=superattracting"});
    records.push_back(std::move(flag));
  } else {
    const DistortionSequence seq = herman_distortion(m, 8);
    double dev = 0.0;
    for (const cplx e : seq.entries) dev = std::max(dev, std::abs(e - m.multiplier));
    records.push_back(gap_record("distortion-constant", cplx{dev, 0.0},
                                 cplx{0.0, 0.0}, 1e-12, {"entries=8"}));
    records.push_back(label_record("herman-classify",
                                   classify(seq, TailDescriptor::SumDiverges),
                                   DynamicsClass::Contracting, 8));
  }
  return records;
}

int render_command(const Params& p) {
  HermanMap m;
  try {
    m = build_herman(p.a());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  require(p.grid >= 1, "grid must be positive");
  const Window window{-3.0, 3.0, 2.0 * kPi - 3.0, 2.0 * kPi + 3.0};
  const GrayImage img =
      render_escape(m, window, p.grid, p.grid, p.max_iter, p.escape_radius);
  const std::string path = p.out.empty() ? "herman.ppm" : p.out;
  write_ppm(path, img);
  std::cout << "wrote " << path << " (" << img.width << "x" << img.height
            << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

using SuiteFn = std::vector<VerdictRecord> (*)(const Params&);

std::vector<std::pair<std::string, SuiteFn>> suite_table() {
  // Alphabetical: aggregate reports assemble in this order.
  return {
      {"beltrami", &beltrami_suite},   {"classify", &classify_suite},
      {"distortion", &distortion_suite}, {"herman", &herman_suite},
      {"integrals", &integrals_suite}, {"koenigs", &koenigs_suite},
      {"newchain", &newchain_suite},   {"surgery", &surgery_suite},
  };
}

std::vector<VerdictRecord> report_suite(const Params& p) {
  require_alpha_R(p);
  std::vector<VerdictRecord> records;
  for (const auto& [name, fn] : suite_table()) {
    for (auto& rec : fn(p)) records.push_back(std::move(rec));
  }
  return records;
}

void append_parameters(RunReport& report, const std::string& command,
                       const Params& p) {
  auto add = [&report](const std::string& k, const std::string& v) {
    report.parameters.emplace_back(k, v);
  };
  if (command == "surgery" || command == "integrals" || command == "newchain" ||
      command == "report") {
    add("alpha", fmt(p.alpha));
    add("R", fmt(p.R));
  }
  if (command == "surgery" || command == "report") {
    add("lambda_re", fmt(p.lambda_re));
    add("lambda_im", fmt(p.lambda_im));
  }
  if (command == "herman" || command == "report") {
    add("a_re", fmt(p.a().real()));
    add("a_im", fmt(p.a().imag()));
  }
  if (command == "beltrami" || command == "newchain" || command == "report") {
    add("grid", std::to_string(p.grid));
  }
  if (command == "koenigs" || command == "report") {
    add("tol", fmt(p.tol));
  }
  if (command == "classify" || command == "distortion" || command == "report") {
    add("horizon", std::to_string(p.horizon));
  }
}

int run_suite_command(const std::string& command, SuiteFn fn, const Params& p) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = command;
  append_parameters(report, command, p);
  report.verdicts = fn(p);
  if (p.timing) {
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }

  const std::string json = to_json(report);
  if (p.out.empty()) {
    std::cout << json;
  } else {
    write_text_file(p.out, json);
  }
  if (!p.csv.empty()) write_text_file(p.csv, to_csv(report.verdicts));

  for (const auto& rec : report.verdicts) {
    if (rec.verdict != ConvergenceStatus::ConvergedMatch) return 1;
  }
  return 0;
}

void add_common_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--alpha", p.alpha, "annulus multiplier, 0 < |alpha| < 1");
  cmd->add_option("--R", p.R, "outer interpolation radius, 0 < R < 1");
  cmd->add_option("--lambda-re", p.lambda_re, "family parameter, real part");
  cmd->add_option("--lambda-im", p.lambda_im, "family parameter, imaginary part");
  cmd->add_option("--grid", p.grid, "solver grid side, power of two");
  cmd->add_option("--tol", p.tol, "verdict tolerance where configurable");
  cmd->add_option("--horizon", p.horizon, "iteration horizon for sequences");
  cmd->add_option("--out", p.out, "write the JSON report (or image) here");
  cmd->add_option("--csv", p.csv, "additionally write the verdict table as CSV");
  cmd->add_flag("--timing", p.timing,
                "record wall time in the report (breaks byte determinism)");
}

void add_herman_options(CLI::App* cmd, Params& p) {
  cmd->add_option("--a-re", p.a_re, "Herman parameter a, real part");
  cmd->add_option("--a-im", p.a_im, "Herman parameter a, imaginary part");
  auto* shorthand =
      cmd->add_option("--a", p.a_shorthand, "Herman parameter a (real shorthand)");
  shorthand->each([&p](const std::string&) { p.a_shorthand_set = true; });
  cmd->add_option("--max-iter", p.max_iter, "escape iteration cap");
  cmd->add_option("--escape-radius", p.escape_radius, "|Re z| escape threshold (> 10)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wanderlab: quasiconformal surgery and wandering-domain checks"};
  app.require_subcommand(1);
  Params params;

  CLI::App* render_cmd = nullptr;
  std::vector<std::pair<std::string, CLI::App*>> suite_cmds;
  for (const auto& [name, fn] : suite_table()) {
    (void)fn;
    CLI::App* cmd = app.add_subcommand(name, name + std::string(" suite"));
    add_common_options(cmd, params);
    if (name == "herman") {
      add_herman_options(cmd, params);
      render_cmd = cmd->add_subcommand("render", "escape-time image");
      add_common_options(render_cmd, params);
      add_herman_options(render_cmd, params);
    }
    suite_cmds.emplace_back(name, cmd);
  }
  CLI::App* report_cmd = app.add_subcommand("report", "aggregate all suites");
  add_common_options(report_cmd, params);
  add_herman_options(report_cmd, params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (render_cmd != nullptr && render_cmd->parsed()) {
      return render_command(params);
    }
    if (report_cmd->parsed()) {
      return run_suite_command("report", &report_suite, params);
    }
    for (const auto& [name, fn] : suite_table()) {
      for (const auto& [cmd_name, cmd] : suite_cmds) {
        if (cmd_name == name && cmd->parsed()) {
          return run_suite_command(name, fn, params);
        }
      }
    }
    std::cerr << "usage error: no subcommand selected\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
