#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wanderlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

// Annular integration domain centered at the origin; r_in = 0 degenerates to
// a solid disk. n_r and n_theta describe the midpoint grid consumed by
// polar_quadrature (n_r radial cells, n_theta angular cells).
struct PolarAnnulus {
  double r_in = 0.0;
  double r_out = 1.0;
  int n_r = 128;
  int n_theta = 256;

  // Throws std::invalid_argument unless 0 <= r_in < r_out, n_r >= 1,
  // n_theta >= 4 and both radii are finite.
  void validate() const;

  double area() const;
  bool contains(cplx z) const;  // closed annulus membership
  PolarAnnulus with_resolution(int nr, int ntheta) const;
};

// Axis-aligned rectangle. Grid samples live at cell centers, so the edges
// themselves carry no sample; width/height are split evenly among nx/ny
// cells by ComplexGridField.
struct Window {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(cplx z) const;
  void validate() const;  // finite, positive area
};

Window centered_square(double half_extent);

bool is_power_of_two(int n);

// Complex samples at the cell centers of a regular lattice over `window`.
// nx, ny must be powers of two (the spectral transform path requires it).
// `support` lists origin-centered annuli outside which the field is exactly
// zero; an empty list means "no declared support" and some consumers treat
// that as an error.
struct ComplexGridField {
  Window window{};
  int nx = 0;
  int ny = 0;
  std::vector<cplx> values;  // row-major, index = iy*nx + ix
  std::vector<PolarAnnulus> support;

  static ComplexGridField zeros(const Window& w, int nx, int ny);

  double dx() const { return window.width() / nx; }
  double dy() const { return window.height() / ny; }
  cplx node(int ix, int iy) const;
  cplx& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  const cplx& at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * nx + ix];
  }

  // Bilinear interpolation in the cell-center lattice; identically zero
  // outside the window and outside the declared support (when present).
  cplx sample(cplx z) const;

  bool in_support(cplx z) const;
  void validate() const;
};

// ---------------------------------------------------------------------------
// Quadrature and finite differences
// ---------------------------------------------------------------------------

// Midpoint-rule approximation of the area integral of f over the annulus
// (area element t dt dtheta). Samples may be evaluated concurrently; the
// reduction is an index-ordered pairwise sum, so repeated runs are
// bit-identical. A non-finite sample throws with the offending node named.
cplx polar_quadrature(const std::function<cplx(cplx)>& f, const PolarAnnulus& a);

// Trapezoid rule for the circle integral of g over |z| = radius; +1 is
// counterclockwise, -1 clockwise. Spectrally accurate when g is analytic in
// a neighborhood of the circle. Requires n_nodes >= 8.
cplx contour_integral(const std::function<cplx(cplx)>& g, double radius,
                      int orientation, int n_nodes);

struct WirtingerPair {
  cplx d_z;
  cplx d_zbar;
};

// Central 4-point stencil for both Wirtinger derivatives, O(h^2). On
// holomorphic inputs d_zbar sits at the truncation floor, which is what the
// Beltrami-coefficient cross-checks rely on.
WirtingerPair wirtinger_fd(const std::function<cplx(cplx)>& f, cplx z, double h);

enum class ConvergenceStatus { ConvergedMatch, ConvergedMismatch, NotConverged };

const char* to_string(ConvergenceStatus s);

struct RichardsonVerdict {
  ConvergenceStatus status = ConvergenceStatus::NotConverged;
  cplx extrapolated{};  // Aitken limit of the last three values when usable
  double gap = 0.0;     // |extrapolated - target|
};

// Convergence rule: the last two refinements agree within tol and the
// successive deltas are not growing. The extrapolated limit is the Aitken
// acceleration of the final three values, falling back to the last value
// when the acceleration is degenerate or implausibly far from the tail.
// Requires at least three values.
RichardsonVerdict richardson_verdict(const std::vector<cplx>& values, cplx target,
                                     double tol);

struct LadderRung {
  int n_r;
  int n_theta;
};

// (128,256) -> (256,512) -> (512,1024)
std::vector<LadderRung> default_ladder();

// ---------------------------------------------------------------------------
// Deterministic reductions and parallel evaluation
// ---------------------------------------------------------------------------

double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

// Worker count = min(hardware threads, WANDERLAB_THREADS) when the variable
// is set to a positive integer; never less than 1.
int worker_count();

// Runs fn(i) for every i in [0, n). Work items must write to disjoint
// locations; determinism then follows because no accumulation state is
// shared. Exceptions from workers are rethrown on the calling thread.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wanderlab
