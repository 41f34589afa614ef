#include "wanderlab/koenigs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wanderlab {

namespace {

constexpr int kCircleNodes = 256;
constexpr int kSeriesDegree = 32;
constexpr int kIterationCap = 2000;

}  // namespace

cplx LinearizerModel::eval(cplx z) const {
  // Horner in ascending powers: psi = z (c_1 + z (c_2 + ...)).
  cplx acc{0.0, 0.0};
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = coeffs[k] + z * acc;
  }
  return z * acc;
}

cplx LinearizerModel::eval_deriv(cplx z) const {
  cplx acc{0.0, 0.0};
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = static_cast<double>(k + 1) * coeffs[k] + z * acc;
  }
  return acc;
}

LinearizerModel linearizer(const std::function<cplx(cplx)>& g, cplx alpha,
                           double radius_hint, double tol) {
  const double mod_alpha = std::abs(alpha);
  if (!(mod_alpha > 0.0 && mod_alpha < 1.0)) {
    std::ostringstream os;
    os << "linearizer: multiplier modulus " << mod_alpha
       << " outside (0, 1); the fixed point is not (geometrically) attracting";
    throw std::domain_error(os.str());
  }
  if (!(radius_hint > 0.0) || !(tol > 0.0)) {
    throw std::invalid_argument("linearizer: radius_hint and tol must be positive");
  }

  // Circle samples of phi_m = alpha^{-m} g^m; the orbit array is advanced in
  // place, scaling deferred to the comparison to avoid overflow games.
  std::vector<cplx> orbit(kCircleNodes);
  std::vector<cplx> phi(kCircleNodes);
  std::vector<cplx> phi_next(kCircleNodes);
  for (int j = 0; j < kCircleNodes; ++j) {
    orbit[j] = std::polar(radius_hint, 2.0 * kPi * j / kCircleNodes);
    phi[j] = orbit[j];
  }

  cplx alpha_pow{1.0, 0.0};
  bool converged = false;
  for (int m = 1; m <= kIterationCap; ++m) {
    alpha_pow *= alpha;
    double sup_diff = 0.0;
    bool escaped = false;
    for (int j = 0; j < kCircleNodes; ++j) {
      orbit[j] = g(orbit[j]);
      if (!(std::isfinite(orbit[j].real()) && std::isfinite(orbit[j].imag())) ||
          std::abs(orbit[j]) > 1e6) {
        escaped = true;
        break;
      }
      phi_next[j] = orbit[j] / alpha_pow;
      sup_diff = std::max(sup_diff, std::abs(phi_next[j] - phi[j]));
    }
    if (escaped) break;
    phi.swap(phi_next);
    if (sup_diff < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "linearizer: circle iteration did not settle within " << kIterationCap
       << " steps at radius " << radius_hint
       << "; try a smaller radius (the hint may leave the linearization disk)";
    throw std::runtime_error(os.str());
  }

  // Fixed-order discrete Fourier extraction of c_1..c_degree.
  LinearizerModel model;
  model.alpha = alpha;
  model.tol = tol;
  model.radius = radius_hint;
  model.coeffs.assign(kSeriesDegree, cplx{0.0, 0.0});
  for (int k = 1; k <= kSeriesDegree; ++k) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < kCircleNodes; ++j) {
      const double angle = -2.0 * kPi * j * k / kCircleNodes;
      acc += phi[j] * std::polar(1.0, angle);
    }
    const double scale =
        static_cast<double>(kCircleNodes) * std::pow(radius_hint, k);
    model.coeffs[k - 1] = acc / scale;
  }
  if (std::abs(model.coeffs[0] - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "linearizer: extracted psi'(0) = " << std::abs(model.coeffs[0])
       << " instead of 1; the supplied multiplier does not match g'(0)";
    throw std::runtime_error(os.str());
  }
  model.coeffs[0] = cplx{1.0, 0.0};

  // A-posteriori functional-equation residual on the sample circle.
  double residual = 0.0;
  double min_image = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kCircleNodes; ++j) {
    const cplx z = std::polar(radius_hint, 2.0 * kPi * j / kCircleNodes);
    residual = std::max(residual,
                        std::abs(model.eval(g(z)) - alpha * model.eval(z)));
    min_image = std::min(min_image, std::abs(model.eval(z)));
  }
  if (!(residual < tol)) {
    std::ostringstream os;
    os << "linearizer: functional-equation residual " << residual
       << " exceeds tol " << tol << " at radius " << radius_hint
       << "; try a smaller radius";
    throw std::runtime_error(os.str());
  }
  model.image_radius = 0.9 * min_image;
  return model;
}

cplx linearizer_inverse(const LinearizerModel& model, cplx w) {
  if (!(std::abs(w) < model.image_radius)) {
    std::ostringstream os;
    os << "linearizer_inverse: |w| = " << std::abs(w)
       << " is outside the validated image disk of radius " << model.image_radius;
    throw std::domain_error(os.str());
  }
  cplx z = w;
  for (int it = 0; it < 64; ++it) {
    const cplx fz = model.eval(z) - w;
    if (std::abs(fz) < model.tol) return z;
    const cplx dz = model.eval_deriv(z);
    if (std::abs(dz) < 1e-14 || std::abs(z) > 4.0 * model.radius) break;
    z -= fz / dz;
  }
  throw std::runtime_error("linearizer_inverse: Newton iteration failed to land "
                           "within tolerance");
}

}  // namespace wanderlab
