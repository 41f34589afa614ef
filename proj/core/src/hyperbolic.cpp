#include "wanderlab/hyperbolic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wanderlab {

namespace {

void require_in_disk(cplx z, const char* who) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << who << ": point (" << z.real() << ", " << z.imag()
       << ") is not in the open unit disk";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double hyp_density(cplx z) {
  require_in_disk(z, "hyp_density");
  return 2.0 / (1.0 - std::norm(z));
}

double hyp_dist(cplx z, cplx w) {
  require_in_disk(z, "hyp_dist");
  require_in_disk(w, "hyp_dist");
  const double d = std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
  // log((1+d)/(1-d)) = 2 atanh(d); atanh keeps precision for nearby points.
  return 2.0 * std::atanh(d);
}

double hyp_distortion(const std::function<cplx(cplx)>& g,
                      const std::function<cplx(cplx)>& g_prime, cplx z) {
  require_in_disk(z, "hyp_distortion");
  const cplx gz = g(z);
  if (!(std::abs(gz) < 1.0)) {
    std::ostringstream os;
    os << "hyp_distortion: image (" << gz.real() << ", " << gz.imag()
       << ") leaves the unit disk; not a disk self-map at the probe";
    throw std::domain_error(os.str());
  }
  return std::abs(g_prime(z)) * (1.0 - std::norm(z)) / (1.0 - std::norm(gz));
}

}  // namespace wanderlab
