#include "wanderlab/inner_dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wanderlab/hyperbolic.hpp"

namespace wanderlab {

const char* to_string(TailDescriptor t) {
  switch (t) {
    case TailDescriptor::SumDiverges:
      return "sum-diverges";
    case TailDescriptor::SumConverges:
      return "sum-converges";
    case TailDescriptor::EventuallyOne:
      return "eventually-one";
    case TailDescriptor::Unknown:
      return "unknown";
  }
  return "unknown";
}

const char* to_string(DynamicsClass c) {
  switch (c) {
    case DynamicsClass::Contracting:
      return "contracting";
    case DynamicsClass::EventuallyIsometric:
      return "eventually-isometric";
    case DynamicsClass::SemiContracting:
      return "semi-contracting";
    case DynamicsClass::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

[[noreturn]] void bad_generator(int n, const std::string& why) {
  std::ostringstream os;
  os << "inner system generator " << n << ": " << why;
  throw std::runtime_error(os.str());
}

}  // namespace

InnerSystem linear_system(std::function<cplx(int)> c_of_n, TailDescriptor tail) {
  InnerSystem sys;
  sys.tail = tail;
  sys.generator = [c = std::move(c_of_n)](int n) {
    const cplx cn = c(n);
    if (!(std::abs(cn) <= 1.0)) {
      bad_generator(n, "|c| > 1 makes z -> c z leave the unit disk");
    }
    Generator g;
    g.map = [cn](cplx z) { return cn * z; };
    g.deriv = [cn](cplx) { return cn; };
    g.deriv0 = cn;
    g.domain_radius = 1.0;
    return g;
  };
  return sys;
}

InnerSystem blaschke_system(std::function<cplx(int)> c_of_n, TailDescriptor tail) {
  InnerSystem sys;
  sys.tail = tail;
  sys.generator = [c = std::move(c_of_n)](int n) {
    const cplx cn = c(n);
    if (!(std::abs(cn) < 1.0)) {
      bad_generator(n, "Blaschke parameter needs |c| < 1");
    }
    Generator g;
    g.map = [cn](cplx z) { return z * (z + cn) / (1.0 + std::conj(cn) * z); };
    g.deriv = [cn](cplx z) {
      const cplx den = 1.0 + std::conj(cn) * z;
      return ((2.0 * z + cn) * den - (z * z + cn * z) * std::conj(cn)) /
             (den * den);
    };
    g.deriv0 = cn;
    g.domain_radius = 1.0;
    return g;
  };
  return sys;
}

InnerSystem quadratic_system(std::function<cplx(int)> c_of_n,
                             std::function<cplx(int)> b_of_n,
                             double subdisk_radius, TailDescriptor tail) {
  if (!(subdisk_radius > 0.0 && subdisk_radius <= 1.0)) {
    throw std::invalid_argument(
        "quadratic_system: subdisk radius must lie in (0, 1]");
  }
  InnerSystem sys;
  sys.tail = tail;
  sys.generator = [c = std::move(c_of_n), b = std::move(b_of_n),
                   d = subdisk_radius](int n) {
    const cplx cn = c(n);
    const cplx bn = b(n);
    if (!(std::abs(cn) + std::abs(bn) * d <= 1.0)) {
      bad_generator(n,
                    "|c| + |b| d > 1: the stated subdisk is not invariant "
                    "under z -> c z + b z^2");
    }
    Generator g;
    g.map = [cn, bn](cplx z) { return cn * z + bn * z * z; };
    g.deriv = [cn, bn](cplx z) { return cn + 2.0 * bn * z; };
    g.deriv0 = cn;
    g.domain_radius = d;
    return g;
  };
  return sys;
}

DistortionSequence distortion_sequence(const InnerSystem& sys, int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("distortion_sequence: horizon must be >= 1");
  }
  DistortionSequence seq;
  seq.entries.reserve(static_cast<std::size_t>(horizon));
  for (int n = 1; n <= horizon; ++n) {
    const Generator g = sys.generator(n);
    if (std::abs(g.deriv0) > 1.0 + 1e-12) {
      bad_generator(n, "|g'(0)| exceeds 1 (Schwarz bound violated)");
    }
    seq.entries.push_back(g.deriv0);
  }
  return seq;
}

DynamicsClass classify(const DistortionSequence& seq, TailDescriptor tail) {
  switch (tail) {
    case TailDescriptor::SumDiverges:
      return DynamicsClass::Contracting;
    case TailDescriptor::SumConverges:
      return DynamicsClass::SemiContracting;
    case TailDescriptor::EventuallyOne: {
      // The data must actually reach modulus 1 on its tail.
      if (seq.entries.empty()) return DynamicsClass::Inconclusive;
      if (std::abs(std::abs(seq.entries.back()) - 1.0) <= 1e-12) {
        return DynamicsClass::EventuallyIsometric;
      }
      return DynamicsClass::Inconclusive;
    }
    case TailDescriptor::Unknown:
      return DynamicsClass::Inconclusive;
  }
  return DynamicsClass::Inconclusive;
}

std::vector<double> track_pair(const InnerSystem& sys, cplx z, cplx w,
                               int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("track_pair: horizon must be >= 1");
  }
  if (z == w) {
    throw std::invalid_argument("track_pair: points must be distinct");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  cplx x = z;
  cplx y = w;
  for (int n = 1; n <= horizon; ++n) {
    const Generator g = sys.generator(n);
    if (std::abs(x) > g.domain_radius || std::abs(y) > g.domain_radius) {
      std::ostringstream os;
      os << "track_pair: orbit left the stated domain (radius "
         << g.domain_radius << ") before step " << n;
      throw std::runtime_error(os.str());
    }
    x = g.map(x);
    y = g.map(y);
    out.push_back(hyp_dist(x, y));
  }
  return out;
}

}  // namespace wanderlab
