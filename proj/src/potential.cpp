#include "potential.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "errors.hpp"

namespace kgchain {

namespace {

const double kSqrtPiHalf = 0.8862269254527580137;  // sqrt(pi)/2

std::string format_c(double c) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}

}  // namespace

Potential::Potential(std::string name, Fn psi, Fn dpsi, Fn ddpsi)
    : name_(std::move(name)), psi_(std::move(psi)), dpsi_(std::move(dpsi)),
      ddpsi_(std::move(ddpsi)) {}

Potential Potential::harmonic(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("harmonic potential requires c > 0");
  }
  return Potential("harmonic:c=" + format_c(c),
                   [c](double x) { return 0.5 * c * x * x; },
                   [c](double x) { return c * x; },
                   [c](double) { return c; });
}

Potential Potential::exp_decay() {
  return Potential("exp_decay",
                   [](double x) { return x - 1.0 + std::exp(-x); },
                   [](double x) { return 1.0 - std::exp(-x); },
                   [](double x) { return std::exp(-x); });
}

Potential Potential::quartic() {
  return Potential("quartic",
                   [](double x) { return x * x * (0.5 + x * x / 12.0); },
                   [](double x) { return x + x * x * x / 3.0; },
                   [](double x) { return 1.0 + x * x; });
}

Potential Potential::saturating() {
  // psi'' = exp(-max{x,0}^2): harmonic on the left, Gaussian-saturated on
  // the right; the pieces match to second order at 0.
  return Potential(
      "saturating",
      [](double x) {
        if (x <= 0.0) return 0.5 * x * x;
        return kSqrtPiHalf * x * std::erf(x) + 0.5 * (std::exp(-x * x) - 1.0);
      },
      [](double x) {
        if (x <= 0.0) return x;
        return kSqrtPiHalf * std::erf(x);
      },
      [](double x) {
        if (x <= 0.0) return 1.0;
        return std::exp(-x * x);
      });
}

Potential Potential::parse(std::string_view spec) {
  if (spec == "exp_decay") return exp_decay();
  if (spec == "quartic") return quartic();
  if (spec == "saturating") return saturating();
  if (spec == "harmonic") return harmonic(1.0);
  const std::string_view prefix = "harmonic:c=";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string value(spec.substr(prefix.size()));
    char* end = nullptr;
    const double c = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      throw std::invalid_argument("malformed harmonic parameter: " + value);
    }
    return harmonic(c);
  }
  throw std::invalid_argument("unknown potential: " + std::string(spec));
}

ConvexityBounds Potential::bounds_on(double lo, double hi) const {
  if (!(lo <= hi)) throw PreconditionError("bounds_on requires lo <= hi");
  const int samples = 1024;
  ConvexityBounds b{ddpsi_(lo), ddpsi_(lo)};
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / samples;
    const double d = ddpsi_(x);
    if (d < b.lower) b.lower = d;
    if (d > b.upper) b.upper = d;
  }
  // The loop endpoint is lo + (hi-lo), which may differ from hi by rounding.
  const double dh = ddpsi_(hi);
  if (dh < b.lower) b.lower = dh;
  if (dh > b.upper) b.upper = dh;
  return b;
}

}  // namespace kgchain
