#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace kgchain {

/// Bounds on the second derivative over an interval.
struct ConvexityBounds {
  double lower;  // m
  double upper;  // M
};

/// On-site potential with normalized minimum: psi(0) = 0, psi'(0) = 0 and
/// 0 < m <= psi'' <= M on every bounded interval.
class Potential {
public:
  double psi(double x) const { return psi_(x); }
  double dpsi(double x) const { return dpsi_(x); }
  double ddpsi(double x) const { return ddpsi_(x); }

  /// Canonical spec string, re-parseable by parse().
  const std::string& name() const { return name_; }

  /// min/max of psi'' over [lo, hi], by dense sampling (1024 intervals)
  /// plus the endpoints.
  ConvexityBounds bounds_on(double lo, double hi) const;

  static Potential harmonic(double c);  // psi = c x^2 / 2, requires c > 0
  static Potential exp_decay();         // psi'' = exp(-x)
  static Potential quartic();           // psi'' = 1 + x^2
  static Potential saturating();        // psi'' = exp(-max{x,0}^2)

  /// Accepts "harmonic:c=<v>", "harmonic" (c = 1), "exp_decay", "quartic",
  /// "saturating".
  static Potential parse(std::string_view spec);

private:
  using Fn = std::function<double(double)>;
  Potential(std::string name, Fn psi, Fn dpsi, Fn ddpsi);

  std::string name_;
  Fn psi_, dpsi_, ddpsi_;
};

}  // namespace kgchain
