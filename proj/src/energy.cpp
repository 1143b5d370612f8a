#include "energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace kgchain {

double kinetic_gamma(const Profile& x) {
  const Profile d = derivative(x);
  double s = 0.0;
  for (double t : d.v) s += t * t;
  return 0.5 * s * x.grid.spacing();
}

EnergyBreakdown potential_energy(double offset, const Profile& x, const WaveNumber& k,
                                 const Potential& pot) {
  const Profile lap = laplacian_k(x, k);
  const double h = x.grid.spacing();
  double coupling = 0.0;
  double onsite = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    coupling += lap.v[j] * x.v[j];
    onsite += pot.psi(offset + x.v[j]);
  }
  EnergyBreakdown e;
  e.coupling = -0.5 * coupling * h;
  e.onsite = onsite * h;
  e.total = e.coupling + e.onsite;
  e.kinetic_factor = kinetic_gamma(x);
  return e;
}

Profile energy_gradient(double offset, const Profile& x, const WaveNumber& k,
                        const Potential& pot) {
  Profile z = laplacian_k(x, k);
  for (int j = 0; j < x.size(); ++j) {
    z.v[j] = -z.v[j] + pot.dpsi(offset + x.v[j]);
  }
  return z;
}

double solve_offset(const Profile& x, const Potential& pot, double tol, double guess) {
  if (!(tol > 0.0)) throw PreconditionError("solve_offset requires tol > 0");
  const double sup = sup_norm(x);
  const double h = x.grid.spacing();

  // f(r) = h * sum psi'(r + X[j]) is strictly increasing in r.
  const auto eval = [&](double r, double* df) {
    double f = 0.0, d = 0.0;
    for (double t : x.v) {
      f += pot.dpsi(r + t);
      if (df) d += pot.ddpsi(r + t);
    }
    if (df) *df = d * h;
    return f * h;
  };

  double lo = -sup - 1.0, hi = sup + 1.0;
  double flo = eval(lo, nullptr), fhi = eval(hi, nullptr);
  int widen = 0;
  while (flo > 0.0 || fhi < 0.0) {
    if (++widen > 200) {
      throw PreconditionError("failed to bracket the offset equation root");
    }
    const double w = hi - lo;
    if (flo > 0.0) {
      lo -= w;
      flo = eval(lo, nullptr);
    }
    if (fhi < 0.0) {
      hi += w;
      fhi = eval(hi, nullptr);
    }
  }

  // Tolerance scale from a coarse upper convexity bound over the bracket.
  double big = 0.0;
  for (int i = 0; i <= 32; ++i) {
    big = std::max(big, pot.ddpsi(lo + (hi - lo) * i / 32.0));
  }
  const double target = tol * (1.0 + big * sup);
  // Newton converges quadratically here, so push well below the target: the
  // extra digits cost one step and make the returned root scale-accurate.
  const double floor_f = std::max(target * 1e-3, 4e-16 * (1.0 + big * (sup + 1.0)));

  double r = std::clamp(guess, lo, hi);
  double best = r;
  double best_f = HUGE_VAL;
  for (int it = 0; it < 100; ++it) {
    double df = 0.0;
    const double f = eval(r, &df);
    if (std::fabs(f) < best_f) {
      best_f = std::fabs(f);
      best = r;
    }
    if (std::fabs(f) <= floor_f) return r;
    if (f > 0.0) hi = r; else lo = r;
    double next = (df > 0.0) ? r - f / df : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - r) <= 4e-16 * (1.0 + std::fabs(r))) {
      return std::fabs(f) <= best_f ? r : best;
    }
    r = next;
  }
  if (best_f > target) {
    throw PreconditionError("offset equation did not reach tolerance, |f|=" +
                            std::to_string(best_f));
  }
  return best;
}

}  // namespace kgchain
