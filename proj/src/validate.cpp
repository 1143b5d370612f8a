#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace kgchain {

namespace {

const double kPi = 3.14159265358979323846;

double turning_point(const Potential& pot, double energy, int side) {
  // psi is strictly monotone away from 0 on each side, psi(0) = 0 < energy.
  double inner = 0.0;
  double outer = static_cast<double>(side);
  int grow = 0;
  while (pot.psi(outer) < energy) {
    inner = outer;
    outer *= 2.0;
    if (++grow > 200) {
      throw PreconditionError("turning point bracketing failed at energy " +
                              std::to_string(energy));
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inner + outer);
    if (mid == inner || mid == outer) break;
    if (pot.psi(mid) < energy) inner = mid; else outer = mid;
  }
  return 0.5 * (inner + outer);
}

/// Periodic cubic interpolation (4-point Lagrange) of profile samples.
double interp_cubic(const Profile& x, double phi) {
  const int n = x.size();
  const double h = x.grid.spacing();
  // Reduce to [-1/2, 1/2) and locate the cell.
  const double r = phi - std::floor(phi + 0.5);
  double u = (r + 0.5) / h;
  int j = static_cast<int>(std::floor(u));
  if (j >= n) j = n - 1;  // guards u == n from rounding
  if (j < 0) j = 0;
  const double t = u - j;
  const double ym = x.v[x.grid.wrap(j - 1)];
  const double y0 = x.v[j];
  const double y1 = x.v[x.grid.wrap(j + 1)];
  const double y2 = x.v[x.grid.wrap(j + 2)];
  const double wm = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return wm * ym + w0 * y0 + w1 * y1 + w2 * y2;
}

double dist_point_segment(double px, double py, double ax, double ay, double bx,
                          double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp(((px - ax) * dx + (py - ay) * dy) / len2, 0.0, 1.0);
  const double qx = ax + s * dx - px, qy = ay + s * dy - py;
  return std::sqrt(qx * qx + qy * qy);
}

bool point_strictly_inside(double px, double py, const Trace& poly, double eps) {
  const size_t m = poly.x.size();
  for (size_t i = 0; i < m; ++i) {
    const size_t j = (i + 1) % m;
    if (dist_point_segment(px, py, poly.x[i], poly.v[i], poly.x[j], poly.v[j]) <= eps) {
      return false;  // on (or numerically on) the boundary
    }
  }
  bool inside = false;  // even-odd rule with a horizontal ray
  for (size_t i = 0, j = m - 1; i < m; j = i++) {
    const bool straddles = (poly.v[i] > py) != (poly.v[j] > py);
    if (!straddles) continue;
    const double xint = poly.x[i] + (py - poly.v[i]) * (poly.x[j] - poly.x[i]) /
                                        (poly.v[j] - poly.v[i]);
    if (px < xint) inside = !inside;
  }
  return inside;
}

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

bool segments_intersect(double ax, double ay, double bx, double by, double cx,
                        double cy, double dx, double dy) {
  const double d1 = cross(cx, cy, dx, dy, ax, ay);
  const double d2 = cross(cx, cy, dx, dy, bx, by);
  const double d3 = cross(ax, ay, bx, by, cx, cy);
  const double d4 = cross(ax, ay, bx, by, dx, dy);
  return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
}

}  // namespace

double time_map(double energy, const Potential& pot, int quad_n) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw PreconditionError("time_map requires energy > 0");
  }
  if (quad_n < 2) throw PreconditionError("time_map requires quad_n >= 2");
  const double ylo = turning_point(pot, energy, -1);
  const double yhi = turning_point(pot, energy, +1);
  const double mid = 0.5 * (ylo + yhi);
  const double rad = 0.5 * (yhi - ylo);
  // Substituting y = mid + rad * cos(theta) turns the integral into a
  // Chebyshev-weighted one; the nodes avoid the endpoints, where the
  // turning-point roots would cancel catastrophically.
  double sum = 0.0;
  for (int i = 1; i <= quad_n; ++i) {
    const double t = std::cos(kPi * (2.0 * i - 1.0) / (2.0 * quad_n));
    const double y = mid + rad * t;
    const double under = energy - pot.psi(y);
    const double g = under / ((1.0 - t) * (1.0 + t));
    if (!(g > 0.0)) {
      throw PreconditionError("time_map quadrature hit a non-positive radicand");
    }
    sum += 1.0 / std::sqrt(g);
  }
  return std::sqrt(2.0) * rad * (kPi / quad_n) * sum;
}

K0Report check_k0(const WaveTrain& w, int quad_n) {
  if (w.k != 0.0) {
    throw PreconditionError("check_k0 applies to k = 0 wave trains only");
  }
  const Profile dx = derivative(w.x);
  Profile e(w.x.grid);
  for (int j = 0; j < w.x.size(); ++j) {
    e.v[j] = 0.5 * w.omega2 * dx.v[j] * dx.v[j] + w.potential.psi(w.offset + w.x.v[j]);
  }
  const double emean = integrate(e);
  const auto [lo, hi] = std::minmax_element(e.v.begin(), e.v.end());
  K0Report rep;
  rep.energy_mean = emean;
  rep.energy_variation = (*hi - *lo) / std::max(std::fabs(emean), 1e-30);
  const double period = time_map(emean, w.potential, quad_n);
  rep.period_mismatch = std::fabs(std::sqrt(w.omega2) * period - 1.0);
  return rep;
}

ChainState chain_initial_state(const WaveTrain& w, int particles) {
  if (particles < 2) throw PreconditionError("chain needs at least 2 particles");
  const double kj = w.k * static_cast<double>(particles);
  if (std::fabs(kj - std::round(kj)) > 1e-9 * std::max(1.0, kj)) {
    throw PreconditionError("particle count " + std::to_string(particles) +
                            " is incompatible with k: k*J must be an integer");
  }
  const int n = w.x.size();
  const int p = static_cast<int>(std::lround(w.k * n));
  const Profile dx = derivative(w.x);
  const double omega = std::sqrt(w.omega2);
  ChainState s;
  s.y.resize(particles);
  s.v.resize(particles);
  for (int j = 0; j < particles; ++j) {
    // Phase k*j lands exactly on a grid node because k = p/N.
    const int idx = w.x.grid.wrap(static_cast<int>((static_cast<long long>(p) * j +
                                                    n / 2) %
                                                   n));
    s.y[j] = w.offset + w.x.v[idx];
    s.v[j] = -omega * dx.v[idx];
  }
  return s;
}

void chain_integrate(ChainState& state, const Potential& pot, double dt, int steps) {
  const int J = static_cast<int>(state.y.size());
  std::vector<double> a(J);
  const auto accel = [&](const std::vector<double>& y) {
    for (int j = 0; j < J; ++j) {
      const int jp = (j + 1) % J, jm = (j + J - 1) % J;
      a[j] = y[jp] + y[jm] - 2.0 * y[j] - pot.dpsi(y[j]);
    }
  };
  accel(state.y);
  for (int s = 0; s < steps; ++s) {
    for (int j = 0; j < J; ++j) state.v[j] += 0.5 * dt * a[j];
    for (int j = 0; j < J; ++j) state.y[j] += dt * state.v[j];
    accel(state.y);
    for (int j = 0; j < J; ++j) state.v[j] += 0.5 * dt * a[j];
    state.t += dt;
  }
}

double chain_energy(const ChainState& state, const Potential& pot) {
  const int J = static_cast<int>(state.y.size());
  double e = 0.0;
  for (int j = 0; j < J; ++j) {
    const double d = state.y[(j + 1) % J] - state.y[j];
    e += 0.5 * state.v[j] * state.v[j] + 0.5 * d * d + pot.psi(state.y[j]);
  }
  return e;
}

ChainReport simulate_chain(const WaveTrain& w, int particles, double t_end, double dt) {
  ChainState state = chain_initial_state(w, particles);
  const double omega = std::sqrt(w.omega2);
  if (t_end <= 0.0) t_end = 1.0 / omega;

  const auto [ylo, yhi] = std::minmax_element(state.y.begin(), state.y.end());
  const double big = w.potential.bounds_on(*ylo - 1.0, *yhi + 1.0).upper;
  const double omega_max = std::sqrt(4.0 + big);
  // 2/omega_max is the Verlet stability limit for the stiffest mode.
  const double dt_cap = std::min(0.05 / omega, 0.1 / omega_max);
  if (dt <= 0.0) {
    dt = std::min(0.002 / (2.0 * kPi * omega), 0.05 / omega_max);
  } else if (dt > dt_cap) {
    throw PreconditionError("unstable dt: " + std::to_string(dt) + " exceeds " +
                            std::to_string(dt_cap));
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt)));
  dt = t_end / steps;

  const int J = static_cast<int>(state.y.size());
  const double e0 = chain_energy(state, w.potential);
  const double edenom = std::max(std::fabs(e0), 1e-30);
  ChainReport rep{0.0, 0.0};
  for (int s = 1; s <= steps; ++s) {
    chain_integrate(state, w.potential, dt, 1);
    const double t = dt * s;
    for (int j = 0; j < J; ++j) {
      const double ref = w.offset + interp_cubic(w.x, w.k * j - omega * t);
      rep.max_deviation = std::max(rep.max_deviation, std::fabs(state.y[j] - ref));
    }
    rep.energy_drift = std::max(
        rep.energy_drift, std::fabs(chain_energy(state, w.potential) - e0) / edenom);
  }
  return rep;
}

Trace build_trace(const WaveTrain& w) {
  const Profile dx = derivative(w.x);
  const double omega = std::sqrt(w.omega2);
  Trace t;
  t.x.resize(w.x.size());
  t.v.resize(w.x.size());
  for (int j = 0; j < w.x.size(); ++j) {
    t.x[j] = w.x.v[j];
    t.v[j] = -omega * dx.v[j];
  }
  t.gamma = w.gamma;
  t.k = w.k;
  return t;
}

bool check_nesting(const std::vector<Trace>& traces) {
  if (traces.size() < 2) {
    throw PreconditionError("nesting check needs at least two traces");
  }
  std::vector<const Trace*> sorted(traces.size());
  for (size_t i = 0; i < traces.size(); ++i) sorted[i] = &traces[i];
  std::sort(sorted.begin(), sorted.end(),
            [](const Trace* a, const Trace* b) { return a->gamma < b->gamma; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (std::fabs(sorted[i]->k - sorted[0]->k) > 1e-12) {
      throw PreconditionError("nesting check requires a common wave number");
    }
  }
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    const Trace& inner = *sorted[i];
    const Trace& outer = *sorted[i + 1];
    double scale = 0.0;
    for (double x : outer.x) scale = std::max(scale, std::fabs(x));
    for (double v : outer.v) scale = std::max(scale, std::fabs(v));
    const double eps = 1e-12 * (1.0 + scale);
    for (size_t j = 0; j < inner.x.size(); ++j) {
      if (!point_strictly_inside(inner.x[j], inner.v[j], outer, eps)) return false;
    }
    const size_t mi = inner.x.size(), mo = outer.x.size();
    for (size_t a = 0; a < mi; ++a) {
      const size_t a2 = (a + 1) % mi;
      for (size_t b = 0; b < mo; ++b) {
        const size_t b2 = (b + 1) % mo;
        if (segments_intersect(inner.x[a], inner.v[a], inner.x[a2], inner.v[a2],
                               outer.x[b], outer.v[b], outer.x[b2], outer.v[b2])) {
          return false;
        }
      }
    }
  }
  return true;
}

double trace_area(const Trace& t) {
  const size_t m = t.x.size();
  double s = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const size_t j = (i + 1) % m;
    s += t.x[i] * t.v[j] - t.x[j] * t.v[i];
  }
  return 0.5 * std::fabs(s);
}

}  // namespace kgchain
