#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace kgchain {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw PreconditionError(std::string(what) + ": non-finite sample");
    }
  }
}

}  // namespace

PeriodicGrid::PeriodicGrid(int node_count) : n_(node_count), h_(0.0) {
  if (node_count < 8 || node_count % 2 != 0) {
    throw PreconditionError("grid size must be even and at least 8, got " +
                            std::to_string(node_count));
  }
  h_ = 1.0 / static_cast<double>(n_);
}

Profile::Profile(const PeriodicGrid& g, std::vector<double> samples)
    : grid(g), v(std::move(samples)) {
  if (static_cast<int>(v.size()) != g.size()) {
    throw PreconditionError("sample count does not match the grid size");
  }
  require_finite(v, "profile");
}

WaveNumber WaveNumber::aligned(double k, const PeriodicGrid& grid) {
  if (!std::isfinite(k)) throw AlignmentError("wave number is not finite");
  // Fold into [0, 1/2]: the k-stencils are 1-periodic and even in k.
  const double folded = std::fabs(k - std::round(k));
  const double pn = folded * static_cast<double>(grid.size());
  const double rounded = std::round(pn);
  if (std::fabs(pn - rounded) > 1e-9 * std::max(1.0, pn)) {
    throw AlignmentError("wave number k=" + std::to_string(k) +
                         " is not an integer multiple of 1/N (k*N=" +
                         std::to_string(pn) + ")");
  }
  const int p = static_cast<int>(rounded);
  return WaveNumber(static_cast<double>(p) / static_cast<double>(grid.size()), p);
}

double mean(const Profile& x) {
  double s = 0.0;
  for (double t : x.v) s += t;
  return s / static_cast<double>(x.size());
}

double sup_norm(const Profile& x) {
  double m = 0.0;
  for (double t : x.v) m = std::max(m, std::fabs(t));
  return m;
}

double evenness_defect(const Profile& x) {
  const int n = x.size();
  double d = 0.0;
  for (int j = 1; j < n; ++j) d = std::max(d, std::fabs(x.v[j] - x.v[n - j]));
  return d;
}

double oddness_defect(const Profile& x) {
  const int n = x.size();
  double d = std::fabs(x.v[0] + x.v[0]);
  for (int j = 1; j < n; ++j) d = std::max(d, std::fabs(x.v[j] + x.v[n - j]));
  return d;
}

Profile shift(const Profile& x, int offset) {
  const int n = x.size();
  Profile out(x.grid);
  for (int j = 0; j < n; ++j) out.v[j] = x.v[x.grid.wrap(j + offset)];
  return out;
}

Profile laplacian_k(const Profile& x, const WaveNumber& k) {
  const int n = x.size();
  const int p = k.shifts();
  Profile out(x.grid);
  for (int j = 0; j < n; ++j) {
    // Sum the shifted pair first: addition commutes, so the result is even
    // bit-for-bit whenever x is.
    out.v[j] = (x.v[x.grid.wrap(j + p)] + x.v[x.grid.wrap(j - p)]) - 2.0 * x.v[j];
  }
  return out;
}

Profile nabla_k(const Profile& x, const WaveNumber& k) {
  if (!k.half_aligned()) {
    throw AlignmentError("half-shift by k/2 requires k*N even, got k*N=" +
                         std::to_string(k.shifts()));
  }
  const int n = x.size();
  const int q = k.shifts() / 2;
  Profile out(x.grid);
  for (int j = 0; j < n; ++j) {
    out.v[j] = x.v[x.grid.wrap(j + q)] - x.v[x.grid.wrap(j - q)];
  }
  return out;
}

Profile averaging_k(const Profile& x, const WaveNumber& k) {
  if (!k.half_aligned()) {
    throw AlignmentError("averaging window of width k requires k*N even, got k*N=" +
                         std::to_string(k.shifts()));
  }
  const int n = x.size();
  const int q = k.shifts() / 2;
  const double h = x.grid.spacing();
  Profile out(x.grid);
  if (q == 0) return out;  // empty window
  for (int j = 0; j < n; ++j) {
    // Trapezoid over [phi - k/2, phi + k/2], accumulated in mirror pairs so
    // evenness survives in floating point.
    double s = x.v[j] + 0.5 * (x.v[x.grid.wrap(j - q)] + x.v[x.grid.wrap(j + q)]);
    for (int i = 1; i < q; ++i) {
      s += x.v[x.grid.wrap(j - i)] + x.v[x.grid.wrap(j + i)];
    }
    out.v[j] = h * s;
  }
  return out;
}

Profile derivative(const Profile& x) {
  const int n = x.size();
  const double inv2h = 0.5 / x.grid.spacing();
  Profile out(x.grid);
  for (int j = 0; j < n; ++j) {
    out.v[j] = (x.v[x.grid.wrap(j + 1)] - x.v[x.grid.wrap(j - 1)]) * inv2h;
  }
  return out;
}

Profile second_difference(const Profile& x) {
  const int n = x.size();
  const double invh2 = 1.0 / (x.grid.spacing() * x.grid.spacing());
  Profile out(x.grid);
  for (int j = 0; j < n; ++j) {
    out.v[j] =
        ((x.v[x.grid.wrap(j + 1)] + x.v[x.grid.wrap(j - 1)]) - 2.0 * x.v[j]) * invh2;
  }
  return out;
}

double integrate(const Profile& x) {
  double s = 0.0;
  for (double t : x.v) s += t;
  return s * x.grid.spacing();
}

Profile cumulative(const Profile& x) {
  const int n = x.size();
  const double h = x.grid.spacing();
  const double m = mean(x);
  if (std::fabs(m) > 1e-10 * (1.0 + sup_norm(x))) {
    throw PreconditionError("cumulative requires a mean-zero profile, mean=" +
                            std::to_string(m));
  }
  Profile out(x.grid);
  const int j0 = n / 2;  // the node phi = 0
  out.v[j0] = 0.0;
  // Integrate symmetrically from phi = 0 so that even inputs produce odd
  // outputs bit-for-bit: the backward increment mirrors the forward one with
  // operands in matching order.
  double fwd = 0.0;
  for (int i = 1; i <= n / 2; ++i) {
    const int jf = j0 + i;
    fwd += 0.5 * h * (x.v[jf - 1] + x.v[x.grid.wrap(jf)]);
    if (jf < n) out.v[jf] = fwd;
    const int jb = j0 - i;
    out.v[jb] = out.v[jb + 1] - 0.5 * h * (x.v[jb + 1] + x.v[jb]);
  }
  // Node 0 is reached both ways (as phi = -1/2 and phi = +1/2); the two
  // values differ by the integral of x over the cell, which the mean gate
  // bounds. Averaging keeps the seam symmetric.
  out.v[0] = 0.5 * (out.v[0] + fwd);
  const double c = integrate(out);
  for (int j = 0; j < n; ++j) out.v[j] -= c;
  return out;
}

Norms norms(const Profile& x) {
  Norms r{0.0, 0.0, 0.0};
  double s2 = 0.0;
  for (double t : x.v) {
    s2 += t * t;
    r.sup = std::max(r.sup, std::fabs(t));
  }
  r.l2 = std::sqrt(s2 * x.grid.spacing());
  const Profile d = derivative(x);
  double sd = 0.0;
  for (double t : d.v) sd += t * t;
  r.h1semi = std::sqrt(sd * x.grid.spacing());
  return r;
}

bool is_unimodal_even(const Profile& x, double tol) {
  const int n = x.size();
  for (int j = 1; j < n; ++j) {
    if (std::fabs(x.v[j] - x.v[n - j]) > tol) return false;
  }
  // Non-increasing along phi in [0, 1/2]: nodes N/2 .. N-1, then node 0 as
  // the periodic image of phi = 1/2.
  for (int j = n / 2; j < n; ++j) {
    const double next = (j + 1 < n) ? x.v[j + 1] : x.v[0];
    if (next > x.v[j] + tol) return false;
  }
  return true;
}

}  // namespace kgchain
