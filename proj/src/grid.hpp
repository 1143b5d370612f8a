#pragma once

#include <vector>

namespace kgchain {

/// Uniform periodic grid on the unit cell [-1/2, 1/2).
///
/// The node count is even and at least 8 so that phi = 0 is a node and the
/// reflection j <-> N-j realizes phi -> -phi exactly on the index set.
class PeriodicGrid {
public:
  explicit PeriodicGrid(int node_count);

  int size() const { return n_; }
  double spacing() const { return h_; }
  double node(int j) const { return -0.5 + h_ * static_cast<double>(j); }

  /// Wraps an arbitrary node index into [0, N).
  int wrap(int j) const {
    int r = j % n_;
    return r < 0 ? r + n_ : r;
  }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
  int n_;
  double h_;
};

/// Node samples of a 1-periodic function. Samples must stay finite; the
/// constructor taking external data enforces that.
struct Profile {
  PeriodicGrid grid;
  std::vector<double> v;

  explicit Profile(const PeriodicGrid& g) : grid(g), v(g.size(), 0.0) {}
  Profile(const PeriodicGrid& g, std::vector<double> samples);

  int size() const { return grid.size(); }
  double operator[](int j) const { return v[j]; }
  double& operator[](int j) { return v[j]; }
};

template <typename F>
Profile sampled(const PeriodicGrid& grid, F&& f) {
  Profile out(grid);
  for (int j = 0; j < grid.size(); ++j) out.v[j] = f(grid.node(j));
  return out;
}

/// Wave number folded into [0, 1/2] and pinned to the grid: k = p/N.
/// Construction fails if k*N is not an integer, so every shift by k is an
/// exact index shift.
class WaveNumber {
public:
  static WaveNumber aligned(double k, const PeriodicGrid& grid);

  double value() const { return k_; }
  /// Node offset of a shift by k.
  int shifts() const { return p_; }
  /// Half-shifts by k/2 stay on the grid only for even p.
  bool half_aligned() const { return p_ % 2 == 0; }

private:
  WaveNumber(double k, int p) : k_(k), p_(p) {}
  double k_;
  int p_;
};

double mean(const Profile& x);
double sup_norm(const Profile& x);

/// max_j |X[j] - X[N-j]|; zero for profiles even about phi = 0.
double evenness_defect(const Profile& x);
/// max_j |X[j] + X[N-j]|; zero for odd profiles.
double oddness_defect(const Profile& x);

/// X(. + s*h) as an exact index rotation.
Profile shift(const Profile& x, int offset);

/// X(. + k) + X(. - k) - 2 X. Annihilates constants exactly; exact on
/// sampled trigonometric modes since the shifts are index rotations.
Profile laplacian_k(const Profile& x, const WaveNumber& k);

/// X(. + k/2) - X(. - k/2). Requires half_aligned(); composing it with
/// itself reproduces laplacian_k exactly.
Profile nabla_k(const Profile& x, const WaveNumber& k);

/// Moving window integral over [phi - k/2, phi + k/2] (trapezoid weights).
/// Requires half_aligned(). Maps constants c to k*c exactly.
Profile averaging_k(const Profile& x, const WaveNumber& k);

/// Centred first difference (X[j+1] - X[j-1]) / (2h).
Profile derivative(const Profile& x);

/// Centred second difference (X[j+1] - 2 X[j] + X[j-1]) / h^2.
Profile second_difference(const Profile& x);

/// Riemann sum h * sum X[j]; equals the trapezoid rule on a periodic grid.
double integrate(const Profile& x);

/// Mean-zero periodic antiderivative: trapezoid integral from phi = 0,
/// projected to zero mean. The input must be mean-zero within
/// 1e-10 * (1 + sup|X|), otherwise no periodic antiderivative exists.
/// Built symmetrically from phi = 0 so even inputs map to odd outputs
/// sample-exactly.
Profile cumulative(const Profile& x);

struct Norms {
  double l2;
  double sup;
  double h1semi;  // L2 norm of the centred first difference
};
Norms norms(const Profile& x);

/// Even about phi = 0 and non-increasing along the nodes of [0, 1/2], both
/// up to slack tol. The monotone run includes the wrap to phi = 1/2.
bool is_unimodal_even(const Profile& x, double tol);

}  // namespace kgchain
