#pragma once

#include <vector>

#include "solver.hpp"

namespace kgchain {

/// Phase-plane polygon (X(phi_j), -omega X'(phi_j)) of a wave train.
struct Trace {
  std::vector<double> x;
  std::vector<double> v;
  double gamma;
  double k;
};

struct K0Report {
  double energy_mean;
  double energy_variation;   // (max - min) / |mean| of the pointwise energy
  double period_mismatch;    // |omega * T(mean energy) - 1|
};

struct ChainReport {
  double max_deviation;  // max over time and particles of |y_j(t) - Y(kj - omega t)|
  double energy_drift;   // max |E(t) - E(0)| / |E(0)|
};

/// Snapshot of a periodic particle chain.
struct ChainState {
  std::vector<double> y;
  std::vector<double> v;
  double t = 0.0;
};

/// Oscillation period of y'' = -psi'(y) at energy E > 0:
///   T(E) = sqrt(2) * integral dy / sqrt(E - psi(y))
/// between the turning points, evaluated with Gauss-Chebyshev quadrature,
/// whose weight absorbs the square-root endpoint singularities.
double time_map(double energy, const Potential& pot, int quad_n = 256);

/// k = 0 consistency: the profile must trace a single oscillator orbit, so
/// E(phi) = omega^2 X'(phi)^2 / 2 + psi(offset + X) is constant and the
/// period of that orbit matches 1/omega.
K0Report check_k0(const WaveTrain& w, int quad_n = 256);

/// Initial chain snapshot sampled from the wave train: particle j starts at
/// Y(k j) with velocity -omega X'(k j). Requires k * particles integral so
/// the periodic chain closes.
ChainState chain_initial_state(const WaveTrain& w, int particles);

/// Velocity-Verlet for y_j'' = y_{j+1} + y_{j-1} - 2 y_j - psi'(y_j).
void chain_integrate(ChainState& state, const Potential& pot, double dt, int steps);

/// Total chain energy: sum of v^2/2, squared neighbour differences / 2 and
/// psi(y).
double chain_energy(const ChainState& state, const Potential& pot);

/// Integrates the chain from the wave-train snapshot and compares against
/// the advected profile. t_end <= 0 selects one period 1/omega; dt <= 0
/// selects a step well inside the stability and energy-drift budgets.
ChainReport simulate_chain(const WaveTrain& w, int particles, double t_end = 0.0,
                           double dt = 0.0);

Trace build_trace(const WaveTrain& w);

/// True iff, after sorting by gamma, every trace lies strictly inside its
/// successor (even-odd point test plus segment disjointness). Traces must
/// share the wave number. Fewer than two traces is an error.
bool check_nesting(const std::vector<Trace>& traces);

/// Shoelace area of the trace polygon.
double trace_area(const Trace& t);

}  // namespace kgchain
