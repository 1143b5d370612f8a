#pragma once

#include <optional>
#include <vector>

#include "energy.hpp"
#include "grid.hpp"
#include "potential.hpp"

namespace kgchain {

struct SolveConfig {
  Potential potential;
  double gamma;  // kinetic constraint level, > 0
  double k;      // wave number; folded into [0, 1/2], must be grid-aligned
  int n;         // grid size

  double tol_fixedpoint = 1e-10;  // stop when the H1 step <= tol * sqrt(2 gamma)
  double tol_offset = 1e-12;
  int max_iter = 5000;
  // Mean-zero, nonzero, unimodal-even-curvature start; empty selects the
  // cosine profile sqrt(gamma)/pi * cos(2 pi phi).
  std::optional<Profile> initial;

  SolveConfig(Potential pot, double gamma_, double k_, int n_)
      : potential(std::move(pot)), gamma(gamma_), k(k_), n(n_) {}
};

struct WaveTrain {
  Profile x;      // mean-zero profile component
  double offset;  // constant component: minimizer of the on-site energy
  double omega2;  // squared wave frequency (the constraint multiplier)
  double gamma;   // requested constraint level
  double k;       // folded wave number
  Potential potential;
  double residual_sup;
  EnergyBreakdown energy;
  int iterations;
  bool converged;
  bool in_cone;         // negated second difference unimodal and even
  double gamma_actual;  // kinetic_gamma(x), the realized constraint level
  std::vector<double> energy_history;  // reduced potential energy per iterate
};

struct ImproveResult {
  Profile next;
  double omega2;
  double offset;  // offset of the *input* profile, used to build the step
};

/// Cosine start profile sqrt(gamma)/pi * cos(2 pi phi), mirror-exact even.
Profile cosine_profile(const PeriodicGrid& grid, double gamma);

/// One energy-ascent step: with Z the energy gradient at the input profile,
/// integrate Z twice to a mean-zero periodic profile U, pick omega2 so that
/// -U/omega2 lands on the constraint sphere kinetic_gamma = gamma, and return
/// that renormalized profile. Zero input or vanishing gradient is degenerate.
ImproveResult improve(const Profile& x, const SolveConfig& cfg);

/// Iterates improve() from the start profile until the H1 seminorm of the
/// step drops below tol_fixedpoint * sqrt(2 gamma). Non-convergence within
/// max_iter is reported through `converged`, with the last iterate and all
/// diagnostics filled in.
WaveTrain solve(const SolveConfig& cfg);

/// Pointwise defect of the travelling-wave equation:
///   omega2 * X'' - laplacian_k(X) + psi'(offset + X),
/// with X'' the centred second difference.
Profile residual(const WaveTrain& w);

/// Rebuilds a wave train from stored data (e.g. files of an earlier run),
/// recomputing every derived diagnostic.
WaveTrain restore_wavetrain(Profile x, double offset, double omega2, double gamma,
                            double k, Potential potential, int iterations = 0,
                            bool converged = true);

/// Whether -second_difference(x) is unimodal and even, with the default
/// slack 1e-8 * (1 + sup).
bool profile_in_cone(const Profile& x);

}  // namespace kgchain
