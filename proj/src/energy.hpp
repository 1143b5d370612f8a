#pragma once

#include "grid.hpp"
#include "potential.hpp"

namespace kgchain {

struct EnergyBreakdown {
  double coupling;        // (1/2) ||nabla_k Y||^2, via -(1/2) <laplacian_k X, X>
  double onsite;          // integral of psi(offset + X)
  double total;           // coupling + onsite
  double kinetic_factor;  // (1/2) ||X'||^2 (offset-independent)
};

/// (1/2) integral of the squared centred first difference.
double kinetic_gamma(const Profile& x);

/// Potential energy of Y = offset + X at wave number k. The coupling part is
/// evaluated through the full-shift stencil, which is defined for every
/// aligned k (odd p included) and agrees with the half-shift form exactly
/// when that one exists.
EnergyBreakdown potential_energy(double offset, const Profile& x, const WaveNumber& k,
                                 const Potential& pot);

/// Gradient of the potential energy at Y = offset + X:
///   Z[j] = -laplacian_k(X)[j] + psi'(offset + X[j]).
Profile energy_gradient(double offset, const Profile& x, const WaveNumber& k,
                        const Potential& pot);

/// The unique constant r solving integral psi'(r + X) = 0 (safeguarded
/// Newton inside a sign-change bracket; convexity makes the root simple).
/// `guess` warm-starts the iteration.
double solve_offset(const Profile& x, const Potential& pot, double tol = 1e-12,
                    double guess = 0.0);

}  // namespace kgchain
