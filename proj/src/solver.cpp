#include "solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "errors.hpp"

namespace kgchain {

namespace {

const double kPi = 3.14159265358979323846;

void validate_config(const SolveConfig& cfg) {
  if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) {
    throw PreconditionError("solve requires gamma > 0");
  }
  if (!(cfg.tol_fixedpoint > 0.0) || !(cfg.tol_offset > 0.0)) {
    throw PreconditionError("solver tolerances must be positive");
  }
  if (cfg.max_iter < 1) throw PreconditionError("max_iter must be at least 1");
}

void validate_initial(const Profile& x0, int n) {
  if (x0.size() != n) {
    throw PreconditionError("initial profile size does not match the grid");
  }
  const double sup = sup_norm(x0);
  if (sup == 0.0) throw DegenerateInputError("initial profile is identically zero");
  if (std::fabs(mean(x0)) > 1e-10 * (1.0 + sup)) {
    throw PreconditionError("initial profile must be mean-zero");
  }
  if (!profile_in_cone(x0)) {
    throw PreconditionError(
        "initial profile must have unimodal even curvature (cosine-like shape)");
  }
}

struct StepData {
  Profile next;
  double omega2;
  double offset;
};

StepData improve_step(const Profile& x, const WaveNumber& wn, const SolveConfig& cfg,
                      double offset_guess) {
  if (sup_norm(x) == 0.0) {
    throw DegenerateInputError("improvement step on the zero profile");
  }
  const double offset = solve_offset(x, cfg.potential, cfg.tol_offset, offset_guess);
  Profile z = energy_gradient(offset, x, wn, cfg.potential);
  if (sup_norm(z) == 0.0) {
    throw DegenerateInputError("energy gradient vanishes; nothing to iterate");
  }
  const Profile u1 = cumulative(z);
  const Profile u2 = cumulative(u1);
  // Renormalize onto the constraint sphere: omega2 is the unique positive
  // multiplier with kinetic_gamma(u2 / omega2) = gamma. Equivalently it is
  // ||U'|| / sqrt(2 gamma) with U' the centred difference of the twice
  // integrated gradient.
  const double omega2 = std::sqrt(kinetic_gamma(u2) / cfg.gamma);
  if (!(omega2 > 0.0) || !std::isfinite(omega2)) {
    throw DegenerateInputError("degenerate frequency: twice-integrated gradient "
                               "has no slope");
  }
  Profile next(x.grid);
  const double scale = -1.0 / omega2;
  for (int j = 0; j < x.size(); ++j) next.v[j] = scale * u2.v[j];
  return {std::move(next), omega2, offset};
}

double h1_step(const Profile& a, const Profile& b) {
  Profile d(a.grid);
  for (int j = 0; j < a.size(); ++j) d.v[j] = a.v[j] - b.v[j];
  return norms(d).h1semi;
}

}  // namespace

Profile cosine_profile(const PeriodicGrid& grid, double gamma) {
  const int n = grid.size();
  const double a = std::sqrt(gamma) / kPi;
  Profile out(grid);
  // Fill one half and mirror so evenness holds bit-for-bit.
  for (int j = 0; j <= n / 2; ++j) {
    const double value = a * std::cos(2.0 * kPi * grid.node(j));
    out.v[j] = value;
    out.v[grid.wrap(n - j)] = value;
  }
  return out;
}

bool profile_in_cone(const Profile& x) {
  Profile c = second_difference(x);
  for (double& t : c.v) t = -t;
  return is_unimodal_even(c, 1e-8 * (1.0 + sup_norm(c)));
}

ImproveResult improve(const Profile& x, const SolveConfig& cfg) {
  validate_config(cfg);
  const PeriodicGrid grid(cfg.n);
  if (x.size() != grid.size()) {
    throw PreconditionError("profile size does not match the configured grid");
  }
  const WaveNumber wn = WaveNumber::aligned(cfg.k, grid);
  StepData s = improve_step(x, wn, cfg, 0.0);
  return {std::move(s.next), s.omega2, s.offset};
}

WaveTrain solve(const SolveConfig& cfg) {
  validate_config(cfg);
  const PeriodicGrid grid(cfg.n);
  const WaveNumber wn = WaveNumber::aligned(cfg.k, grid);

  Profile x = cfg.initial ? *cfg.initial : cosine_profile(grid, cfg.gamma);
  if (cfg.initial) validate_initial(x, cfg.n);

  std::vector<double> history;
  history.reserve(64);
  const double step_scale = std::sqrt(2.0 * cfg.gamma);

  double omega2 = 0.0;
  double offset = 0.0;
  bool converged = false;
  int iterations = 0;
  while (iterations < cfg.max_iter) {
    StepData s = improve_step(x, wn, cfg, offset);
    ++iterations;
    history.push_back(potential_energy(s.offset, x, wn, cfg.potential).total);
    const double step = h1_step(s.next, x);
    omega2 = s.omega2;
    offset = s.offset;
    if (step <= cfg.tol_fixedpoint * step_scale) {
      // Keep the current iterate: the rejected update makes re-solving
      // from a converged profile return it unchanged.
      converged = true;
      break;
    }
    x = std::move(s.next);
  }

  // Diagnostics belong to the final iterate, including its own offset.
  offset = solve_offset(x, cfg.potential, cfg.tol_offset, offset);
  if (!converged) {
    history.push_back(potential_energy(offset, x, wn, cfg.potential).total);
  }

  WaveTrain w{std::move(x), offset,   omega2, cfg.gamma, wn.value(), cfg.potential,
              0.0,          {},       iterations, converged, false,  0.0,
              std::move(history)};
  w.energy = potential_energy(w.offset, w.x, wn, w.potential);
  w.residual_sup = sup_norm(residual(w));
  w.in_cone = profile_in_cone(w.x);
  w.gamma_actual = kinetic_gamma(w.x);
  return w;
}

Profile residual(const WaveTrain& w) {
  const WaveNumber wn = WaveNumber::aligned(w.k, w.x.grid);
  const Profile dd = second_difference(w.x);
  const Profile lap = laplacian_k(w.x, wn);
  Profile r(w.x.grid);
  for (int j = 0; j < w.x.size(); ++j) {
    r.v[j] = w.omega2 * dd.v[j] - lap.v[j] + w.potential.dpsi(w.offset + w.x.v[j]);
  }
  return r;
}

WaveTrain restore_wavetrain(Profile x, double offset, double omega2, double gamma,
                            double k, Potential potential, int iterations,
                            bool converged) {
  if (!(gamma > 0.0)) throw PreconditionError("restore requires gamma > 0");
  if (!(omega2 > 0.0) || !std::isfinite(omega2) || !std::isfinite(offset)) {
    throw PreconditionError("restore requires finite offset and omega2 > 0");
  }
  const WaveNumber wn = WaveNumber::aligned(k, x.grid);
  WaveTrain w{std::move(x), offset, omega2, gamma,  wn.value(), std::move(potential),
              0.0,          {},     iterations, converged, false, 0.0,
              {}};
  w.energy = potential_energy(w.offset, w.x, wn, w.potential);
  w.residual_sup = sup_norm(residual(w));
  w.in_cone = profile_in_cone(w.x);
  w.gamma_actual = kinetic_gamma(w.x);
  return w;
}

}  // namespace kgchain
