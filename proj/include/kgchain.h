/* Public C interface to the wave train solver.
 *
 * All functions return a kgc_status; out parameters are written only on
 * KGC_OK. Objects are opaque handles owned by the caller and released with
 * the matching destroy function. Error text for the most recent failure on
 * the calling thread is available via kgc_last_error().
 */
#ifndef KGCHAIN_H
#define KGCHAIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgc_status {
  KGC_OK = 0,
  KGC_ERROR_INVALID_ARGUMENT = 1,
  KGC_ERROR_ALIGNMENT = 2,
  KGC_ERROR_PRECONDITION = 3,
  KGC_ERROR_DEGENERATE = 4,
  KGC_ERROR_INTERNAL = 5
} kgc_status;

/* Stable name for a status code, e.g. "KGC_OK". Never NULL. */
const char* kgc_status_name(kgc_status status);

/* Message from the last failing call on this thread, empty string if none. */
const char* kgc_last_error(void);

/* Bumped when the struct layouts below change incompatibly. */
uint32_t kgc_abi_version(void);

typedef struct kgc_potential kgc_potential;
typedef struct kgc_wavetrain kgc_wavetrain;

/* spec: one of "harmonic:c=<value>", "exp_decay", "quartic", "saturating". */
kgc_status kgc_potential_create(const char* spec, kgc_potential** out);
void kgc_potential_destroy(kgc_potential* pot);

/* Canonical spec string; valid until the potential is destroyed. */
const char* kgc_potential_name(const kgc_potential* pot);

kgc_status kgc_potential_psi(const kgc_potential* pot, double x, double* out);
kgc_status kgc_potential_dpsi(const kgc_potential* pot, double x, double* out);
kgc_status kgc_potential_ddpsi(const kgc_potential* pot, double x, double* out);

typedef struct kgc_solve_opts {
  double gamma;          /* constraint value, > 0 */
  double k;              /* wave number, must align with the grid */
  int32_t n;             /* grid size, even and >= 8 */
  double tol_fixedpoint; /* <= 0 picks the default 1e-10 */
  double tol_offset;     /* <= 0 picks the default 1e-12 */
  int32_t max_iter;      /* <= 0 picks the default 5000 */
  const double* initial; /* optional length-n starting profile, may be NULL */
} kgc_solve_opts;

/* Runs the solver. Returns KGC_OK even when the iteration hits max_iter
 * without meeting the tolerance; inspect the converged flag in the info. */
kgc_status kgc_solve(const kgc_potential* pot, const kgc_solve_opts* opts,
                     kgc_wavetrain** out);

/* Rebuilds a wave train from stored data, recomputing all diagnostics. */
kgc_status kgc_wavetrain_restore(const kgc_potential* pot, double gamma, double k,
                                 int32_t n, double omega2, double offset,
                                 const double* profile, int32_t iterations,
                                 int32_t converged, kgc_wavetrain** out);

void kgc_wavetrain_destroy(kgc_wavetrain* w);

typedef struct kgc_wavetrain_info {
  double gamma;
  double k;
  int32_t n;
  double omega2;
  double offset;
  double residual_sup;
  double gamma_actual;
  double energy_coupling;
  double energy_onsite;
  double energy_total;
  int32_t iterations;
  int32_t converged;
  int32_t in_cone;
} kgc_wavetrain_info;

kgc_status kgc_wavetrain_get_info(const kgc_wavetrain* w, kgc_wavetrain_info* out);

/* Buffer getters fill buf[0..n) where n is the grid size from the info. */
kgc_status kgc_wavetrain_get_nodes(const kgc_wavetrain* w, double* buf, size_t len);
kgc_status kgc_wavetrain_get_profile(const kgc_wavetrain* w, double* buf, size_t len);
kgc_status kgc_wavetrain_get_derivative(const kgc_wavetrain* w, double* buf,
                                        size_t len);
kgc_status kgc_wavetrain_get_second_difference(const kgc_wavetrain* w, double* buf,
                                               size_t len);
/* Velocity samples of the particle path, -omega * X'. */
kgc_status kgc_wavetrain_get_velocity(const kgc_wavetrain* w, double* buf, size_t len);
kgc_status kgc_wavetrain_get_residual(const kgc_wavetrain* w, double* buf, size_t len);

typedef struct kgc_k0_report {
  double energy_mean;
  double energy_variation;
  double period_mismatch;
} kgc_k0_report;

/* Pointwise energy balance and period consistency; requires k = 0. */
kgc_status kgc_check_k0(const kgc_wavetrain* w, kgc_k0_report* out);

typedef struct kgc_chain_report {
  double max_deviation;
  double energy_drift;
} kgc_chain_report;

/* Integrates a J-particle chain seeded from the wave train and compares
 * against the translated profile. t_end <= 0 means one wave period;
 * dt <= 0 picks a stable default. */
kgc_status kgc_simulate_chain(const kgc_wavetrain* w, int32_t particles,
                              double t_end, double dt, kgc_chain_report* out);

/* Tests whether the (X, V) loops of the given wave trains are strictly
 * nested when ordered by gamma. All must share the same wave number. */
kgc_status kgc_check_nesting(const kgc_wavetrain* const* ws, size_t count,
                             int* out_nested);

/* Period of the unit-mass oscillator in the potential at the given energy. */
kgc_status kgc_time_map(const kgc_potential* pot, double energy, double* out);

#ifdef __cplusplus
}
#endif

#endif /* KGCHAIN_H */
