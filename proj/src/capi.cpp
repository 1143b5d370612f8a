#include "kgchain.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "energy.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "potential.hpp"
#include "solver.hpp"
#include "validate.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

/// Runs fn, translating exceptions to status codes. fn returns kgc_status
/// so handlers can also fail cheaply without throwing.
template <typename Fn>
kgc_status guarded(Fn&& fn) {
  try {
    const kgc_status st = fn();
    if (st == KGC_OK) g_last_error.clear();
    return st;
  } catch (const kgchain::AlignmentError& e) {
    set_error(e.what());
    return KGC_ERROR_ALIGNMENT;
  } catch (const kgchain::DegenerateInputError& e) {
    set_error(e.what());
    return KGC_ERROR_DEGENERATE;
  } catch (const kgchain::PreconditionError& e) {
    set_error(e.what());
    return KGC_ERROR_PRECONDITION;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return KGC_ERROR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc& e) {
    set_error(e.what());
    return KGC_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KGC_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return KGC_ERROR_INTERNAL;
  }
}

kgc_status arg_error(const char* msg) {
  set_error(msg);
  return KGC_ERROR_INVALID_ARGUMENT;
}

kgc_status copy_out(double* buf, size_t len, const std::vector<double>& src) {
  if (len < src.size()) return arg_error("buffer too small");
  std::memcpy(buf, src.data(), src.size() * sizeof(double));
  return KGC_OK;
}

}  // namespace

struct kgc_potential {
  kgchain::Potential pot;
  std::string name;
};

struct kgc_wavetrain {
  kgchain::WaveTrain w;
};

extern "C" {

const char* kgc_status_name(kgc_status status) {
  switch (status) {
    case KGC_OK: return "KGC_OK";
    case KGC_ERROR_INVALID_ARGUMENT: return "KGC_ERROR_INVALID_ARGUMENT";
    case KGC_ERROR_ALIGNMENT: return "KGC_ERROR_ALIGNMENT";
    case KGC_ERROR_PRECONDITION: return "KGC_ERROR_PRECONDITION";
    case KGC_ERROR_DEGENERATE: return "KGC_ERROR_DEGENERATE";
    case KGC_ERROR_INTERNAL: return "KGC_ERROR_INTERNAL";
  }
  return "KGC_ERROR_UNKNOWN";
}

const char* kgc_last_error(void) { return g_last_error.c_str(); }

uint32_t kgc_abi_version(void) { return 1; }

kgc_status kgc_potential_create(const char* spec, kgc_potential** out) {
  if (!spec || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    auto* handle = new kgc_potential{kgchain::Potential::parse(spec), {}};
    handle->name = handle->pot.name();
    *out = handle;
    return KGC_OK;
  });
}

void kgc_potential_destroy(kgc_potential* pot) { delete pot; }

const char* kgc_potential_name(const kgc_potential* pot) {
  return pot ? pot->name.c_str() : "";
}

kgc_status kgc_potential_psi(const kgc_potential* pot, double x, double* out) {
  if (!pot || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    *out = pot->pot.psi(x);
    return KGC_OK;
  });
}

kgc_status kgc_potential_dpsi(const kgc_potential* pot, double x, double* out) {
  if (!pot || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    *out = pot->pot.dpsi(x);
    return KGC_OK;
  });
}

kgc_status kgc_potential_ddpsi(const kgc_potential* pot, double x, double* out) {
  if (!pot || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    *out = pot->pot.ddpsi(x);
    return KGC_OK;
  });
}

kgc_status kgc_solve(const kgc_potential* pot, const kgc_solve_opts* opts,
                     kgc_wavetrain** out) {
  if (!pot || !opts || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    kgchain::SolveConfig cfg(pot->pot, opts->gamma, opts->k, opts->n);
    if (opts->tol_fixedpoint > 0.0) cfg.tol_fixedpoint = opts->tol_fixedpoint;
    if (opts->tol_offset > 0.0) cfg.tol_offset = opts->tol_offset;
    if (opts->max_iter > 0) cfg.max_iter = opts->max_iter;
    if (opts->initial) {
      kgchain::PeriodicGrid grid(opts->n);
      cfg.initial = kgchain::Profile(
          grid, std::vector<double>(opts->initial, opts->initial + opts->n));
    }
    *out = new kgc_wavetrain{kgchain::solve(cfg)};
    return KGC_OK;
  });
}

kgc_status kgc_wavetrain_restore(const kgc_potential* pot, double gamma, double k,
                                 int32_t n, double omega2, double offset,
                                 const double* profile, int32_t iterations,
                                 int32_t converged, kgc_wavetrain** out) {
  if (!pot || !profile || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    kgchain::PeriodicGrid grid(n);
    kgchain::Profile x(grid, std::vector<double>(profile, profile + n));
    *out = new kgc_wavetrain{kgchain::restore_wavetrain(
        x, offset, omega2, gamma, k, pot->pot, iterations, converged != 0)};
    return KGC_OK;
  });
}

void kgc_wavetrain_destroy(kgc_wavetrain* w) { delete w; }

kgc_status kgc_wavetrain_get_info(const kgc_wavetrain* w, kgc_wavetrain_info* out) {
  if (!w || !out) return arg_error("null argument");
  const kgchain::WaveTrain& t = w->w;
  out->gamma = t.gamma;
  out->k = t.k;
  out->n = t.x.size();
  out->omega2 = t.omega2;
  out->offset = t.offset;
  out->residual_sup = t.residual_sup;
  out->gamma_actual = t.gamma_actual;
  out->energy_coupling = t.energy.coupling;
  out->energy_onsite = t.energy.onsite;
  out->energy_total = t.energy.total;
  out->iterations = t.iterations;
  out->converged = t.converged ? 1 : 0;
  out->in_cone = t.in_cone ? 1 : 0;
  return KGC_OK;
}

kgc_status kgc_wavetrain_get_nodes(const kgc_wavetrain* w, double* buf, size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    const int n = w->w.x.size();
    if (len < static_cast<size_t>(n)) return arg_error("buffer too small");
    for (int j = 0; j < n; ++j) buf[j] = w->w.x.grid.node(j);
    return KGC_OK;
  });
}

kgc_status kgc_wavetrain_get_profile(const kgc_wavetrain* w, double* buf, size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status { return copy_out(buf, len, w->w.x.v); });
}

kgc_status kgc_wavetrain_get_derivative(const kgc_wavetrain* w, double* buf,
                                        size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    return copy_out(buf, len, kgchain::derivative(w->w.x).v);
  });
}

kgc_status kgc_wavetrain_get_second_difference(const kgc_wavetrain* w, double* buf,
                                               size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    return copy_out(buf, len, kgchain::second_difference(w->w.x).v);
  });
}

kgc_status kgc_wavetrain_get_velocity(const kgc_wavetrain* w, double* buf, size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    return copy_out(buf, len, kgchain::build_trace(w->w).v);
  });
}

kgc_status kgc_wavetrain_get_residual(const kgc_wavetrain* w, double* buf, size_t len) {
  if (!w || !buf) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    return copy_out(buf, len, kgchain::residual(w->w).v);
  });
}

kgc_status kgc_check_k0(const kgc_wavetrain* w, kgc_k0_report* out) {
  if (!w || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    const kgchain::K0Report rep = kgchain::check_k0(w->w);
    out->energy_mean = rep.energy_mean;
    out->energy_variation = rep.energy_variation;
    out->period_mismatch = rep.period_mismatch;
    return KGC_OK;
  });
}

kgc_status kgc_simulate_chain(const kgc_wavetrain* w, int32_t particles,
                              double t_end, double dt, kgc_chain_report* out) {
  if (!w || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    const kgchain::ChainReport rep =
        kgchain::simulate_chain(w->w, particles, t_end, dt);
    out->max_deviation = rep.max_deviation;
    out->energy_drift = rep.energy_drift;
    return KGC_OK;
  });
}

kgc_status kgc_check_nesting(const kgc_wavetrain* const* ws, size_t count,
                             int* out_nested) {
  if (!ws || !out_nested) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    std::vector<kgchain::Trace> traces;
    traces.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!ws[i]) return arg_error("null wave train in list");
      traces.push_back(kgchain::build_trace(ws[i]->w));
    }
    *out_nested = kgchain::check_nesting(traces) ? 1 : 0;
    return KGC_OK;
  });
}

kgc_status kgc_time_map(const kgc_potential* pot, double energy, double* out) {
  if (!pot || !out) return arg_error("null argument");
  return guarded([&]() -> kgc_status {
    *out = kgchain::time_map(energy, pot->pot);
    return KGC_OK;
  });
}

}  // extern "C"
