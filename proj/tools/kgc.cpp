// kgc: command line front end for the wave train solver.
//
// Subcommands: solve (one parameter point), sweep (gamma x k grid with a
// summary), validate (re-check a stored run). Exit codes: 0 success,
// 1 invalid input or IO, 2 non-convergence.

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgchain.h"

namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string iso_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char b[8];
      std::snprintf(b, sizeof b, "\\u%04x", static_cast<unsigned>(c));
      out += b;
    } else {
      out += c;
    }
  }
  return out;
}

void api_check(kgc_status st, const std::string& what) {
  if (st != KGC_OK) throw InputError(what + ": " + kgc_last_error());
}

struct Pot {
  kgc_potential* h = nullptr;
  Pot() = default;
  explicit Pot(const std::string& spec) {
    api_check(kgc_potential_create(spec.c_str(), &h), "potential '" + spec + "'");
  }
  Pot(Pot&& o) noexcept : h(o.h) { o.h = nullptr; }
  Pot& operator=(Pot&& o) noexcept {
    if (this != &o) {
      reset();
      h = o.h;
      o.h = nullptr;
    }
    return *this;
  }
  Pot(const Pot&) = delete;
  Pot& operator=(const Pot&) = delete;
  ~Pot() { reset(); }
  void reset() {
    if (h) kgc_potential_destroy(h);
    h = nullptr;
  }
};

struct Wave {
  kgc_wavetrain* h = nullptr;
  Wave() = default;
  explicit Wave(kgc_wavetrain* p) : h(p) {}
  Wave(Wave&& o) noexcept : h(o.h) { o.h = nullptr; }
  Wave& operator=(Wave&& o) noexcept {
    if (this != &o) {
      reset();
      h = o.h;
      o.h = nullptr;
    }
    return *this;
  }
  Wave(const Wave&) = delete;
  Wave& operator=(const Wave&) = delete;
  ~Wave() { reset(); }
  void reset() {
    if (h) kgc_wavetrain_destroy(h);
    h = nullptr;
  }
};

struct RunResult {
  Wave wave;
  kgc_wavetrain_info info{};
  std::string potential_name;
  std::vector<double> phi, x, dx, ddx, vel;
};

void fetch_buffers(kgc_wavetrain* w, const kgc_wavetrain_info& info,
                   std::vector<double>& phi, std::vector<double>& x,
                   std::vector<double>& dx, std::vector<double>& ddx,
                   std::vector<double>& vel) {
  const size_t len = static_cast<size_t>(info.n);
  phi.resize(len);
  x.resize(len);
  dx.resize(len);
  ddx.resize(len);
  vel.resize(len);
  api_check(kgc_wavetrain_get_nodes(w, phi.data(), len), "nodes");
  api_check(kgc_wavetrain_get_profile(w, x.data(), len), "profile");
  api_check(kgc_wavetrain_get_derivative(w, dx.data(), len), "derivative");
  api_check(kgc_wavetrain_get_second_difference(w, ddx.data(), len),
            "second difference");
  api_check(kgc_wavetrain_get_velocity(w, vel.data(), len), "velocity");
}

RunResult run_point(const std::string& pot_spec, double gamma, double k, int n,
                    double tol, int max_iter, const std::vector<double>* initial) {
  Pot pot(pot_spec);
  if (initial && static_cast<int>(initial->size()) != n) {
    throw InputError("initial profile has " + std::to_string(initial->size()) +
                     " samples, expected " + std::to_string(n));
  }
  kgc_solve_opts opts{};
  opts.gamma = gamma;
  opts.k = k;
  opts.n = n;
  opts.tol_fixedpoint = tol;
  opts.tol_offset = 0.0;
  opts.max_iter = max_iter;
  opts.initial = initial ? initial->data() : nullptr;
  kgc_wavetrain* w = nullptr;
  api_check(kgc_solve(pot.h, &opts, &w), "solve");
  RunResult r;
  r.wave = Wave(w);
  api_check(kgc_wavetrain_get_info(w, &r.info), "info");
  fetch_buffers(w, r.info, r.phi, r.x, r.dx, r.ddx, r.vel);
  r.potential_name = kgc_potential_name(pot.h);
  return r;
}

void write_run(const fs::path& dir, const RunResult& r, const std::string& command) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  {
    std::ofstream f(dir / "profile.csv", std::ios::binary);
    if (!f) throw InputError("cannot write " + (dir / "profile.csv").string());
    f << "phi,X,dX,ddX,V\n";
    for (int j = 0; j < r.info.n; ++j) {
      f << fmt17(r.phi[j]) << ',' << fmt17(r.x[j]) << ',' << fmt17(r.dx[j]) << ','
        << fmt17(r.ddx[j]) << ',' << fmt17(r.vel[j]) << '\n';
    }
  }
  {
    std::ofstream f(dir / "trace.csv", std::ios::binary);
    if (!f) throw InputError("cannot write " + (dir / "trace.csv").string());
    f << "X,V\n";
    for (int j = 0; j < r.info.n; ++j) {
      f << fmt17(r.x[j]) << ',' << fmt17(r.vel[j]) << '\n';
    }
  }
  {
    std::ofstream f(dir / "meta.json", std::ios::binary);
    if (!f) throw InputError("cannot write " + (dir / "meta.json").string());
    f << "{\n";
    f << "  \"gamma\": " << fmt17(r.info.gamma) << ",\n";
    f << "  \"k\": " << fmt17(r.info.k) << ",\n";
    f << "  \"N\": " << r.info.n << ",\n";
    f << "  \"potential\": \"" << json_escape(r.potential_name) << "\",\n";
    f << "  \"omega2\": " << fmt17(r.info.omega2) << ",\n";
    f << "  \"xhat\": " << fmt17(r.info.offset) << ",\n";
    f << "  \"residual_sup\": " << fmt17(r.info.residual_sup) << ",\n";
    f << "  \"gamma_actual\": " << fmt17(r.info.gamma_actual) << ",\n";
    f << "  \"iterations\": " << r.info.iterations << ",\n";
    f << "  \"converged\": " << (r.info.converged ? "true" : "false") << ",\n";
    f << "  \"in_cone\": " << (r.info.in_cone ? "true" : "false") << ",\n";
    f << "  \"coupling\": " << fmt17(r.info.energy_coupling) << ",\n";
    f << "  \"onsite\": " << fmt17(r.info.energy_onsite) << ",\n";
    f << "  \"total\": " << fmt17(r.info.energy_total) << ",\n";
    f << "  \"command\": \"" << json_escape(command) << "\",\n";
    f << "  \"timestamp\": \"" << iso_now() << "\"\n";
    f << "}\n";
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string::npos ? end : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

double parse_num(const std::string& tok, const std::string& where) {
  const char* b = tok.c_str();
  char* e = nullptr;
  errno = 0;
  const double v = std::strtod(b, &e);
  if (e == b || *e != '\0' || !std::isfinite(v)) {
    throw InputError("corrupt " + where + ": bad number '" + tok + "'");
  }
  return v;
}

std::vector<std::vector<double>> read_csv(const fs::path& path,
                                          const std::string& header) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw InputError("corrupt " + path.string() + ": empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw InputError("corrupt " + path.string() + ": expected header '" + header +
                     "'");
  }
  const size_t cols =
      static_cast<size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::vector<std::vector<double>> data(cols);
  size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> toks = split(line, ',');
    if (toks.size() != cols) {
      throw InputError("corrupt " + path.string() + ": row " + std::to_string(row) +
                       " has " + std::to_string(toks.size()) + " fields");
    }
    const std::string where = path.string() + " row " + std::to_string(row);
    for (size_t c = 0; c < cols; ++c) data[c].push_back(parse_num(toks[c], where));
  }
  return data;
}

std::vector<double> read_profile_column(const fs::path& path, int n) {
  const auto cols = read_csv(path, "phi,X,dX,ddX,V");
  if (static_cast<int>(cols[1].size()) != n) {
    throw InputError("initial profile " + path.string() + " has " +
                     std::to_string(cols[1].size()) + " rows, expected " +
                     std::to_string(n));
  }
  return cols[1];
}

struct LoadedRun {
  double gamma = 0, k = 0, omega2 = 0, xhat = 0, residual_sup = 0,
         gamma_actual = 0, coupling = 0, onsite = 0, total = 0;
  int n = 0, iterations = 0;
  bool converged = false, in_cone = false;
  std::string potential;
  std::vector<double> phi, x, dx, ddx, vel, tx, tv;
};

double jnum(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw InputError(std::string("corrupt meta.json: missing number '") + key + "'");
  }
  return j[key].get<double>();
}

bool jbool(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_boolean()) {
    throw InputError(std::string("corrupt meta.json: missing boolean '") + key + "'");
  }
  return j[key].get<bool>();
}

std::string jstr(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw InputError(std::string("corrupt meta.json: missing string '") + key + "'");
  }
  return j[key].get<std::string>();
}

LoadedRun load_run(const fs::path& dir) {
  LoadedRun run;
  {
    std::ifstream f(dir / "meta.json");
    if (!f) throw InputError("cannot open " + (dir / "meta.json").string());
    nlohmann::json j;
    try {
      f >> j;
    } catch (const std::exception& e) {
      throw InputError("corrupt meta.json: " + std::string(e.what()));
    }
    run.gamma = jnum(j, "gamma");
    run.k = jnum(j, "k");
    run.n = static_cast<int>(jnum(j, "N"));
    run.potential = jstr(j, "potential");
    run.omega2 = jnum(j, "omega2");
    run.xhat = jnum(j, "xhat");
    run.residual_sup = jnum(j, "residual_sup");
    run.gamma_actual = jnum(j, "gamma_actual");
    run.iterations = static_cast<int>(jnum(j, "iterations"));
    run.converged = jbool(j, "converged");
    run.in_cone = jbool(j, "in_cone");
    run.coupling = jnum(j, "coupling");
    run.onsite = jnum(j, "onsite");
    run.total = jnum(j, "total");
  }
  const auto prof = read_csv(dir / "profile.csv", "phi,X,dX,ddX,V");
  if (static_cast<int>(prof[0].size()) != run.n) {
    throw InputError("corrupt profile.csv: " + std::to_string(prof[0].size()) +
                     " rows, meta says N=" + std::to_string(run.n));
  }
  run.phi = prof[0];
  run.x = prof[1];
  run.dx = prof[2];
  run.ddx = prof[3];
  run.vel = prof[4];
  const auto trace = read_csv(dir / "trace.csv", "X,V");
  if (static_cast<int>(trace[0].size()) != run.n) {
    throw InputError("corrupt trace.csv: " + std::to_string(trace[0].size()) +
                     " rows, meta says N=" + std::to_string(run.n));
  }
  run.tx = trace[0];
  run.tv = trace[1];
  return run;
}

struct Restored {
  Pot pot;
  Wave wave;
  kgc_wavetrain_info info{};
  std::vector<double> phi, x, dx, ddx, vel;
};

Restored restore_run(const LoadedRun& run) {
  Restored r;
  r.pot = Pot(run.potential);
  kgc_wavetrain* w = nullptr;
  api_check(kgc_wavetrain_restore(r.pot.h, run.gamma, run.k, run.n, run.omega2,
                                  run.xhat, run.x.data(), run.iterations,
                                  run.converged ? 1 : 0, &w),
            "restore");
  r.wave = Wave(w);
  api_check(kgc_wavetrain_get_info(w, &r.info), "info");
  fetch_buffers(w, r.info, r.phi, r.x, r.dx, r.ddx, r.vel);
  return r;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

// Stored numbers must agree with values recomputed from the profile; a
// corrupted file shows up as a mismatch long before it is plausible data.
void verify_integrity(const LoadedRun& run, const Restored& r) {
  const auto close = [](double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1.0e-12});
    return std::fabs(a - b) <= 1e-9 * scale || std::fabs(a - b) <= 1e-12;
  };
  const auto reject = [](const std::string& field) {
    throw InputError("corrupt run: stored " + field +
                     " disagrees with the recomputed value");
  };
  if (!close(run.residual_sup, r.info.residual_sup)) reject("residual_sup");
  if (!close(run.gamma_actual, r.info.gamma_actual)) reject("gamma_actual");
  if (!close(run.coupling, r.info.energy_coupling)) reject("coupling");
  if (!close(run.onsite, r.info.energy_onsite)) reject("onsite");
  if (!close(run.total, r.info.energy_total)) reject("total");
  if (run.in_cone != (r.info.in_cone != 0)) reject("in_cone");
  if (sup_diff(run.phi, r.phi) > 1e-12) reject("phi column");
  const double dscale = 1.0 + sup_abs(r.dx);
  if (sup_diff(run.dx, r.dx) > 1e-9 * dscale) reject("dX column");
  const double ddscale = 1.0 + sup_abs(r.ddx);
  if (sup_diff(run.ddx, r.ddx) > 1e-9 * ddscale) reject("ddX column");
  const double vscale = 1.0 + sup_abs(r.vel);
  if (sup_diff(run.vel, r.vel) > 1e-9 * vscale) reject("V column");
  const double xscale = 1.0 + sup_abs(r.x);
  if (sup_diff(run.tx, run.x) > 1e-12 * xscale) reject("trace X column");
  if (sup_diff(run.tv, run.vel) > 1e-12 * vscale) reject("trace V column");
}

int default_particles(double k, int n) {
  // Smallest J >= 16 with k*J integer; k is p/n after alignment.
  const long long p = std::llround(k * n);
  const long long den = n / std::gcd(p < 0 ? -p : p, static_cast<long long>(n));
  return static_cast<int>(((16 + den - 1) / den) * den);
}

struct SolveArgs {
  std::string potential;
  double gamma = 0.0;
  double k = 0.0;
  int n = 0;
  double tol = 0.0;
  int max_iter = 0;
  std::string out = "out";
  std::string initial = "cosine";
};

struct SweepArgs {
  std::string potential;
  std::vector<double> gammas;
  std::vector<double> ks;
  int n = 0;
  double tol = 0.0;
  int max_iter = 0;
  std::string out = "out";
  std::string preset;
  int jobs = 0;
};

struct ValidateArgs {
  std::string in;
  std::string checks;
  int particles = 0;
  double t_end = 0.0;
  double dt = 0.0;
};

int cmd_solve(const SolveArgs& a, const std::string& command) {
  std::vector<double> init;
  const std::vector<double>* initp = nullptr;
  if (a.initial != "cosine") {
    init = read_profile_column(a.initial, a.n);
    initp = &init;
  }
  const RunResult r =
      run_point(a.potential, a.gamma, a.k, a.n, a.tol, a.max_iter, initp);
  write_run(a.out, r, command);
  std::printf("potential %s  gamma %s  k %s  N %d\n", r.potential_name.c_str(),
              fmt_label(r.info.gamma).c_str(), fmt_label(r.info.k).c_str(),
              r.info.n);
  std::printf("%s after %d iterations\n",
              r.info.converged ? "converged" : "not converged", r.info.iterations);
  std::printf("omega2 %.10g  xhat %.10g  residual_sup %.3e  in_cone %s\n",
              r.info.omega2, r.info.offset, r.info.residual_sup,
              r.info.in_cone ? "true" : "false");
  std::printf("wrote %s\n", a.out.c_str());
  if (!r.info.converged) {
    std::fprintf(stderr, "kgc: iteration did not reach the tolerance\n");
    return 2;
  }
  return 0;
}

int cmd_sweep(SweepArgs a, const std::string& command) {
  if (!a.preset.empty()) {
    if (a.preset == "ex1") {
      a.potential = "exp_decay";
      a.gammas = {10.0};
      a.ks = {0.1};
      a.n = 800;
    } else if (a.preset == "ex2") {
      a.potential = "quartic";
      a.gammas = {50.0};
      a.ks = {0.1, 0.3, 0.5};
      a.n = 800;
    } else {
      a.potential = "saturating";
      a.gammas = {0.1, 3.0, 12.0, 30.0, 60.0, 100.0};
      a.ks = {0.1};
      a.n = 800;
    }
  }
  if (a.potential.empty()) throw InputError("missing --potential (or --preset)");
  if (a.n <= 0) throw InputError("missing --N (or --preset)");
  if (a.gammas.empty() || a.ks.empty()) {
    throw InputError("empty parameter list: need --gamma-list and --k-list");
  }

  struct Point {
    double gamma, k;
  };
  std::vector<Point> pts;
  for (double g : a.gammas) {
    for (double k : a.ks) pts.push_back({g, k});
  }
  std::sort(pts.begin(), pts.end(), [](const Point& l, const Point& r) {
    return l.gamma != r.gamma ? l.gamma < r.gamma : l.k < r.k;
  });

  std::vector<RunResult> results(pts.size());
  std::vector<std::string> errors(pts.size());
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= pts.size()) return;
      try {
        results[i] = run_point(a.potential, pts[i].gamma, pts[i].k, a.n, a.tol,
                               a.max_iter, nullptr);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  size_t jobs = a.jobs > 0 ? static_cast<size_t>(a.jobs)
                           : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, pts.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!errors[i].empty()) {
      throw InputError("point gamma=" + fmt_label(pts[i].gamma) +
                       " k=" + fmt_label(pts[i].k) + ": " + errors[i]);
    }
  }

  int nested = -1;
  if (a.preset == "ex3") {
    std::vector<const kgc_wavetrain*> ws;
    ws.reserve(results.size());
    for (const RunResult& r : results) ws.push_back(r.wave.h);
    int flag = 0;
    api_check(kgc_check_nesting(ws.data(), ws.size(), &flag), "nesting check");
    nested = flag;
  }

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw InputError("cannot create " + a.out + ": " + ec.message());
  std::ofstream sum(fs::path(a.out) / "summary.csv", std::ios::binary);
  if (!sum) throw InputError("cannot write " + a.out + "/summary.csv");
  sum << "gamma,k,omega2,residual_sup,iterations,in_cone"
      << (nested >= 0 ? ",nested" : "") << "\n";
  bool all_converged = true;
  for (size_t i = 0; i < pts.size(); ++i) {
    const RunResult& r = results[i];
    const std::string label =
        "g" + fmt_label(pts[i].gamma) + "_k" + fmt_label(pts[i].k);
    write_run(fs::path(a.out) / label, r, command);
    sum << fmt17(r.info.gamma) << ',' << fmt17(r.info.k) << ','
        << fmt17(r.info.omega2) << ',' << fmt17(r.info.residual_sup) << ','
        << r.info.iterations << ',' << (r.info.in_cone ? "true" : "false");
    if (nested >= 0) sum << ',' << (nested ? "true" : "false");
    sum << '\n';
    std::printf("gamma %-8s k %-6s omega2 %-14.8g iterations %-5d %s\n",
                fmt_label(pts[i].gamma).c_str(), fmt_label(pts[i].k).c_str(),
                r.info.omega2, r.info.iterations,
                r.info.converged ? "converged" : "NOT CONVERGED");
    all_converged = all_converged && r.info.converged;
  }
  if (nested >= 0) std::printf("nested: %s\n", nested ? "true" : "false");
  std::printf("wrote %s/summary.csv\n", a.out.c_str());
  if (!all_converged) {
    std::fprintf(stderr, "kgc: at least one point did not converge\n");
    return 2;
  }
  return 0;
}

int cmd_validate(const ValidateArgs& a) {
  const LoadedRun run = load_run(a.in);
  const Restored r = restore_run(run);
  verify_integrity(run, r);

  std::string selected = a.checks;
  if (selected.empty()) {
    selected = run.k == 0.0 ? "residual,k0,trace" : "residual,chain,trace";
  }
  struct Row {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Row> rows;
  char detail[160];
  const double supx = sup_abs(r.x);
  for (const std::string& name : split(selected, ',')) {
    if (name == "residual") {
      const double budget = 1e-3 * (1.0 + supx);
      std::snprintf(detail, sizeof detail, "sup %.3e (budget %.3e)",
                    r.info.residual_sup, budget);
      rows.push_back({name, r.info.residual_sup <= budget, detail});
    } else if (name == "k0") {
      kgc_k0_report rep{};
      const kgc_status st = kgc_check_k0(r.wave.h, &rep);
      if (st != KGC_OK) {
        rows.push_back({name, false, kgc_last_error()});
      } else {
        std::snprintf(detail, sizeof detail,
                      "energy variation %.3e, period mismatch %.3e",
                      rep.energy_variation, rep.period_mismatch);
        rows.push_back({name,
                        rep.energy_variation <= 1e-3 && rep.period_mismatch <= 1e-3,
                        detail});
      }
    } else if (name == "chain") {
      const int particles =
          a.particles > 0 ? a.particles : default_particles(run.k, run.n);
      kgc_chain_report rep{};
      const kgc_status st =
          kgc_simulate_chain(r.wave.h, particles, a.t_end, a.dt, &rep);
      if (st != KGC_OK) {
        rows.push_back({name, false, kgc_last_error()});
      } else {
        const double budget = 1e-2 * std::max(supx, 1e-12);
        std::snprintf(detail, sizeof detail,
                      "J %d deviation %.3e (budget %.3e), drift %.3e", particles,
                      rep.max_deviation, budget, rep.energy_drift);
        rows.push_back(
            {name, rep.max_deviation <= budget && rep.energy_drift <= 1e-5,
             detail});
      }
    } else if (name == "trace") {
      double defect = 0.0;
      for (int j = 0; j < run.n; ++j) {
        defect = std::max(defect,
                          std::fabs(r.vel[j] + r.vel[(run.n - j) % run.n]));
      }
      const double tol = 1e-8 * (1.0 + sup_abs(r.vel));
      std::snprintf(detail, sizeof detail, "odd-symmetry defect %.3e (tol %.3e)",
                    defect, tol);
      rows.push_back({name, defect <= tol, detail});
    } else {
      throw InputError("unknown check '" + name +
                       "': expected residual, k0, chain or trace");
    }
  }

  std::printf("%-9s %-6s %s\n", "check", "result", "detail");
  bool all = true;
  for (const Row& row : rows) {
    std::printf("%-9s %-6s %s\n", row.name.c_str(), row.pass ? "pass" : "FAIL",
                row.detail.c_str());
    all = all && row.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command;
  for (int i = 0; i < argc; ++i) {
    if (i) command += ' ';
    command += argv[i];
  }

  CLI::App app{"wave train solver for Klein-Gordon chains"};
  app.require_subcommand(1);

  SolveArgs sa;
  SweepArgs wa;
  ValidateArgs va;

  CLI::App* solve = app.add_subcommand("solve", "compute one wave train");
  solve->add_option("--gamma", sa.gamma, "constraint value")->required();
  solve->add_option("--k", sa.k, "wave number")->required();
  solve->add_option("--N", sa.n, "grid size (even)")->required();
  solve
      ->add_option("--potential", sa.potential,
                   "harmonic:c=<c>, exp_decay, quartic or saturating")
      ->required();
  solve->add_option("--tol", sa.tol, "fixed point tolerance");
  solve->add_option("--max-iter", sa.max_iter, "iteration cap");
  solve->add_option("--out", sa.out, "output directory (default out)");
  solve->add_option("--initial", sa.initial,
                    "cosine or a profile.csv to start from");

  CLI::App* sweep = app.add_subcommand("sweep", "solve a gamma x k grid");
  sweep->add_option("--gamma-list", wa.gammas, "gamma values")->delimiter(',');
  sweep->add_option("--k-list", wa.ks, "wave numbers")->delimiter(',');
  sweep->add_option("--N", wa.n, "grid size (even)");
  sweep->add_option("--potential", wa.potential, "potential spec");
  sweep->add_option("--preset", wa.preset, "ex1, ex2 or ex3")
      ->check(CLI::IsMember({"ex1", "ex2", "ex3"}));
  sweep->add_option("--tol", wa.tol, "fixed point tolerance");
  sweep->add_option("--max-iter", wa.max_iter, "iteration cap");
  sweep->add_option("--out", wa.out, "output directory (default out)");
  sweep->add_option("--jobs", wa.jobs, "worker threads");

  CLI::App* validate = app.add_subcommand("validate", "re-check a stored run");
  validate->add_option("--in", va.in, "directory from a prior solve")->required();
  validate->add_option("--checks", va.checks,
                       "comma separated subset of residual,k0,chain,trace");
  validate->add_option("--J", va.particles, "particle count for the chain check");
  validate->add_option("--t-end", va.t_end, "chain simulation time");
  validate->add_option("--dt", va.dt, "chain time step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa, command);
    if (sweep->parsed()) return cmd_sweep(wa, command);
    if (validate->parsed()) return cmd_validate(va);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kgc: %s\n", e.what());
    return 1;
  }
  return 1;
}
