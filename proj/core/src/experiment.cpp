#include "dnls/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "dnls/dynamics.hpp"
#include "dnls/modulation.hpp"
#include "dnls/report.hpp"
#include "dnls/resolvent.hpp"
#include "dnls/scattering.hpp"

namespace dnls {

using nlohmann::json;

Branch ExperimentConfig::branch_enum() const {
  if (branch == "plus") return Branch::plus;
  if (branch == "minus") return Branch::minus;
  throw ConfigError("branch must be \"plus\" or \"minus\"");
}

static const std::set<std::string> kExperiments = {
    "solitary_scan", "sp_certify", "resolvent_check", "linear_decay", "stability", "scattering"};

void validate(const ExperimentConfig& cfg) {
  if (!kExperiments.count(cfg.experiment))
    throw ConfigError("unknown experiment: " + cfg.experiment);
  if (cfg.coeffs.empty()) throw ConfigError("nonlinearity.coeffs must be nonempty");
  cfg.branch_enum();
  if (!(cfg.T > 0)) throw ConfigError("T must be positive");
  if (!(cfg.dt > 0)) throw ConfigError("dt must be positive");
  if (cfg.dt > 0.05) throw ConfigError("dt must be <= 0.05");
  if (cfg.beta < 0) throw ConfigError("beta must be >= 0");
  if (cfg.d < 0) throw ConfigError("d must be >= 0");
  if (cfg.N < 2 * cfg.T + 50) throw ConfigError("N must be >= 2T + 50");
  if (cfg.omega_count < 1) throw ConfigError("omega_count must be >= 1");
  if (!(cfg.omega_lo <= cfg.omega_hi)) throw ConfigError("omega_lo must be <= omega_hi");
}

static void check_keys(const json& j) {
  static const std::set<std::string> allowed = {
      "experiment", "nonlinearity", "branch", "omega0", "theta0", "d", "T", "dt", "beta",
      "N", "seed", "output_dir", "snapshot_every", "save_states", "omega_lo", "omega_hi",
      "omega_count"};
  for (auto& [key, val] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown config key: " + key);
    (void)val;
  }
  if (j.contains("nonlinearity")) {
    if (!j["nonlinearity"].is_object()) throw ConfigError("nonlinearity must be an object");
    for (auto& [key, val] : j["nonlinearity"].items()) {
      if (key != "coeffs") throw ConfigError("unknown config key: nonlinearity." + key);
      (void)val;
    }
  }
}

static void apply_override(json& j, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: " + spec);
  std::string path = spec.substr(0, eq), value = spec.substr(eq + 1);
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare strings are allowed unquoted
  }
  json* node = &j;
  size_t pos = 0;
  while (true) {
    size_t dot = path.find('.', pos);
    std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (key.empty()) throw ConfigError("bad override path: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  for (const std::string& ov : overrides) apply_override(j, ov);
  check_keys(j);

  ExperimentConfig cfg;
  try {
    if (!j.contains("experiment")) throw ConfigError("missing field: experiment");
    cfg.experiment = j["experiment"].get<std::string>();
    if (!j.contains("nonlinearity") || !j["nonlinearity"].contains("coeffs"))
      throw ConfigError("missing field: nonlinearity.coeffs");
    cfg.coeffs = j["nonlinearity"]["coeffs"].get<std::vector<double>>();
    cfg.branch = j.value("branch", cfg.branch);
    cfg.omega0 = j.value("omega0", cfg.omega0);
    cfg.theta0 = j.value("theta0", cfg.theta0);
    cfg.d = j.value("d", cfg.d);
    cfg.T = j.value("T", cfg.T);
    cfg.dt = j.value("dt", cfg.dt);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.N = j.value("N", cfg.N);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.snapshot_every = j.value("snapshot_every", cfg.snapshot_every);
    cfg.save_states = j.value("save_states", cfg.save_states);
    cfg.omega_lo = j.value("omega_lo", cfg.omega_lo);
    cfg.omega_hi = j.value("omega_hi", cfg.omega_hi);
    cfg.omega_count = j.value("omega_count", cfg.omega_count);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has wrong type: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text, overrides);
}

Field make_perturbation(const Window& w, const SymplecticProjection& p, double d, double beta,
                        unsigned long long seed) {
  Field pert = zero_field(w);
  if (d == 0.0) return pert;

  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

  for (int bump = 0; bump < 2; ++bump) {
    double c = -3.0 + 6.0 * u01();
    double wd = 1.5 + 1.5 * u01();
    double u1 = u01(), u2 = u01();
    double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    cplx amp(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    for (int i = 0; i < w.size(); ++i) {
      double x = w.site(i);
      pert[i] += amp * std::exp(-(x - c) * (x - c) / (2.0 * wd * wd));
    }
  }

  Field chi = p.project_continuous(pert);
  double l2 = norm_l2(chi);
  double l1b = weighted_norm(w, chi, WeightSpec{WeightSpec::P::one, beta});
  double scale = d / std::max(l2, l1b);
  for (cplx& v : chi) v *= scale;
  return chi;
}

static json config_echo(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["nonlinearity"]["coeffs"] = c.coeffs;
  j["branch"] = c.branch;
  j["omega0"] = c.omega0;
  j["theta0"] = c.theta0;
  j["d"] = c.d;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["beta"] = c.beta;
  j["N"] = c.N;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["snapshot_every"] = c.snapshot_every;
  j["save_states"] = c.save_states;
  if (c.experiment == "solitary_scan") {
    j["omega_lo"] = c.omega_lo;
    j["omega_hi"] = c.omega_hi;
    j["omega_count"] = c.omega_count;
  }
  return j;
}

#ifndef DNLS_VERSION
#define DNLS_VERSION "0.0.0"
#endif

// Everything an auditor needs to rerun the stage lives here, not in report.json:
// the report must stay byte-identical across reruns, the wall time cannot.
static void write_manifest(const std::string& dir, const ExperimentConfig& cfg, double wall_ms) {
  json man;
  man["config"] = config_echo(cfg);
  man["versions"]["core"] = DNLS_VERSION;
  man["versions"]["report_schema"] = 1;
  man["wall_time_ms"] = wall_ms;
  std::string path = dir + "/manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << man.dump(2) << "\n";
}

static std::string write_report(const std::string& dir, const ExperimentConfig& cfg,
                                const json& metrics) {
  json rep;
  rep["schema_version"] = 1;
  rep["experiment"] = cfg.experiment;
  rep["config"] = config_echo(cfg);
  rep["metrics"] = metrics;
  std::string path = dir + "/report.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << rep.dump(2) << "\n";
  return path;
}

static json run_solitary_scan(const ExperimentConfig& cfg, const std::string& dir) {
  Nonlinearity m = cfg.model();
  Branch br = cfg.branch_enum();
  std::vector<std::vector<double>> rows;
  double max_res = 0.0;
  for (int i = 0; i < cfg.omega_count; ++i) {
    double omega = cfg.omega_count == 1
                       ? cfg.omega_lo
                       : cfg.omega_lo + (cfg.omega_hi - cfg.omega_lo) * i / (cfg.omega_count - 1);
    SolitaryWave sw = make_wave(m, br, omega);
    Window w(window_for_wave(sw));
    double res = nep_residual(sw, w, m);
    AdmissibilityReport ar = admissibility_report(sw, m);
    max_res = std::max(max_res, res);
    rows.push_back({omega, sw.C, sw.k, res, ar.dnorm_domega, ar.sp_cond1 ? 1.0 : 0.0,
                    ar.intdif_ok ? 1.0 : 0.0});
  }
  write_rows_csv(dir + "/waves.csv", "omega,C,k,residual,dnorm_domega,sp_cond1,intdif_ok", rows);
  json metrics;
  metrics["count"] = cfg.omega_count;
  metrics["max_residual"] = max_res;
  return metrics;
}

static json run_sp_certify(const ExperimentConfig& cfg, const std::string& dir) {
  Nonlinearity m = cfg.model();
  SolitaryWave sw = make_wave(m, cfg.branch_enum(), cfg.omega0);
  ResolventContext ctx = make_resolvent_context(sw, m);
  ScanOptions opt;
  opt.grid_csv = dir + "/detgrid.csv";
  RootReport rep = scan_roots(ctx, opt);
  json metrics;
  metrics["min_abs_D"] = rep.min_abs_D;
  metrics["argmin_re"] = rep.argmin_re;
  metrics["argmin_im"] = rep.argmin_im;
  metrics["sp_certified"] = rep.sp_certified;
  metrics["zero_count_at_origin"] = rep.zero_count_at_origin;
  metrics["c2_re"] = rep.c2.real();
  metrics["c2_im"] = rep.c2.imag();
  metrics["order"] = rep.order;
  return metrics;
}

static json run_resolvent_check(const ExperimentConfig& cfg, const std::string& dir) {
  Nonlinearity m = cfg.model();
  SolitaryWave sw = make_wave(m, cfg.branch_enum(), cfg.omega0);
  ResolventContext ctx = make_resolvent_context(sw, m);
  static const cplx lambdas[10] = {{2, 2},  {2, -2},  {-2, 2},  {-2, -2}, {3, 1.5},
                                   {-3, 1.5}, {3, -1.5}, {-3, -1.5}, {1.5, 0}, {-1.5, 0}};
  std::vector<std::vector<double>> rows;
  double max_res = 0.0;
  for (cplx lam : lambdas) {
    double r = kernel_residual(ctx, lam, cfg.N);
    max_res = std::max(max_res, r);
    rows.push_back({lam.real(), lam.imag(), r});
  }
  write_rows_csv(dir + "/resolvent.csv", "lambda_re,lambda_im,residual", rows);
  json metrics;
  metrics["max_residual"] = max_res;
  return metrics;
}

static json run_linear_decay(const ExperimentConfig& cfg, const std::string& dir) {
  Nonlinearity m = cfg.model();
  SolitaryWave sw = make_wave(m, cfg.branch_enum(), cfg.omega0);
  LinearizedOperator L = build_linearized(sw, m, cfg.N);
  SymplecticProjection p = make_projection(sw, m, L.win);
  std::vector<double> grid;
  for (int t = 10; t <= 100; ++t) grid.push_back(t);
  DecayFit fit = measure_decay(L, p, cfg.beta, grid);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < fit.t.size(); ++i) rows.push_back({fit.t[i], fit.norm[i]});
  write_rows_csv(dir + "/decay.csv", "t,norm", rows);
  json metrics;
  metrics["slope"] = fit.fit.slope;
  metrics["intercept"] = fit.fit.intercept;
  metrics["r2"] = fit.fit.r2;
  return metrics;
}

struct PerturbedRun {
  Window w;
  Trajectory traj;
  MajorantReport mod;
};

static PerturbedRun run_perturbed(const ExperimentConfig& cfg) {
  Nonlinearity m = cfg.model();
  Branch br = cfg.branch_enum();
  SolitaryWave sw = make_wave(m, br, cfg.omega0);
  Window w(cfg.N);
  SymplecticProjection p = make_projection(sw, m, w);
  Field chi = make_perturbation(w, p, cfg.d, cfg.beta, cfg.seed);
  cplx rot = std::exp(cplx(0, cfg.theta0));
  Field psi0(w.size());
  for (int i = 0; i < w.size(); ++i) psi0[i] = rot * (p.phi[i] + chi[i]);

  PerturbedRun run;
  run.w = w;
  run.traj = evolve(w, m, psi0, cfg.T, cfg.dt, cfg.snapshot_every);
  run.mod = majorant(w, m, br, run.traj, cfg.omega0, cfg.theta0, cfg.beta);
  return run;
}

static std::vector<std::vector<double>> majorant_rows(const MajorantReport& mod) {
  std::vector<std::vector<double>> rows;
  for (const MajorantRow& r : mod.rows)
    rows.push_back({r.t, r.chi_winf, r.gamma_dot, r.omega_dot});
  return rows;
}

static json run_stability(const ExperimentConfig& cfg, const std::string& dir) {
  PerturbedRun run = run_perturbed(cfg);
  write_rows_csv(dir + "/majorant.csv", "t,chi_winf,gamma_dot,omega_dot",
                 majorant_rows(run.mod));
  if (cfg.save_states) save_trajectory(dir + "/trajectory", run.w, run.traj);
  json metrics;
  metrics["M_T"] = run.mod.M_T;
  metrics["d"] = cfg.d;
  metrics["slope_chi"] = run.mod.slope_chi.slope;
  metrics["norm_drift"] = run.traj.norm_drift;
  metrics["energy_drift"] = run.traj.energy_drift;
  return metrics;
}

static json run_scattering(const ExperimentConfig& cfg, const std::string& dir) {
  PerturbedRun run = run_perturbed(cfg);
  Nonlinearity m = cfg.model();
  Branch br = cfg.branch_enum();
  write_rows_csv(dir + "/majorant.csv", "t,chi_winf,gamma_dot,omega_dot",
                 majorant_rows(run.mod));
  if (cfg.save_states) save_trajectory(dir + "/trajectory", run.w, run.traj);

  ScatteringState half =
      extract_scattering_state(run.w, m, br, run.traj, run.mod, 0.5 * cfg.T);
  ScatteringState full = extract_scattering_state(run.w, m, br, run.traj, run.mod, cfg.T);
  auto dump_state = [&](const ScatteringState& st, const std::string& tag) {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < st.t.size(); ++i) rows.push_back({st.t[i], st.r_norm[i]});
    write_rows_csv(dir + "/scatter_r_" + tag + ".csv", "t,r_norm", rows);
    write_field_csv(dir + "/phi_plus_" + tag + ".csv", run.w, st.phi_plus);
  };
  dump_state(half, "half");
  dump_state(full, "full");

  json metrics;
  metrics["slope_r"] = full.fit.slope;
  metrics["horizon_rel_change"] = horizon_change(half, full);
  metrics["omega_inf"] = full.omega_inf;
  metrics["gamma_inf"] = full.gamma_inf;
  metrics["M_T"] = run.mod.M_T;
  return metrics;
}

std::string run_experiment(const ExperimentConfig& cfg, const std::string& out_override) {
  std::string dir = out_override.empty() ? cfg.output_dir : out_override;
  std::filesystem::create_directories(dir);
  auto t0 = std::chrono::steady_clock::now();
  json metrics;
  if (cfg.experiment == "solitary_scan") metrics = run_solitary_scan(cfg, dir);
  else if (cfg.experiment == "sp_certify") metrics = run_sp_certify(cfg, dir);
  else if (cfg.experiment == "resolvent_check") metrics = run_resolvent_check(cfg, dir);
  else if (cfg.experiment == "linear_decay") metrics = run_linear_decay(cfg, dir);
  else if (cfg.experiment == "stability") metrics = run_stability(cfg, dir);
  else if (cfg.experiment == "scattering") metrics = run_scattering(cfg, dir);
  else throw ConfigError("unknown experiment: " + cfg.experiment);
  std::chrono::duration<double, std::milli> wall = std::chrono::steady_clock::now() - t0;
  write_manifest(dir, cfg, wall.count());
  return write_report(dir, cfg, metrics);
}

static json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
}

int compare_reports(const std::string& report_path, const std::string& baseline_path) {
  json rep = load_json_file(report_path);
  json base = load_json_file(baseline_path);
  for (const json* j : {&rep, &base}) {
    if (!j->contains("schema_version") || !j->contains("experiment") || !j->contains("metrics"))
      throw ConfigError("report lacks schema_version/experiment/metrics");
    if ((*j)["schema_version"] != 1) throw ConfigError("unsupported schema_version");
  }
  if (rep["experiment"] != base["experiment"])
    throw ConfigError("reports come from different experiments");

  int drifts = 0;
  for (auto& [key, bval] : base["metrics"].items()) {
    if (!rep["metrics"].contains(key)) throw ConfigError("missing metric: " + key);
    if (key.rfind("slope", 0) != 0) continue;
    double a = rep["metrics"][key].get<double>();
    double b = bval.get<double>();
    if (std::abs(a - b) > 0.05) {
      std::cout << "drift in " << key << ": " << a << " vs baseline " << b << "\n";
      ++drifts;
    }
  }
  for (auto& [key, rval] : rep["metrics"].items()) {
    (void)rval;
    if (!base["metrics"].contains(key)) throw ConfigError("missing metric in baseline: " + key);
  }
  if (drifts == 0) std::cout << "reports match\n";
  return drifts ? 1 : 0;
}

void set_threads_from_env() {
  const char* v = std::getenv("DNLS_THREADS");
  if (!v) return;
  int n = std::atoi(v);
  if (n > 0) Eigen::setNbThreads(n);
}

}  // namespace dnls
