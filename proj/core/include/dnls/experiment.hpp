#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dnls/lattice.hpp"
#include "dnls/linearized.hpp"
#include "dnls/model.hpp"
#include "dnls/solitary.hpp"

namespace dnls {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment run, loaded from JSON. Required keys: experiment,
// nonlinearity.coeffs. Everything else has the defaults below; extra keys
// are rejected. Invariants: N >= 2T + 50, dt <= 0.05, beta >= 0, d >= 0.
struct ExperimentConfig {
  std::string experiment;          // solitary_scan | sp_certify | resolvent_check |
                                   // linear_decay | stability | scattering
  std::vector<double> coeffs;      // nonlinearity a(s) = sum coeffs[k] s^k
  std::string branch = "plus";
  double omega0 = 1.0;
  double theta0 = 0.0;
  double d = 0.0;
  double T = 10.0;
  double dt = 0.01;
  double beta = 2.0;
  int N = 200;
  unsigned long long seed = 0;
  std::string output_dir = "out";
  double snapshot_every = 1.0;
  bool save_states = false;
  // solitary_scan only
  double omega_lo = 0.2;
  double omega_hi = 3.0;
  int omega_count = 20;

  Nonlinearity model() const { return Nonlinearity{coeffs}; }
  Branch branch_enum() const;
};

// Parses, applies "dotted.key=value" overrides, validates.
ExperimentConfig parse_config_text(const std::string& json_text,
                                   const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides = {});
void validate(const ExperimentConfig& cfg);

// Two Gaussian bumps with seeded centers, widths and complex normal
// amplitudes, projected onto the continuous range of the linearization and
// rescaled so max(l2 norm, weighted l1 norm) equals d.
Field make_perturbation(const Window& w, const SymplecticProjection& p, double d, double beta,
                        unsigned long long seed);

// Runs the configured experiment, writes stage artifacts plus report.json and
// manifest.json into the output directory and returns the report path.
std::string run_experiment(const ExperimentConfig& cfg, const std::string& out_override = "");

// 0 when all slope metrics agree within 0.05, 1 otherwise. Throws
// ConfigError when either file lacks the expected structure.
int compare_reports(const std::string& report_path, const std::string& baseline_path);

// Reads DNLS_THREADS and caps the linear algebra thread pool; the variable
// is the only environment influence on a run.
void set_threads_from_env();

}  // namespace dnls
