#include "dnls/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

Field accompanying_soliton(const Window& w, const Nonlinearity& m, Branch branch, double omega,
                           double theta) {
  SolitaryWave sw = make_wave(m, branch, omega, theta);
  return profile(sw, w);
}

std::vector<double> gamma_series(const MajorantReport& mod) {
  std::vector<double> gamma(mod.rows.size());
  double integral = 0.0;
  for (size_t k = 0; k < mod.rows.size(); ++k) {
    if (k > 0) {
      double h = mod.rows[k].t - mod.rows[k - 1].t;
      integral += 0.5 * h * (mod.rows[k].omega + mod.rows[k - 1].omega);
    }
    gamma[k] = mod.rows[k].theta - integral;
  }
  return gamma;
}

static size_t row_at_time(const std::vector<double>& times, double t) {
  for (size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - t) < 1e-6) return k;
  throw std::invalid_argument("no snapshot at the requested time");
}

ScatteringState extract_scattering_state(const Window& w, const Nonlinearity& m, Branch branch,
                                         const Trajectory& traj, const MajorantReport& mod,
                                         double T_ref) {
  if (traj.times.size() != mod.rows.size())
    throw std::invalid_argument("trajectory and tracked decomposition disagree");
  const int M = w.size();

  auto remainder_at = [&](size_t k) {
    Field s = accompanying_soliton(w, m, branch, mod.rows[k].omega, mod.rows[k].theta);
    Field z(M);
    for (int i = 0; i < M; ++i) z[i] = traj.states[k][i] - s[i];
    return z;
  };

  ScatteringState st;
  st.T_ref = T_ref;
  size_t k_ref = row_at_time(traj.times, T_ref);
  size_t k_half = row_at_time(traj.times, 0.5 * T_ref);
  st.phi_plus = free_propagate(remainder_at(k_ref), w, -T_ref);

  std::vector<double> fit_t, fit_r;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    double t = traj.times[k];
    if (t <= 0 || t > T_ref + 1e-9) continue;
    Field wphi = free_propagate(st.phi_plus, w, t);
    Field z = remainder_at(k);
    double acc = 0;
    for (int i = 0; i < M; ++i) acc += std::norm(z[i] - wphi[i]);
    double r = std::sqrt(acc);
    st.t.push_back(t);
    st.r_norm.push_back(r);
    if (t >= T_ref / 10.0 - 1e-9 && r > 1e-12) {
      fit_t.push_back(t);
      fit_r.push_back(r);
    }
  }
  if (fit_t.size() >= 2) st.fit = fit_loglog(fit_t, fit_r);

  std::vector<double> gamma = gamma_series(mod);
  st.omega_inf = 2.0 * mod.rows[k_ref].omega - mod.rows[k_half].omega;
  st.gamma_inf = 2.0 * gamma[k_ref] - gamma[k_half];
  return st;
}

double horizon_change(const ScatteringState& shorter, const ScatteringState& longer) {
  if (shorter.phi_plus.size() != longer.phi_plus.size())
    throw std::invalid_argument("profiles live on different windows");
  double diff = 0, ref = 0;
  for (size_t i = 0; i < longer.phi_plus.size(); ++i) {
    diff += std::norm(longer.phi_plus[i] - shorter.phi_plus[i]);
    ref += std::norm(longer.phi_plus[i]);
  }
  return std::sqrt(diff / ref);
}

}  // namespace dnls
