#include "dnls/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

static bool omega_in_branch(double omega, Branch br) {
  return br == Branch::plus ? omega > 0.0 : omega < -4.0;
}

// Central difference of the analytic first derivative.
static Field d2_omega_profile(const Nonlinearity& m, Branch br, double omega, const Window& w) {
  const double h = 1e-5;
  SolitaryWave up = make_wave(m, br, omega + h);
  SolitaryWave dn = make_wave(m, br, omega - h);
  Field fu = d_omega_profile(up, w, m), fd = d_omega_profile(dn, w, m);
  Field out(w.size());
  for (int i = 0; i < w.size(); ++i) out[i] = (fu[i] - fd[i]) / (2.0 * h);
  return out;
}

Decomposition decompose(const Window& w, const Nonlinearity& m, Branch branch, const Field& psi,
                        double omega_guess, double theta_guess, const DecomposeOptions& opt) {
  if (!omega_in_branch(omega_guess, branch))
    throw std::invalid_argument("decompose: omega guess outside branch domain");
  double omega = omega_guess, theta = theta_guess;
  const int M = w.size();

  for (int iter = 1; iter <= opt.max_iter; ++iter) {
    SolitaryWave sw = make_wave(m, branch, omega);
    Field phi = profile(sw, w);
    Field dphi = d_omega_profile(sw, w, m);
    cplx rot = std::exp(cplx(0, -theta));
    Field chi(M);
    for (int i = 0; i < M; ++i) chi[i] = rot * psi[i] - phi[i];

    double g1 = inner(chi, phi);
    double g2 = inner(chi, apply_j(dphi));
    double res = std::hypot(g1, g2);
    if (res < opt.tol) {
      Decomposition d;
      d.omega = omega;
      d.theta = theta;
      d.chi = std::move(chi);
      d.iterations = iter;
      d.residual = res;
      return d;
    }

    Field d2phi = d2_omega_profile(m, branch, omega, w);
    Field jchi = apply_j(chi);
    double J11 = -inner(dphi, phi) + inner(chi, dphi);
    double J12 = -inner(jchi, phi);
    double J21 = inner(chi, apply_j(d2phi));
    double J22 = -(inner(chi, dphi) + inner(phi, dphi));
    double det = J11 * J22 - J12 * J21;
    if (std::abs(det) < 1e-300) throw std::runtime_error("decompose: singular Newton system");
    double domega = -(J22 * g1 - J12 * g2) / det;
    double dtheta = -(-J21 * g1 + J11 * g2) / det;

    // keep omega inside the branch domain by damping
    int halvings = 0;
    while (!omega_in_branch(omega + domega, branch) && halvings++ < 60) domega *= 0.5;
    if (!omega_in_branch(omega + domega, branch))
      throw std::runtime_error("decompose: iteration left the branch domain");
    omega += domega;
    theta += dtheta;
  }
  throw std::runtime_error("decompose: Newton did not converge");
}

Field nonlinear_remainder(const Window& w, const Nonlinearity& m, const SolitaryWave& sw,
                          const Field& chi) {
  const double C = sw.C, s = C * C;
  const double a = m.a(s), b = 2.0 * m.da(s) * s;
  cplx chi0 = chi[w.index(0)];
  cplx lin(0, 0);
  lin = cplx((a + b) * chi0.real(), a * chi0.imag());
  Field Q = zero_field(w);
  Q[w.index(0)] = cplx(0, 1) * (m.force(C + chi0) - a * C - lin);
  return Q;
}

ModulationRates modulation_rhs(const Window& w, const Nonlinearity& m, const SolitaryWave& sw,
                               const Field& chi) {
  Field phi = profile(sw, w);
  Field dphi = d_omega_profile(sw, w, m);
  Field d2phi = d2_omega_profile(m, sw.branch, sw.omega, w);
  Field Q = nonlinear_remainder(w, m, sw, chi);

  double n = inner(phi, dphi);
  double A11 = n - inner(chi, dphi);
  double A12 = inner(apply_j(chi), phi);
  double A21 = -inner(chi, apply_j(d2phi));
  double A22 = n + inner(chi, dphi);
  double r1 = inner(Q, phi);
  double r2 = inner(Q, apply_j(dphi));

  double det = A11 * A22 - A12 * A21;
  if (std::abs(det) < 1e-300) throw std::runtime_error("modulation_rhs: singular system");
  ModulationRates rates;
  rates.omega_dot = (A22 * r1 - A12 * r2) / det;
  rates.gamma_dot = (-A21 * r1 + A11 * r2) / det;
  return rates;
}

MajorantReport majorant(const Window& w, const Nonlinearity& m, Branch branch,
                        const Trajectory& traj, double omega_guess, double theta_guess,
                        double beta, double slope_t_min) {
  if (traj.times.empty()) throw std::invalid_argument("majorant: empty trajectory");
  MajorantReport rep;
  WeightSpec wspec{WeightSpec::P::inf, -beta};
  double omega_prev = omega_guess, theta_prev = theta_guess, t_prev = traj.times.front();

  for (size_t k = 0; k < traj.times.size(); ++k) {
    double t = traj.times[k];
    double theta0 = theta_prev + omega_prev * (t - t_prev);
    Decomposition dec = decompose(w, m, branch, traj.states[k], omega_prev, theta0);
    SolitaryWave sw = make_wave(m, branch, dec.omega);
    ModulationRates rates = modulation_rhs(w, m, sw, dec.chi);

    MajorantRow row;
    row.t = t;
    row.omega = dec.omega;
    row.theta = dec.theta;
    row.chi_winf = weighted_norm(w, dec.chi, wspec);
    row.gamma_dot = rates.gamma_dot;
    row.omega_dot = rates.omega_dot;
    rep.rows.push_back(row);

    double wt = std::pow(1.0 + t, 1.5) * row.chi_winf +
                std::pow(1.0 + t, 3.0) * (std::abs(row.gamma_dot) + std::abs(row.omega_dot));
    rep.M_T = std::max(rep.M_T, wt);

    omega_prev = dec.omega;
    theta_prev = dec.theta;
    t_prev = t;
  }

  std::vector<double> xs, ys;
  for (const MajorantRow& r : rep.rows) {
    if (r.t < slope_t_min || r.chi_winf <= 0) continue;
    xs.push_back(1.0 + r.t);
    ys.push_back(std::pow(1.0 + r.t, 1.5) * r.chi_winf);
  }
  if (xs.size() >= 2) rep.slope_chi = fit_loglog(xs, ys);
  return rep;
}

}  // namespace dnls
