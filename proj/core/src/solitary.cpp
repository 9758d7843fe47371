#include "dnls/solitary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dnls {

double k_of_omega(double omega, Branch branch) {
  if (omega >= -4.0 && omega <= 0.0)
    throw std::domain_error("only the zero wave exists for omega in [-4, 0]");
  if (branch == Branch::plus && omega <= 0.0)
    throw std::domain_error("plus branch requires omega > 0");
  if (branch == Branch::minus && omega >= -4.0)
    throw std::domain_error("minus branch requires omega < -4");
  return std::acosh(std::abs(omega + 2.0) / 2.0);
}

std::vector<double> amplitude_of_omega(double omega, Branch branch, const Nonlinearity& m) {
  double k = k_of_omega(omega, branch);
  double target = (branch == Branch::plus ? 2.0 : -2.0) * std::sinh(k);
  auto h = [&](double C) { return m.a(C * C) - target; };

  const double c_lo = 1e-6, c_hi = 1e3;
  const int n_grid = 4096;
  const double ratio = std::pow(c_hi / c_lo, 1.0 / n_grid);

  std::vector<double> roots;
  double c_prev = c_lo, h_prev = h(c_prev);
  for (int i = 1; i <= n_grid; ++i) {
    double c = c_lo * std::pow(ratio, i);
    double hc = h(c);
    if (h_prev == 0.0) roots.push_back(c_prev);
    if (h_prev * hc < 0.0) {
      double lo = c_prev, hi = c;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (h(lo) * h(mid) <= 0.0 ? hi : lo) = mid;
      }
      double c_root = 0.5 * (lo + hi);
      double slope = 2.0 * c_root * m.da(c_root * c_root);
      if (slope != 0.0) c_root -= h(c_root) / slope;
      roots.push_back(c_root);
    }
    c_prev = c;
    h_prev = hc;
  }
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-10 * (a + b); }),
              roots.end());
  return roots;
}

SolitaryWave make_wave(const Nonlinearity& m, Branch branch, double omega, double theta) {
  auto roots = amplitude_of_omega(omega, branch, m);
  if (roots.empty()) throw std::domain_error("no solitary wave at this omega for this model");
  SolitaryWave sw;
  sw.branch = branch;
  sw.omega = omega;
  sw.k = k_of_omega(omega, branch);
  sw.C = roots.front();
  sw.theta = theta;
  return sw;
}

static double stagger(const SolitaryWave& sw, int x) {
  return (sw.branch == Branch::minus && (std::abs(x) % 2)) ? -1.0 : 1.0;
}

Field profile(const SolitaryWave& sw, const Window& w) {
  Field f(w.size());
  cplx phase = std::polar(1.0, sw.theta);
  for (int i = 0; i < w.size(); ++i) {
    int x = w.site(i);
    f[i] = phase * (sw.C * stagger(sw, x) * std::exp(-sw.k * std::abs(x)));
  }
  return f;
}

Field d_omega_profile(const SolitaryWave& sw, const Window& w, const Nonlinearity& m) {
  double ap = m.da(sw.C * sw.C);
  if (ap == 0.0) throw std::domain_error("d_omega_profile requires a'(C^2) != 0");
  double sh = std::sinh(sw.k);
  double dk = ((sw.omega + 2.0) > 0 ? 1.0 : -1.0) / (2.0 * sh);
  double dC = std::cosh(sw.k) / (2.0 * sw.C * ap * sh);
  Field f(w.size());
  cplx phase = std::polar(1.0, sw.theta);
  for (int i = 0; i < w.size(); ++i) {
    int x = w.site(i);
    double r = (dC - sw.C * std::abs(x) * dk) * std::exp(-sw.k * std::abs(x));
    f[i] = phase * (r * stagger(sw, x));
  }
  return f;
}

double nep_residual(const SolitaryWave& sw, const Window& w, const Nonlinearity& m) {
  Field psi = profile(sw, w);
  Field lap = laplacian(w, psi);
  Field res(w.size());
  for (int i = 0; i < w.size(); ++i) res[i] = -sw.omega * psi[i] + lap[i];
  res[w.index(0)] += m.force(psi[w.index(0)]);
  return norm_l2(res);
}

double d_omega_norm_sq(const SolitaryWave& sw, const Nonlinearity& m) {
  double ap = m.da(sw.C * sw.C);
  if (ap == 0.0) throw std::domain_error("requires a'(C^2) != 0");
  double sh = std::sinh(sw.k), ch = std::cosh(sw.k);
  double dk = ((sw.omega + 2.0) > 0 ? 1.0 : -1.0) / (2.0 * sh);
  double dC = ch / (2.0 * sw.C * ap * sh);
  double coth = ch / sh;
  return 2.0 * sw.C * dC * coth - sw.C * sw.C * dk / (sh * sh);
}

int window_for_wave(const SolitaryWave& sw, double tail_tol) {
  int n = static_cast<int>(std::ceil(-std::log(tail_tol) / sw.k)) + 1;
  return std::max(n, 40);
}

AdmissibilityReport admissibility_report(const SolitaryWave& sw, const Nonlinearity& m) {
  AdmissibilityReport r;
  r.omega = sw.omega;
  r.branch = sw.branch;
  r.C = sw.C;
  r.k = sw.k;
  double C2 = sw.C * sw.C;
  r.a = m.a(C2);
  r.a_prime = m.da(C2);
  double crit_sp = (4.0 * r.a + r.a * r.a * r.a) / (2.0 * C2);
  double crit_intdif = crit_sp / 2.0;
  auto differs = [](double u, double v) { return std::abs(u - v) > 1e-9 * std::max(1.0, std::abs(v)); };
  r.aprime_nonzero = std::abs(r.a_prime) > 1e-12;
  r.sp_cond1 = differs(r.a_prime, crit_sp);
  r.intdif_ok = differs(r.a_prime, crit_intdif);
  r.dnorm_domega = r.aprime_nonzero ? d_omega_norm_sq(sw, m) : 0.0;
  return r;
}

}  // namespace dnls
