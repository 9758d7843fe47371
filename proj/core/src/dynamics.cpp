#include "dnls/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

std::vector<double> bessel_row(int nmax, double x) {
  if (nmax < 0 || x < 0) throw std::invalid_argument("bessel_row: need nmax >= 0, x >= 0");
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  int start = std::max(nmax + 20, static_cast<int>(x + 14.0 * std::cbrt(x) + 20.0));
  if (start % 2) ++start;
  double above = 0.0, cur = 1e-30, even_sum = 0.0;
  for (int k = start; k >= 1; --k) {
    double below = (2.0 * k / x) * cur - above;
    above = cur;
    cur = below;  // holds J_{k-1}, unnormalized
    int n = k - 1;
    if (n <= nmax) out[n] = cur;
    if (n >= 2 && n % 2 == 0) even_sum += cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      even_sum *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
  }
  double norm = cur + 2.0 * even_sum;  // J_0 + 2 sum J_{2k} = 1
  for (double& v : out) v /= norm;
  return out;
}

FreeKernel free_kernel(double t, double tail_tol) {
  // negative times via conjugation symmetry of the kernel
  if (t < 0) {
    FreeKernel k = free_kernel(-t, tail_tol);
    k.t = t;
    for (cplx& v : k.g) v = std::conj(v);
    return k;
  }
  const double x = 2.0 * t;
  int nmax = static_cast<int>(x + 12.0 * std::cbrt(x + 1.0) + 40.0);
  std::vector<double> J = bessel_row(nmax, x);
  int width = 0;
  for (int n = nmax; n >= 0; --n) {
    if (std::abs(J[n]) >= tail_tol) {
      width = n;
      break;
    }
  }
  FreeKernel k;
  k.t = t;
  k.width = width;
  k.g.resize(width + 1);
  const cplx phase = std::exp(cplx(0, -2.0 * t));
  const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (int n = 0; n <= width; ++n) k.g[n] = phase * ipow[n % 4] * J[n];
  return k;
}

Field convolve_same(const Field& f, const FreeKernel& k) {
  const int M = static_cast<int>(f.size());
  Field out(M);
  for (int x = 0; x < M; ++x) {
    cplx acc = k.g[0] * f[x];
    int dmax = std::min(k.width, std::max(x, M - 1 - x));
    for (int d = 1; d <= dmax; ++d) {
      cplx s = 0;
      if (x - d >= 0) s += f[x - d];
      if (x + d < M) s += f[x + d];
      acc += k.g[d] * s;
    }
    out[x] = acc;
  }
  return out;
}

Field free_propagate(const Field& f, const Window& w, double t) {
  double r = support_radius(w, f);
  if (2.0 * std::abs(t) + r > w.N - 16)
    throw std::runtime_error("free_propagate: light cone leaves the window");
  return convolve_same(f, free_kernel(t));
}

Field fourier_free_propagate(const Field& f, double t) {
  const int M = static_cast<int>(f.size());
  const cplx i(0, 1);
  std::vector<cplx> fhat(M, 0.0);
  for (int q = 0; q < M; ++q) {
    double kq = 2.0 * M_PI * q / M;
    cplx acc = 0;
    for (int x = 0; x < M; ++x) acc += f[x] * std::exp(-i * kq * double(x));
    fhat[q] = acc * std::exp(-i * (2.0 - 2.0 * std::cos(kq)) * t);
  }
  Field out(M);
  for (int x = 0; x < M; ++x) {
    cplx acc = 0;
    for (int q = 0; q < M; ++q) acc += fhat[q] * std::exp(i * (2.0 * M_PI * q / M) * double(x));
    out[x] = acc / double(M);
  }
  return out;
}

cplx point_phase_flow(cplx z, double dt, const Nonlinearity& m) {
  return z * std::exp(cplx(0, m.a(std::norm(z)) * dt));
}

void step_strang(Field& f, const Window& w, const FreeKernel& k_full, double dt,
                 const Nonlinearity& m) {
  const int i0 = w.index(0);
  f[i0] = point_phase_flow(f[i0], 0.5 * dt, m);
  f = convolve_same(f, k_full);
  f[i0] = point_phase_flow(f[i0], 0.5 * dt, m);
}

static long checked_multiple(double big, double dt, const char* what) {
  long n = std::lround(big / dt);
  if (n < 1 || std::abs(n * dt - big) > 1e-9 * std::max(1.0, big))
    throw std::invalid_argument(std::string(what) + " must be a positive multiple of dt");
  return n;
}

Trajectory evolve(const Window& w, const Nonlinearity& m, const Field& psi0, double T, double dt,
                  double snapshot_every) {
  if (static_cast<int>(psi0.size()) != w.size())
    throw std::invalid_argument("evolve: field does not match window");
  double r0 = support_radius(w, psi0);
  if (2.0 * T + r0 > w.N - 16) throw std::runtime_error("evolve: horizon exceeds the window");

  const long nsteps = checked_multiple(T, dt, "T");
  long stride = (snapshot_every > 0) ? checked_multiple(snapshot_every, dt, "snapshot_every")
                                     : nsteps;

  const FreeKernel k = free_kernel(dt);
  const double n0 = norm_l2(psi0);
  const double h0 = hamiltonian(w, m, psi0);
  const double hscale = std::max(1.0, std::abs(h0));

  Trajectory traj;
  Field f = psi0;
  auto snap = [&](double t) {
    require_finite(f, "evolve");
    traj.times.push_back(t);
    traj.states.push_back(f);
    traj.norm_drift = std::max(traj.norm_drift, std::abs(norm_l2(f) - n0) / n0);
    traj.energy_drift =
        std::max(traj.energy_drift, std::abs(hamiltonian(w, m, f) - h0) / hscale);
  };
  snap(0.0);
  for (long s = 1; s <= nsteps; ++s) {
    step_strang(f, w, k, dt, m);
    if (s % stride == 0 || s == nsteps) snap(s * dt);
  }
  return traj;
}

}  // namespace dnls
