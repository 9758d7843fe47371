#pragma once

#include <vector>

#include "dnls/lattice.hpp"
#include "dnls/model.hpp"

namespace dnls {

// J_0(x) .. J_nmax(x) by downward recurrence, x >= 0.
std::vector<double> bessel_row(int nmax, double x);

// Convolution kernel of the free flow over time t: entries for hop
// distances 0..width, symmetric in the hop sign.
struct FreeKernel {
  double t = 0;
  int width = 0;
  std::vector<cplx> g;  // g[d] multiplies f[x -+ d]
};

FreeKernel free_kernel(double t, double tail_tol = 1e-18);

// out[x] = sum_d g[d] f[x - d], zero padded outside the window.
Field convolve_same(const Field& f, const FreeKernel& k);

// Free flow with a light-cone guard: needs 2|t| + support radius <= N - 16.
Field free_propagate(const Field& f, const Window& w, double t);

// Periodic spectral version of the free flow, for cross checks only.
Field fourier_free_propagate(const Field& f, double t);

// Exact flow of the point nonlinearity over dt; |z| is conserved.
cplx point_phase_flow(cplx z, double dt, const Nonlinearity& m);

// One splitting step: half phase kick, full free flow, half phase kick.
void step_strang(Field& f, const Window& w, const FreeKernel& k_full, double dt,
                 const Nonlinearity& m);

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  double norm_drift = 0;    // max relative l2 deviation over snapshots
  double energy_drift = 0;  // max Hamiltonian deviation, relative to max(1,|H0|)
};

// Splitting integrator with snapshots every snapshot_every time units
// (non-positive means initial and final state only). T and snapshot_every
// must be integer multiples of dt. Aborts on non-finite data.
Trajectory evolve(const Window& w, const Nonlinearity& m, const Field& psi0, double T, double dt,
                  double snapshot_every);

}  // namespace dnls
