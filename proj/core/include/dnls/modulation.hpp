#pragma once

#include <vector>

#include "dnls/dynamics.hpp"
#include "dnls/fit.hpp"
#include "dnls/lattice.hpp"
#include "dnls/model.hpp"
#include "dnls/solitary.hpp"

namespace dnls {

// Splitting of a state into wave + transversal remainder,
// psi = e^{i theta} (Phi_omega + chi) with chi symplectically orthogonal to
// the generalized null space: <chi, Phi> = 0 and <chi, j d_omega Phi> = 0.
struct Decomposition {
  double omega = 0.0;
  double theta = 0.0;
  Field chi;
  int iterations = 0;
  double residual = 0.0;  // hypot of the two constraint values
};

struct DecomposeOptions {
  int max_iter = 50;
  double tol = 1e-10;
};

// Newton iteration on the two orthogonality constraints. Throws when the
// iteration leaves the branch domain or fails to converge.
Decomposition decompose(const Window& w, const Nonlinearity& m, Branch branch, const Field& psi,
                        double omega_guess, double theta_guess, const DecomposeOptions& opt = {});

// Quadratic-and-higher part of the defect force around the wave, rotated by
// j: Q = i delta_0 [ F(C + chi(0)) - a C - ((a+b) Re chi(0) + i a Im chi(0)) ].
Field nonlinear_remainder(const Window& w, const Nonlinearity& m, const SolitaryWave& sw,
                          const Field& chi);

struct ModulationRates {
  double omega_dot = 0.0;
  double gamma_dot = 0.0;
};

// Instantaneous parameter rates from differentiating the two constraints
// along the flow; gamma is the phase correction theta(t) - int omega dt.
ModulationRates modulation_rhs(const Window& w, const Nonlinearity& m, const SolitaryWave& sw,
                               const Field& chi);

struct MajorantRow {
  double t = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double chi_winf = 0.0;  // || chi ||_{l^inf, -beta}
  double gamma_dot = 0.0;
  double omega_dot = 0.0;
};

struct MajorantReport {
  std::vector<MajorantRow> rows;
  double M_T = 0.0;   // sup of (1+t)^{3/2} chi_winf + (1+t)^3 (|gamma_dot|+|omega_dot|)
  SlopeFit slope_chi; // log (1+t)^{3/2} chi_winf vs log (1+t), on t >= slope_t_min
};

// Tracks the decomposition along a trajectory. Each snapshot is warm started
// from the previous one with theta advanced by omega * dt; without this the
// Newton phase unwrapping is ambiguous.
MajorantReport majorant(const Window& w, const Nonlinearity& m, Branch branch,
                        const Trajectory& traj, double omega_guess, double theta_guess,
                        double beta, double slope_t_min = 10.0);

}  // namespace dnls
