#pragma once

#include <vector>

#include "dnls/dynamics.hpp"
#include "dnls/fit.hpp"
#include "dnls/modulation.hpp"

namespace dnls {

// e^{i theta} Phi_omega on the window.
Field accompanying_soliton(const Window& w, const Nonlinearity& m, Branch branch, double omega,
                           double theta);

// Phase correction gamma(t) = theta(t) - int_0^t omega ds (trapezoid rule),
// one value per tracked row.
std::vector<double> gamma_series(const MajorantReport& mod);

struct ScatteringState {
  double T_ref = 0.0;
  Field phi_plus;              // free profile: W(-T_ref) applied to the remainder
  std::vector<double> t;       // snapshot times in (0, T_ref]
  std::vector<double> r_norm;  // || z(t) - W(t) phi_plus ||_2
  SlopeFit fit;                // log r vs log t over [T_ref/10, T_ref]
  double omega_inf = 0.0;      // Richardson in 1/t: 2 omega(T) - omega(T/2)
  double gamma_inf = 0.0;
};

// Builds the dispersive remainder z = psi - e^{i theta} Phi_omega from a
// trajectory plus its tracked decomposition, extracts the outgoing free
// profile at T_ref and measures convergence towards it.
ScatteringState extract_scattering_state(const Window& w, const Nonlinearity& m, Branch branch,
                                         const Trajectory& traj, const MajorantReport& mod,
                                         double T_ref);

// Relative change of the extracted profile between two reference horizons.
double horizon_change(const ScatteringState& shorter, const ScatteringState& longer);

}  // namespace dnls
