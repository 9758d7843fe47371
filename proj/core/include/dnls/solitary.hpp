#pragma once

#include <vector>

#include "dnls/lattice.hpp"
#include "dnls/model.hpp"

namespace dnls {

// Two families of exponential bound states: the in-phase family with
// omega in (0, inf) and the staggered family with omega in (-inf, -4).
// No nonzero wave exists for omega in [-4, 0].
enum class Branch { plus, minus };

struct SolitaryWave {
  Branch branch = Branch::plus;
  double omega = 0.0;
  double k = 0.0;      // decay rate, cosh k = |omega+2|/2
  double C = 0.0;      // amplitude at the defect site, C > 0
  double theta = 0.0;  // global phase
};

// Positive solution of cosh k = |omega+2|/2. Domain error when omega lies in
// [-4, 0] or does not match the branch.
double k_of_omega(double omega, Branch branch);

// All positive amplitudes C with a(C^2) = 2 sinh k (plus branch) or
// a(C^2) = -2 sinh k (minus branch), located by a sign-change scan over a
// geometric grid C in [1e-6, 1e3] and refined by bisection plus one Newton
// polish. Empty result means no wave at this omega.
std::vector<double> amplitude_of_omega(double omega, Branch branch, const Nonlinearity& m);

// Convenience: first (smallest-C) wave at this omega; throws if none exists.
SolitaryWave make_wave(const Nonlinearity& m, Branch branch, double omega, double theta = 0.0);

// C e^{i theta - k|x|}, times (-1)^{|x|} on the minus branch.
Field profile(const SolitaryWave& sw, const Window& w);

// Analytic omega-derivative of the profile at fixed theta:
// (dC/domega - C |x| dk/domega) e^{-k|x|} with dk/domega = sign(omega+2)/(2 sinh k)
// and dC/domega = cosh k / (2 C a'(C^2) sinh k). Throws when a'(C^2) = 0.
Field d_omega_profile(const SolitaryWave& sw, const Window& w, const Nonlinearity& m);

// l2 norm of -omega psi + (Delta psi) + delta_0 F(psi(0)) over the window.
double nep_residual(const SolitaryWave& sw, const Window& w, const Nonlinearity& m);

// Analytic d/domega of sum_x |psi_omega(x)|^2 = d/domega [C^2 coth k].
double d_omega_norm_sq(const SolitaryWave& sw, const Nonlinearity& m);

// Window half-width giving e^{-k N} below tail_tol (at least 40 sites).
int window_for_wave(const SolitaryWave& sw, double tail_tol = 1e-14);

struct AdmissibilityReport {
  double omega = 0.0;
  Branch branch = Branch::plus;
  double C = 0.0;
  double k = 0.0;
  double a = 0.0;        // a(C^2)
  double a_prime = 0.0;  // a'(C^2)
  bool aprime_nonzero = false;
  bool sp_cond1 = false;   // a' != (4a + a^3) / (2 C^2)
  bool intdif_ok = false;  // a' != (4a + a^3) / (4 C^2)
  double dnorm_domega = 0.0;
};

AdmissibilityReport admissibility_report(const SolitaryWave& sw, const Nonlinearity& m);

}  // namespace dnls
