#pragma once

#include <array>
#include <vector>

#include "dnls/lattice.hpp"

namespace dnls {

// Point nonlinearity F(z) = a(|z|^2) z at the single defect site x = 0,
// with a(s) a real polynomial. The pair potential u is derived from a by
// u(s) = -(1/2) * integral_0^s a(sigma) dsigma, so u(0) = 0.
struct Nonlinearity {
  std::vector<double> coeffs;  // a(s) = sum coeffs[k] s^k

  double a(double s) const;
  double da(double s) const;   // a'(s)
  double u(double s) const;

  cplx force(cplx z) const;    // a(|z|^2) z

  // Real 2x2 Jacobian of the force as a map on (Re z, Im z):
  // a(|z|^2) I + 2 a'(|z|^2) v v^T with v = (Re z, Im z).
  std::array<std::array<double, 2>, 2> force_jacobian(cplx z) const;

  static Nonlinearity cubic(double kappa = 1.0);          // a(s) = kappa s
  static Nonlinearity affine(double c0, double c1);       // a(s) = c0 + c1 s
};

// H(f) = 1/2 sum |f(x+1) - f(x)|^2 + u(|f(0)|^2); the gradient sum runs over
// the window edges including the two boundary "ghost" links to zero.
double hamiltonian(const Window& w, const Nonlinearity& m, const Field& f);

}  // namespace dnls
