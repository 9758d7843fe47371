#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dnls/fit.hpp"
#include "dnls/lattice.hpp"
#include "dnls/model.hpp"
#include "dnls/solitary.hpp"

namespace dnls {

// Generator of the flow linearized around a solitary wave, in the co-rotating
// frame and real-pair form v = [u1; u2] (u1 = Re, u2 = Im, each of length M):
//
//   v' = G v,   G = [ 0    D2 ]      D1 = -Lap + omega - delta_0 (a + b)
//               [ -D1   0  ]       D2 = -Lap + omega - delta_0 a
//
// with a = a(C^2) and b = 2 a'(C^2) C^2. The generalized null space is
// span{ j Phi, d_omega Phi } with G(j Phi) = 0 and G(d_omega Phi) = j Phi.
struct LinearizedOperator {
  double omega = 0.0;
  double a = 0.0;
  double b = 0.0;
  Window win;
  Eigen::MatrixXd matrix;  // dense 2M x 2M in the block layout above

  int M() const { return win.size(); }
  int dim() const { return 2 * win.size(); }

  Field apply(const Field& f) const;  // matrix-free stencil application
};

LinearizedOperator build_linearized(const SolitaryWave& sw, const Nonlinearity& m, int N);

// (j Phi, d_omega Phi) for the wave, phase included.
std::pair<Field, Field> null_vectors(const SolitaryWave& sw, const Nonlinearity& m,
                                     const Window& w);

// Rank-two symplectic projection onto the generalized null space:
// P0 f = [ <f, j dphi> j phi + <f, phi> dphi ] / <phi, dphi>.
struct SymplecticProjection {
  Field phi;
  Field dphi;
  Field jphi;
  Field jdphi;
  double denom = 0.0;

  Field project_discrete(const Field& f) const;    // P0 f
  Field project_continuous(const Field& f) const;  // (1 - P0) f
};

SymplecticProjection make_projection(const SolitaryWave& sw, const Nonlinearity& m,
                                     const Window& w);

// Dense 2M x 2M matrices of P0 and Pc = 1 - P0 in the block layout.
Eigen::MatrixXd dense_projector_discrete(const SymplecticProjection& p);
Eigen::MatrixXd dense_projector_continuous(const SymplecticProjection& p);

// e^{G t} chi0. Dense scaling-and-squaring exponential for M <= 801
// (N <= 400); matrix-free adaptive Runge-Kutta beyond that.
Field evolve_linear(const LinearizedOperator& L, const Field& chi0, double t,
                    double rk_tol = 1e-10);

struct DecayFit {
  std::vector<double> t;
  std::vector<double> norm;  // || Pc e^{Gt} Pc ||  (weighted operator norm)
  SlopeFit fit;              // log norm vs log t
};

// Weighted-operator-norm decay of the projected semigroup on a uniform
// ascending t-grid. Exponential checkpoints: one dense exp per grid spacing,
// then repeated multiplication. Guard: t_max <= (N - margin)/2, signal speed 2.
DecayFit measure_decay(const LinearizedOperator& L, const SymplecticProjection& p,
                       double beta, const std::vector<double>& t_grid);

// Pack/unpack between complex fields and real-pair vectors [u1; u2].
Eigen::VectorXd pack_field(const Field& f);
Field unpack_field(const Eigen::VectorXd& v);

}  // namespace dnls
