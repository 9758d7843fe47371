#pragma once

#include <string>

#include <Eigen/Dense>

#include "dnls/lattice.hpp"
#include "dnls/model.hpp"
#include "dnls/solitary.hpp"

namespace dnls {

// Coupling data entering the resolvent of the linearization at a wave.
// Invariants: alpha - beta_c == a, 2 * beta_c == b.
struct ResolventContext {
  double omega = 0;
  double a = 0;       // a(C^2)
  double b = 0;       // 2 a'(C^2) C^2
  double alpha = 0;   // a + b/2
  double beta_c = 0;  // b/2
};

ResolventContext make_resolvent_context(const SolitaryWave& sw, const Nonlinearity& m);

enum class CutSide { left, right };

// Dispersion angle with cos(theta_pm) = (omega + 2 +- i lambda)/2, taken on
// the branch with Im(theta) > 0 away from the spectral cuts so that
// exp(i theta |x|) decays.
cplx theta_branch(double omega, cplx lambda, int pm);

// One-sided limit of theta_branch onto a spectral cut, approaching from
// Re(lambda) > 0 (right) or Re(lambda) < 0 (left).
cplx theta_on_cut(double omega, cplx lambda, int pm, CutSide side);

// Characteristic determinant whose zeros off the essential spectrum are the
// eigenvalues of the linearization.
cplx det_D(const ResolventContext& ctx, cplx lambda);
cplx det_D_on_cut(const ResolventContext& ctx, cplx lambda, CutSide side);

// Analytic continuation across the cuts: same expression with the sign of
// sin(theta_plus) flipped. Used only to locate spurious roots that do not
// live on the physical sheet.
cplx det_D_second_sheet(const ResolventContext& ctx, cplx lambda);

// Full windowed resolvent kernel of (G - lambda), block layout [u1; u2],
// dimension 2(2N+1) square.
Eigen::MatrixXcd resolvent_kernel(const ResolventContext& ctx, cplx lambda, const Window& w);

// Max over columns of || (G - lambda) R e_j - e_j ||_2, with the stencil of G
// applied directly to each column. Columns are restricted to sources in the
// inner half of the window: the identity there holds up to the kernel decay
// across N/2 sites, while edge sources only probe the Dirichlet truncation.
double kernel_residual(const ResolventContext& ctx, cplx lambda, int N);

struct MultiplicityResult {
  cplx c2;        // second Taylor coefficient of det_D at the origin
  int order = 0;  // 2 if c2 is nonzero, else 4
};

// Cauchy integrals of det_D on a small circle at the origin.
MultiplicityResult multiplicity_at_zero(const ResolventContext& ctx);

struct ScanOptions {
  double step = 0.01;              // grid spacing for the off-spectrum sweep
  double origin_exclusion = 0.1;   // radius skipped around lambda = 0
  double cut_tube = 0.05;          // half width skipped around each cut
  double certify_threshold = 1e-3;
  double dump_step = 0.05;         // spacing used for the CSV dump
  std::string grid_csv;            // when nonempty, write re,im,absD samples
};

struct RootReport {
  double min_abs_D = 0;
  double argmin_re = 0;
  double argmin_im = 0;
  bool sp_certified = false;
  int zero_count_at_origin = 0;  // winding number of det_D on a small circle
  cplx c2;
  int order = 0;
};

// Sweeps |lambda| <= max(10, 2(omega+4)) excluding the origin disc and thin
// tubes around the cuts, then checks the cuts via one-sided limits, counts
// the zero at the origin by the argument principle and classifies it.
RootReport scan_roots(const ResolventContext& ctx, const ScanOptions& opt = {});

}  // namespace dnls
