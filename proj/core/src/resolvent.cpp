#include "dnls/resolvent.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "dnls/linearized.hpp"

namespace dnls {

ResolventContext make_resolvent_context(const SolitaryWave& sw, const Nonlinearity& m) {
  ResolventContext ctx;
  ctx.omega = sw.omega;
  double C2 = sw.C * sw.C;
  ctx.a = m.a(C2);
  ctx.b = 2.0 * m.da(C2) * C2;
  ctx.alpha = ctx.a + 0.5 * ctx.b;
  ctx.beta_c = 0.5 * ctx.b;
  return ctx;
}

cplx theta_branch(double omega, cplx lambda, int pm) {
  cplx arg = (omega + 2.0 + double(pm) * cplx(0, 1) * lambda) / 2.0;
  cplx theta = std::acos(arg);
  if (theta.imag() < 0) theta = -theta;
  return theta;
}

cplx theta_on_cut(double omega, cplx lambda, int pm, CutSide side) {
  const double eps = 1e-8;
  double dir = (side == CutSide::right) ? 1.0 : -1.0;
  cplx t1 = theta_branch(omega, lambda + cplx(dir * eps, 0), pm);
  cplx t2 = theta_branch(omega, lambda + cplx(dir * eps / 2, 0), pm);
  return 2.0 * t2 - t1;  // removes the O(eps) term of the side approach
}

static cplx det_from_s(const ResolventContext& ctx, cplx sp, cplx sm) {
  cplx i(0, 1);
  return ctx.alpha * ctx.alpha + 2.0 * i * ctx.alpha * (sp + sm) - 4.0 * sp * sm -
         ctx.beta_c * ctx.beta_c;
}

cplx det_D(const ResolventContext& ctx, cplx lambda) {
  cplx sp = std::sin(theta_branch(ctx.omega, lambda, +1));
  cplx sm = std::sin(theta_branch(ctx.omega, lambda, -1));
  return det_from_s(ctx, sp, sm);
}

cplx det_D_on_cut(const ResolventContext& ctx, cplx lambda, CutSide side) {
  cplx sp = std::sin(theta_on_cut(ctx.omega, lambda, +1, side));
  cplx sm = std::sin(theta_on_cut(ctx.omega, lambda, -1, side));
  return det_from_s(ctx, sp, sm);
}

cplx det_D_second_sheet(const ResolventContext& ctx, cplx lambda) {
  cplx sp = -std::sin(theta_branch(ctx.omega, lambda, +1));
  cplx sm = std::sin(theta_branch(ctx.omega, lambda, -1));
  return det_from_s(ctx, sp, sm);
}

Eigen::MatrixXcd resolvent_kernel(const ResolventContext& ctx, cplx lambda, const Window& w) {
  const int N = w.N, M = w.size();
  const cplx i(0, 1);
  cplx tp = theta_branch(ctx.omega, lambda, +1);
  cplx tm = theta_branch(ctx.omega, lambda, -1);
  cplx sp = std::sin(tp), sm = std::sin(tm);
  cplx D = det_from_s(ctx, sp, sm);

  // exp(i theta d) for every hop distance appearing in the kernel
  std::vector<cplx> ep(2 * N + 1), em(2 * N + 1);
  for (int d = 0; d <= 2 * N; ++d) {
    ep[d] = std::exp(i * tp * double(d));
    em[d] = std::exp(i * tm * double(d));
  }

  const cplx m2_11 = i * ctx.alpha - 2.0 * sm, m2_12 = i * ctx.beta_c;
  const cplx m2_21 = -i * ctx.beta_c, m2_22 = -i * ctx.alpha + 2.0 * sp;

  Eigen::MatrixXcd R(2 * M, 2 * M);
  for (int xi = 0; xi < M; ++xi) {
    int ax = std::abs(w.site(xi));
    for (int yi = 0; yi < M; ++yi) {
      int ay = std::abs(w.site(yi));
      int dxy = std::abs(w.site(xi) - w.site(yi));

      cplx gp = (ep[dxy] - ep[ax + ay]) / (4.0 * sp);
      cplx gm = (em[dxy] - em[ax + ay]) / (4.0 * sm);
      cplx G11 = gp - gm;
      cplx G12 = -i * (gp + gm);

      // M1(x) * M2 * M3(y) / (2 D), with M1, M3 the plane-wave frames
      cplx r1p = ep[ax] * m2_11 + em[ax] * m2_21;  // row 1 of M1 M2
      cplx r1m = ep[ax] * m2_12 + em[ax] * m2_22;
      cplx r2p = i * (ep[ax] * m2_11 - em[ax] * m2_21);
      cplx r2m = i * (ep[ax] * m2_12 - em[ax] * m2_22);

      cplx c1 = ep[ay], c2 = -i * ep[ay];  // columns of M3(y)
      cplx c3 = em[ay], c4 = i * em[ay];

      cplx P11 = (r1p * c1 + r1m * c3) / (2.0 * D);
      cplx P12 = (r1p * c2 + r1m * c4) / (2.0 * D);
      cplx P21 = (r2p * c1 + r2m * c3) / (2.0 * D);
      cplx P22 = (r2p * c2 + r2m * c4) / (2.0 * D);

      R(xi, yi) = G11 + P11;
      R(xi, M + yi) = G12 + P12;
      R(M + xi, yi) = -G12 + P21;
      R(M + xi, M + yi) = G11 + P22;
    }
  }
  return R;
}

double kernel_residual(const ResolventContext& ctx, cplx lambda, int N) {
  Window w(N);
  const int M = w.size(), i0 = w.index(0);
  Eigen::MatrixXcd R = resolvent_kernel(ctx, lambda, w);
  double worst = 0.0;
  for (int j = 0; j < 2 * M; ++j) {
    // Sources in the outer half of the window see the Dirichlet edge at their
    // own scale; restricting them keeps this a check of the formula.
    if (2 * std::abs(w.site(j < M ? j : j - M)) > N) continue;
    double acc = 0.0;
    for (int i = 0; i < M; ++i) {
      cplx l1 = (i > 0) ? R(i - 1, j) : cplx(0), r1 = (i + 1 < M) ? R(i + 1, j) : cplx(0);
      cplx l2 = (i > 0) ? R(M + i - 1, j) : cplx(0),
           r2 = (i + 1 < M) ? R(M + i + 1, j) : cplx(0);
      cplx d2v2 = (2.0 + ctx.omega) * R(M + i, j) - l2 - r2;
      cplx d1v1 = (2.0 + ctx.omega) * R(i, j) - l1 - r1;
      if (i == i0) {
        d2v2 -= ctx.a * R(M + i0, j);
        d1v1 -= (ctx.a + ctx.b) * R(i0, j);
      }
      cplx row1 = d2v2 - lambda * R(i, j);
      cplx row2 = -d1v1 - lambda * R(M + i, j);
      if (i == j) row1 -= 1.0;
      if (M + i == j) row2 -= 1.0;
      acc += std::norm(row1) + std::norm(row2);
    }
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

MultiplicityResult multiplicity_at_zero(const ResolventContext& ctx) {
  const int nodes = 64;
  const double r = std::min(1e-2, 0.5 * std::abs(ctx.omega));
  std::vector<cplx> vals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double phi = 2.0 * M_PI * j / nodes;
    vals[j] = det_D(ctx, std::polar(r, phi));
  }
  auto coeff = [&](int n) {
    cplx acc = 0;
    for (int j = 0; j < nodes; ++j) {
      double phi = 2.0 * M_PI * j / nodes;
      acc += vals[j] * std::polar(1.0, -phi * n);
    }
    return acc / double(nodes) / std::pow(r, n);
  };
  MultiplicityResult res;
  res.c2 = coeff(2);
  res.order = (std::abs(res.c2) > 1e-6) ? 2 : 4;
  return res;
}

static int winding_at_origin(const ResolventContext& ctx) {
  const int samples = 4096;
  const double r = std::min(0.05, 0.5 * std::abs(ctx.omega));
  double total = 0.0;
  cplx prev = det_D(ctx, cplx(r, 0));
  for (int j = 1; j <= samples; ++j) {
    double phi = 2.0 * M_PI * j / samples;
    cplx cur = det_D(ctx, std::polar(r, phi));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

RootReport scan_roots(const ResolventContext& ctx, const ScanOptions& opt) {
  const double L = std::max(10.0, 2.0 * (ctx.omega + 4.0));
  RootReport rep;
  rep.min_abs_D = std::numeric_limits<double>::infinity();

  auto consider = [&](cplx lambda, cplx val) {
    double a = std::abs(val);
    if (a < rep.min_abs_D) {
      rep.min_abs_D = a;
      rep.argmin_re = lambda.real();
      rep.argmin_im = lambda.imag();
    }
  };

  const int n = static_cast<int>(std::floor(L / opt.step));
  for (int p = -n; p <= n; ++p) {
    double re = p * opt.step;
    for (int q = -n; q <= n; ++q) {
      double im = q * opt.step;
      double r2 = re * re + im * im;
      if (r2 > L * L) continue;
      if (r2 < opt.origin_exclusion * opt.origin_exclusion) continue;
      bool in_tube = std::abs(re) <= opt.cut_tube &&
                     std::abs(im) >= ctx.omega - opt.cut_tube &&
                     std::abs(im) <= ctx.omega + 4.0 + opt.cut_tube;
      if (in_tube) continue;
      cplx lambda(re, im);
      consider(lambda, det_D(ctx, lambda));
    }
  }

  // the cuts themselves, via one-sided limits
  const int nc = static_cast<int>(std::floor(4.0 / opt.step));
  for (int j = 0; j <= nc; ++j) {
    double nu = ctx.omega + 4.0 * j / nc;
    for (double sgn : {1.0, -1.0}) {
      cplx lambda(0.0, sgn * nu);
      consider(lambda, det_D_on_cut(ctx, lambda, CutSide::right));
      consider(lambda, det_D_on_cut(ctx, lambda, CutSide::left));
    }
  }

  rep.sp_certified = rep.min_abs_D > opt.certify_threshold;
  rep.zero_count_at_origin = winding_at_origin(ctx);
  MultiplicityResult mult = multiplicity_at_zero(ctx);
  rep.c2 = mult.c2;
  rep.order = mult.order;

  if (!opt.grid_csv.empty()) {
    std::FILE* f = std::fopen(opt.grid_csv.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + opt.grid_csv);
    std::fprintf(f, "re,im,absD\n");
    const int nd = static_cast<int>(std::floor(L / opt.dump_step));
    for (int p = -nd; p <= nd; ++p) {
      double re = p * opt.dump_step;
      for (int q = -nd; q <= nd; ++q) {
        double im = q * opt.dump_step;
        if (re * re + im * im > L * L) continue;
        double v = std::abs(det_D(ctx, cplx(re, im)));
        std::fprintf(f, "%.17g,%.17g,%.17g\n", re, im, v);
      }
    }
    std::fclose(f);
  }
  return rep;
}

}  // namespace dnls
