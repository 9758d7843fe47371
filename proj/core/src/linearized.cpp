#include "dnls/linearized.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace dnls {

Eigen::VectorXd pack_field(const Field& f) {
  const int M = static_cast<int>(f.size());
  Eigen::VectorXd v(2 * M);
  for (int i = 0; i < M; ++i) {
    v[i] = f[i].real();
    v[M + i] = f[i].imag();
  }
  return v;
}

Field unpack_field(const Eigen::VectorXd& v) {
  const int M = static_cast<int>(v.size()) / 2;
  Field f(M);
  for (int i = 0; i < M; ++i) f[i] = cplx(v[i], v[M + i]);
  return f;
}

// D = -Lap + omega - delta_0 * pot, as a dense M x M block.
static void fill_point_schroedinger(Eigen::Ref<Eigen::MatrixXd> D, const Window& w,
                                    double omega, double pot) {
  const int M = w.size();
  D.setZero();
  for (int i = 0; i < M; ++i) {
    D(i, i) = 2.0 + omega;
    if (i > 0) D(i, i - 1) = -1.0;
    if (i + 1 < M) D(i, i + 1) = -1.0;
  }
  D(w.index(0), w.index(0)) -= pot;
}

LinearizedOperator build_linearized(const SolitaryWave& sw, const Nonlinearity& m, int N) {
  LinearizedOperator L;
  L.win = Window(N);
  L.omega = sw.omega;
  double C2 = sw.C * sw.C;
  L.a = m.a(C2);
  L.b = 2.0 * m.da(C2) * C2;
  const int M = L.M();
  L.matrix.setZero(2 * M, 2 * M);
  fill_point_schroedinger(L.matrix.topRightCorner(M, M), L.win, L.omega, L.a);
  fill_point_schroedinger(L.matrix.bottomLeftCorner(M, M), L.win, L.omega, L.a + L.b);
  L.matrix.bottomLeftCorner(M, M) *= -1.0;
  return L;
}

Field LinearizedOperator::apply(const Field& f) const {
  if (static_cast<int>(f.size()) != M()) throw std::invalid_argument("mismatched window");
  const int Msz = M();
  const int i0 = win.index(0);
  Field out(Msz);
  for (int i = 0; i < Msz; ++i) {
    double u1m = (i > 0) ? f[i - 1].real() : 0.0, u1p = (i + 1 < Msz) ? f[i + 1].real() : 0.0;
    double u2m = (i > 0) ? f[i - 1].imag() : 0.0, u2p = (i + 1 < Msz) ? f[i + 1].imag() : 0.0;
    double d2u2 = (2.0 + omega) * f[i].imag() - u2m - u2p;
    double d1u1 = (2.0 + omega) * f[i].real() - u1m - u1p;
    out[i] = cplx(d2u2, -d1u1);
  }
  double u1 = f[i0].real(), u2 = f[i0].imag();
  out[i0] += cplx(-a * u2, (a + b) * u1);
  return out;
}

std::pair<Field, Field> null_vectors(const SolitaryWave& sw, const Nonlinearity& m,
                                     const Window& w) {
  return {apply_j(profile(sw, w)), d_omega_profile(sw, w, m)};
}

SymplecticProjection make_projection(const SolitaryWave& sw, const Nonlinearity& m,
                                     const Window& w) {
  SymplecticProjection p;
  p.phi = profile(sw, w);
  p.dphi = d_omega_profile(sw, w, m);
  p.jphi = apply_j(p.phi);
  p.jdphi = apply_j(p.dphi);
  p.denom = inner(p.phi, p.dphi);
  if (std::abs(p.denom) < 1e-12)
    throw std::runtime_error("degenerate wave: <Phi, d_omega Phi> vanishes");
  return p;
}

Field SymplecticProjection::project_discrete(const Field& f) const {
  double c1 = inner(f, jdphi) / denom;
  double c2 = inner(f, phi) / denom;
  Field out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = c1 * jphi[i] + c2 * dphi[i];
  return out;
}

Field SymplecticProjection::project_continuous(const Field& f) const {
  Field p0 = project_discrete(f);
  Field out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[i] - p0[i];
  return out;
}

Eigen::MatrixXd dense_projector_discrete(const SymplecticProjection& p) {
  Eigen::VectorXd jphi = pack_field(p.jphi), jdphi = pack_field(p.jdphi);
  Eigen::VectorXd phi = pack_field(p.phi), dphi = pack_field(p.dphi);
  return (jphi * jdphi.transpose() + dphi * phi.transpose()) / p.denom;
}

Eigen::MatrixXd dense_projector_continuous(const SymplecticProjection& p) {
  Eigen::MatrixXd P0 = dense_projector_discrete(p);
  return Eigen::MatrixXd::Identity(P0.rows(), P0.cols()) - P0;
}

// Dormand-Prince 5(4) with PI step control, matrix-free.
static Field rk_evolve(const LinearizedOperator& L, Field y, double T, double tol) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2; (void)c3; (void)c4; (void)c5;

  const size_t n = y.size();
  auto axpy = [&](Field& dst, const Field& base, std::initializer_list<std::pair<double, const Field*>> terms,
                  double h) {
    for (size_t i = 0; i < n; ++i) {
      cplx acc = base[i];
      for (auto& [coef, f] : terms) acc += h * coef * (*f)[i];
      dst[i] = acc;
    }
  };

  double t = 0.0, h = std::min(0.1, T);
  Field k1 = L.apply(y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);
  while (t < T) {
    h = std::min(h, T - t);
    axpy(ytmp, y, {{a21, &k1}}, h);
    k2 = L.apply(ytmp);
    axpy(ytmp, y, {{a31, &k1}, {a32, &k2}}, h);
    k3 = L.apply(ytmp);
    axpy(ytmp, y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
    k4 = L.apply(ytmp);
    axpy(ytmp, y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
    k5 = L.apply(ytmp);
    axpy(ytmp, y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
    k6 = L.apply(ytmp);
    axpy(y5, y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    k7 = L.apply(y5);
    double err = 0.0, scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
      cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err += std::norm(e);
      scale += std::norm(y5[i]);
    }
    err = std::sqrt(err);
    double lim = tol * std::max(1.0, std::sqrt(scale));
    if (err <= lim) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    double f = 0.9 * std::pow(lim / std::max(err, 1e-300), 0.2);
    h *= std::min(5.0, std::max(0.2, f));
  }
  return y;
}

Field evolve_linear(const LinearizedOperator& L, const Field& chi0, double t, double rk_tol) {
  if (t == 0.0) return chi0;
  if (L.win.N <= 400) {
    Eigen::MatrixXd E = (L.matrix * t).exp();
    return unpack_field(E * pack_field(chi0));
  }
  return rk_evolve(L, chi0, t, rk_tol);
}

static Kernel kernel_from_matrix(const Eigen::MatrixXd& A, int N) {
  Kernel K(N);
  const int D = K.dim();
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) K.at(r, c) = A(r, c);
  return K;
}

DecayFit measure_decay(const LinearizedOperator& L, const SymplecticProjection& p, double beta,
                       const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) throw std::invalid_argument("need at least two grid points");
  const double dt = t_grid[1] - t_grid[0];
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (std::abs((t_grid[i] - t_grid[i - 1]) - dt) > 1e-9 * dt)
      throw std::invalid_argument("t grid must be uniform");
  const int margin = 20;
  if (2.0 * t_grid.back() > L.win.N - margin)
    throw std::runtime_error("t grid exceeds the window light cone");

  Eigen::MatrixXd Pc = dense_projector_continuous(p);
  Eigen::MatrixXd E = (L.matrix * t_grid.front()).exp();
  Eigen::MatrixXd Ed = (L.matrix * dt).exp();

  DecayFit out;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0) E = Ed * E;
    Eigen::MatrixXd A = Pc * E * Pc;
    out.t.push_back(t_grid[i]);
    out.norm.push_back(op_norm_weighted(kernel_from_matrix(A, L.win.N), beta));
  }
  out.fit = fit_loglog(out.t, out.norm);
  return out;
}

}  // namespace dnls
