#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/linearized.hpp"

using namespace dnls;

static const Nonlinearity kRef = Nonlinearity::affine(6.0, -3.0);  // a(s) = 6 - 3s
static const double kOmegaRef = 1.605551275463989293;              // wave with C = 1

TEST_CASE("coupling constants at the wave") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  CHECK(sw.C == doctest::Approx(1.0).epsilon(1e-10));
  LinearizedOperator L = build_linearized(sw, kRef, 60);
  CHECK(L.a == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(L.b == doctest::Approx(-6.0).epsilon(1e-9));
}

TEST_CASE("matrix and matrix-free application agree") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 25);
  Field f(L.M());
  for (int i = 0; i < L.M(); ++i)
    f[i] = cplx(std::sin(0.3 * i + 0.1), std::cos(0.2 * i - 0.4));
  Field g = L.apply(f);
  Eigen::VectorXd v = L.matrix * pack_field(f);
  Field g2 = unpack_field(v);
  for (int i = 0; i < L.M(); ++i) {
    CHECK(g[i].real() == doctest::Approx(g2[i].real()).epsilon(1e-13));
    CHECK(g[i].imag() == doctest::Approx(g2[i].imag()).epsilon(1e-13));
  }
}

TEST_CASE("generalized null space identities") {
  // G (j Phi) = 0 and G (d_omega Phi) = j Phi, up to the window tail
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  Window w(window_for_wave(sw));
  LinearizedOperator L = build_linearized(sw, kRef, w.N);
  auto [jphi, dphi] = null_vectors(sw, kRef, w);

  Field r1 = L.apply(jphi);
  CHECK(norm_l2(r1) < 1e-10);

  Field r2 = L.apply(dphi);
  for (int i = 0; i < w.size(); ++i) r2[i] -= jphi[i];
  CHECK(norm_l2(r2) < 1e-8);
}

TEST_CASE("projection reproduces the null pair and is idempotent") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  Window w(window_for_wave(sw));
  SymplecticProjection p = make_projection(sw, kRef, w);

  // P0 fixes j Phi and d_omega Phi
  Field a = p.project_discrete(p.jphi);
  Field b = p.project_discrete(p.dphi);
  for (int i = 0; i < w.size(); ++i) {
    CHECK(std::abs(a[i] - p.jphi[i]) < 1e-10);
    CHECK(std::abs(b[i] - p.dphi[i]) < 1e-10);
  }

  // idempotence on a generic field
  Field f(w.size());
  for (int i = 0; i < w.size(); ++i) f[i] = cplx(std::sin(0.17 * i), std::cos(0.11 * i));
  Field p1 = p.project_discrete(f);
  Field p2 = p.project_discrete(p1);
  for (int i = 0; i < w.size(); ++i) CHECK(std::abs(p2[i] - p1[i]) < 1e-10);

  // Pc kills the null pair
  CHECK(norm_l2(p.project_continuous(p.jphi)) < 1e-10);
  CHECK(norm_l2(p.project_continuous(p.dphi)) < 1e-10);
}

TEST_CASE("dense projectors match the rank-two form") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  Window w(45);
  SymplecticProjection p = make_projection(sw, kRef, w);
  Eigen::MatrixXd P0 = dense_projector_discrete(p);
  Eigen::MatrixXd Pc = dense_projector_continuous(p);

  CHECK(((P0 * P0 - P0).cwiseAbs().maxCoeff()) < 1e-12);
  CHECK(((P0 + Pc - Eigen::MatrixXd::Identity(P0.rows(), P0.cols())).cwiseAbs().maxCoeff()) ==
        doctest::Approx(0.0));

  Field f(w.size());
  for (int i = 0; i < w.size(); ++i) f[i] = cplx(std::cos(0.23 * i), std::sin(0.31 * i));
  Field viaStruct = p.project_discrete(f);
  Field viaDense = unpack_field(P0 * pack_field(f));
  for (int i = 0; i < w.size(); ++i) CHECK(std::abs(viaStruct[i] - viaDense[i]) < 1e-12);
}

TEST_CASE("projection commutes with the generator") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  Window w(window_for_wave(sw));
  LinearizedOperator L = build_linearized(sw, kRef, w.N);
  SymplecticProjection p = make_projection(sw, kRef, w);
  Eigen::MatrixXd P0 = dense_projector_discrete(p);
  Eigen::MatrixXd comm = P0 * L.matrix - L.matrix * P0;
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("nondegeneracy ties the symplectic form to the norm derivative") {
  SolitaryWave sw = make_wave(Nonlinearity::cubic(), Branch::plus, 1.0);
  Window w(window_for_wave(sw));
  auto [jphi, dphi] = null_vectors(sw, Nonlinearity::cubic(), w);
  // Omega(j Phi, d_omega Phi) = -1/2 d/domega sum |psi|^2 = -1/2 for a(s)=s
  CHECK(symplectic_form(jphi, dphi) == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("exponential propagator and Runge-Kutta fallback agree") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 30);
  Field chi0 = zero_field(L.win);
  chi0[L.win.index(2)] = cplx(0.4, -0.2);
  chi0[L.win.index(-1)] = cplx(-0.1, 0.3);
  Field a = evolve_linear(L, chi0, 3.0);

  // N = 401 exceeds the dense threshold and exercises the matrix-free path
  LinearizedOperator big = build_linearized(sw, kRef, 401);
  Field chi0b = zero_field(big.win);
  chi0b[big.win.index(2)] = cplx(0.4, -0.2);
  chi0b[big.win.index(-1)] = cplx(-0.1, 0.3);
  Field c = evolve_linear(big, chi0b, 3.0, 1e-12);
  for (int x = -25; x <= 25; ++x) {
    CHECK(std::abs(c[big.win.index(x)] - a[L.win.index(x)]) < 1e-8);
  }
}

TEST_CASE("free-case norm conservation and its failure with coupling") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 80);
  const int i0 = L.win.index(0), M = L.M();

  Field chi0 = zero_field(L.win);
  for (int x = -6; x <= 6; ++x)
    chi0[L.win.index(x)] = cplx(std::exp(-0.3 * x * x), 0.2 * std::exp(-0.5 * x * x));

  // with b = 0 the two blocks coincide and the flow is an isometry
  LinearizedOperator Lfree = L;
  Lfree.b = 0.0;
  Lfree.matrix(M + i0, i0) = -(2.0 + L.omega - L.a);
  Field free_t = evolve_linear(Lfree, chi0, 15.0);
  CHECK(std::abs(norm_l2(free_t) - norm_l2(chi0)) < 1e-10);

  // with b != 0 the l2 norm genuinely drifts; only the energy form survives
  Field full_t = evolve_linear(L, chi0, 15.0);
  CHECK(std::abs(norm_l2(full_t) - norm_l2(chi0)) > 1e-6);

  // d/dt ||chi||^2 = 2 b chi1(0) chi2(0) at t = 0
  double h = 1e-5;
  Field fp = evolve_linear(L, chi0, h), fm = evolve_linear(L, chi0, -h);
  double fd = (norm_l2(fp) * norm_l2(fp) - norm_l2(fm) * norm_l2(fm)) / (2 * h);
  double expect = 2.0 * L.b * chi0[i0].real() * chi0[i0].imag();
  CHECK(fd == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("energy form is conserved by the linear flow") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 80);
  const int M = L.M();

  // B = j G in matrix form, j = [[0,-I],[I,0]] on [u1;u2]
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * M, 2 * M);
  J.topRightCorner(M, M) = -Eigen::MatrixXd::Identity(M, M);
  J.bottomLeftCorner(M, M) = Eigen::MatrixXd::Identity(M, M);
  Eigen::MatrixXd B = J * L.matrix;
  CHECK((B - B.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  Field chi0 = zero_field(L.win);
  for (int x = -6; x <= 6; ++x)
    chi0[L.win.index(x)] = cplx(std::exp(-0.3 * x * x), -0.4 * std::exp(-0.2 * x * x));
  Eigen::VectorXd v0 = pack_field(chi0);
  double e0 = v0.dot(B * v0);
  Eigen::VectorXd vt = pack_field(evolve_linear(L, chi0, 12.0));
  double et = vt.dot(B * vt);
  CHECK(std::abs(et - e0) < 1e-8 * std::max(1.0, std::abs(e0)));
}

TEST_CASE("projected semigroup decays in the weighted norm") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 120);
  SymplecticProjection p = make_projection(sw, kRef, L.win);
  std::vector<double> grid;
  for (int t = 10; t <= 40; t += 2) grid.push_back(t);
  DecayFit fit = measure_decay(L, p, 2.0, grid);
  CHECK(fit.norm.front() > fit.norm.back());
  CHECK(fit.fit.slope < -0.8);
  CHECK(fit.fit.slope > -2.0);
}

TEST_CASE("decay guard rejects grids beyond the light cone") {
  SolitaryWave sw = make_wave(kRef, Branch::plus, kOmegaRef);
  LinearizedOperator L = build_linearized(sw, kRef, 60);
  SymplecticProjection p = make_projection(sw, kRef, L.win);
  CHECK_THROWS(measure_decay(L, p, 2.0, {10.0, 20.0, 30.0}));
}

TEST_CASE("pack and unpack round trip") {
  Field f = {cplx(1, 2), cplx(-3, 4), cplx(0.5, -0.25)};
  Eigen::VectorXd v = pack_field(f);
  CHECK(v.size() == 6);
  CHECK(v[0] == 1.0);
  CHECK(v[3] == 2.0);  // second component block
  Field g = unpack_field(v);
  for (size_t i = 0; i < f.size(); ++i) CHECK(f[i] == g[i]);
}
