#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/fit.hpp"
#include "dnls/lattice.hpp"
#include "dnls/model.hpp"

using namespace dnls;

TEST_CASE("window indexing") {
  Window w(3);
  CHECK(w.size() == 7);
  CHECK(w.index(-3) == 0);
  CHECK(w.index(0) == 3);
  CHECK(w.site(6) == 3);
  CHECK(w.contains(3));
  CHECK(!w.contains(4));
}

TEST_CASE("laplacian of a delta") {
  Window w(2);
  Field f = delta_field(w, 0);
  Field lf = laplacian(w, f);
  CHECK(lf[w.index(-1)] == cplx(1, 0));
  CHECK(lf[w.index(0)] == cplx(-2, 0));
  CHECK(lf[w.index(1)] == cplx(1, 0));
  CHECK(lf[w.index(2)] == cplx(0, 0));
}

TEST_CASE("laplacian zero boundary") {
  Window w(2);
  Field f = delta_field(w, 2);  // at the edge
  Field lf = laplacian(w, f);
  CHECK(lf[w.index(2)] == cplx(-2, 0));  // neighbor outside reads as zero
  CHECK(lf[w.index(1)] == cplx(1, 0));
}

TEST_CASE("weighted norms") {
  Window w(2);
  Field f = zero_field(w);
  f[w.index(2)] = cplx(3, 4);  // |f| = 5 at x = 2
  CHECK(weighted_norm(w, f, {WeightSpec::P::one, 1.0}) == doctest::Approx(15.0));
  CHECK(weighted_norm(w, f, {WeightSpec::P::two, 1.0}) == doctest::Approx(15.0));
  CHECK(weighted_norm(w, f, {WeightSpec::P::inf, -1.0}) == doctest::Approx(5.0 / 3.0));
  f[w.index(0)] = cplx(0, 2);
  CHECK(weighted_norm(w, f, {WeightSpec::P::one, 0.0}) == doctest::Approx(7.0));
  CHECK(weighted_norm(w, f, {WeightSpec::P::two, 0.0}) == doctest::Approx(std::sqrt(29.0)));
}

TEST_CASE("inner and symplectic form") {
  Window w(1);
  Field f = {cplx(1, 2), cplx(0, 1), cplx(3, 0)};
  Field g = {cplx(2, -1), cplx(1, 1), cplx(0, 2)};
  // inner = Re sum conj(f) g
  double expect = (1 * 2 + 2 * -1) + (0 * 1 + 1 * 1) + (3 * 0 + 0 * 2);
  CHECK(inner(f, g) == doctest::Approx(expect));
  // Omega(f,g) = sum (f1 g2 - f2 g1) = Im sum conj(f) g
  double om = (1 * -1 - 2 * 2) + (0 * 1 - 1 * 1) + (3 * 2 - 0 * 0);
  CHECK(symplectic_form(f, g) == doctest::Approx(om));
  CHECK(symplectic_form(f, g) == doctest::Approx(inner(apply_j(f), g)));
  CHECK(symplectic_form(f, g) == doctest::Approx(-inner(f, apply_j(g))));
  CHECK(symplectic_form(f, f) == doctest::Approx(0.0));
}

TEST_CASE("apply_j is multiplication by i") {
  Field f = {cplx(2, -3)};
  Field jf = apply_j(f);
  CHECK(jf[0] == cplx(3, 2));
}

TEST_CASE("support radius") {
  Window w(10);
  Field f = zero_field(w);
  CHECK(support_radius(w, f) == -1);
  f[w.index(0)] = 1.0;
  f[w.index(-7)] = 1e-3;
  f[w.index(7)] = 1e-12;
  CHECK(support_radius(w, f) == 7);
  CHECK(support_radius(w, f, 1e-2) == 0);
  CHECK(support_radius(w, f, 1e-4) == 7);
}

TEST_CASE("require_finite") {
  Window w(1);
  Field f = zero_field(w);
  CHECK_NOTHROW(require_finite(f, "test"));
  f[0] = cplx(std::nan(""), 0);
  CHECK_THROWS(require_finite(f, "test"));
}

TEST_CASE("kernel block convention and weighted operator norm") {
  Kernel K(2);
  double blk[2][2] = {{3, 0}, {0, 0}};
  K.set_block(2, -1, blk);
  double out[2][2];
  K.block(2, -1, out);
  CHECK(out[0][0] == 3.0);
  // sigma_max = 3 at (x,y) = (2,-1); weights (1+2)^-1 (1+1)^-1
  CHECK(op_norm_weighted(K, 1.0) == doctest::Approx(0.5));

  double rot[2][2] = {{0, -7}, {7, 0}};  // sigma_max = 7
  K.set_block(0, 0, rot);
  CHECK(op_norm_weighted(K, 1.0) == doctest::Approx(7.0));
  CHECK(op_norm_weighted(K, 0.0) == doctest::Approx(7.0));
}

TEST_CASE("identity kernel norm") {
  Kernel K = Kernel::identity(5);
  CHECK(op_norm_weighted(K, 2.0) == doctest::Approx(1.0));
  CHECK(op_norm_weighted(K, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("nonlinearity evaluation") {
  Nonlinearity m = Nonlinearity::cubic(2.0);  // a(s) = 2s
  CHECK(m.a(3.0) == doctest::Approx(6.0));
  CHECK(m.da(3.0) == doctest::Approx(2.0));
  CHECK(m.u(2.0) == doctest::Approx(-2.0));  // -1/2 * int_0^2 2 sigma = -2

  Nonlinearity q{{1.0, -2.0, 0.5}};  // 1 - 2s + s^2/2
  CHECK(q.a(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
  CHECK(q.da(2.0) == doctest::Approx(-2.0 + 2.0));
  // u(s) = -1/2 (s - s^2 + s^3/6)
  CHECK(q.u(2.0) == doctest::Approx(-0.5 * (2.0 - 4.0 + 8.0 / 6.0)));

  cplx z(1.0, 1.0);  // |z|^2 = 2
  CHECK(m.force(z) == cplx(4.0, 4.0));
}

TEST_CASE("force jacobian matches finite differences") {
  Nonlinearity m{{0.5, 1.5, -0.25}};
  cplx z(0.7, -0.4);
  auto J = m.force_jacobian(z);
  double h = 1e-6;
  cplx dre = (m.force(z + h) - m.force(z - h)) / (2 * h);
  cplx dim = (m.force(z + cplx(0, h)) - m.force(z - cplx(0, h))) / (2 * h);
  CHECK(J[0][0] == doctest::Approx(dre.real()).epsilon(1e-6));
  CHECK(J[1][0] == doctest::Approx(dre.imag()).epsilon(1e-6));
  CHECK(J[0][1] == doctest::Approx(dim.real()).epsilon(1e-6));
  CHECK(J[1][1] == doctest::Approx(dim.imag()).epsilon(1e-6));
}

TEST_CASE("hamiltonian with ghost links") {
  Window w(1);
  Nonlinearity m = Nonlinearity::cubic();
  Field f = {cplx(0, 0), cplx(2, 0), cplx(0, 0)};
  // gradient part: links (-2,-1),(-1,0),(0,1),(1,2) -> 0 + 4 + 4 + 0, halved
  // defect part: u(4) = -16/4
  CHECK(hamiltonian(w, m, f) == doctest::Approx(4.0 - 4.0));
  Field g = {cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  CHECK(hamiltonian(w, m, g) == doctest::Approx(1.0));  // boundary ghost link counted
}

TEST_CASE("linear fit recovers exact line") {
  SlopeFit f = fit_linear({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.n == 4);
}

TEST_CASE("loglog fit recovers power law") {
  std::vector<double> t, y;
  for (int i = 1; i <= 20; ++i) {
    t.push_back(i);
    y.push_back(5.0 * std::pow(i, -1.5));
  }
  SlopeFit f = fit_loglog(t, y);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("loglog fit drops nonpositive samples") {
  SlopeFit f = fit_loglog({1, 2, 0, 4}, {2, 4, 1, 8});
  CHECK(f.n == 3);
  CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-12));
}
