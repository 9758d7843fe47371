#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/solitary.hpp"

using namespace dnls;

TEST_CASE("decay rate of omega") {
  // cosh k = |omega+2|/2 on both branches
  CHECK(k_of_omega(1.0, Branch::plus) == doctest::Approx(0.962423650119206895).epsilon(1e-15));
  CHECK(k_of_omega(0.2, Branch::plus) == doctest::Approx(0.4435682543851151891).epsilon(1e-15));
  CHECK(k_of_omega(-5.0, Branch::minus) ==
        doctest::Approx(0.962423650119206895).epsilon(1e-15));
  CHECK_THROWS(k_of_omega(-1.0, Branch::plus));   // spectral gap
  CHECK_THROWS(k_of_omega(-4.0, Branch::minus));  // band edge
  CHECK_THROWS(k_of_omega(1.0, Branch::minus));   // wrong branch
}

TEST_CASE("cubic amplitude closed form") {
  // a(s) = s: C^2 = 2 sinh k
  Nonlinearity m = Nonlinearity::cubic();
  SolitaryWave sw = make_wave(m, Branch::plus, 1.0);
  CHECK(sw.C == doctest::Approx(1.495348781221220542).epsilon(1e-12));
  CHECK(sw.k == doctest::Approx(0.962423650119206895).epsilon(1e-14));
}

TEST_CASE("two coexisting amplitudes") {
  // a(s) = 3s - s^2 crosses the level 2 sinh k twice for small omega
  Nonlinearity m{{0.0, 3.0, -1.0}};
  std::vector<double> roots = amplitude_of_omega(0.2, Branch::plus, m);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.5875660389068064413).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(1.629345313284868175).epsilon(1e-10));
  // make_wave picks the smaller amplitude
  CHECK(make_wave(m, Branch::plus, 0.2).C == doctest::Approx(roots[0]));
}

TEST_CASE("no wave when the level is missed") {
  // a(s) = s is nonnegative, minus branch needs a(C^2) < 0
  Nonlinearity m = Nonlinearity::cubic();
  CHECK(amplitude_of_omega(-5.0, Branch::minus, m).empty());
  CHECK_THROWS(make_wave(m, Branch::minus, -5.0));
}

TEST_CASE("stationary equation residual, plus branch") {
  Nonlinearity m = Nonlinearity::cubic();
  for (double omega : {0.2, 0.7, 1.3, 2.4, 3.0}) {
    SolitaryWave sw = make_wave(m, Branch::plus, omega);
    Window w(window_for_wave(sw));
    CHECK(nep_residual(sw, w, m) < 1e-12);
  }
}

TEST_CASE("stationary equation residual, minus branch") {
  Nonlinearity m = Nonlinearity::cubic(-1.0);  // a(s) = -s
  SolitaryWave sw = make_wave(m, Branch::minus, -5.0);
  Window w(window_for_wave(sw));
  CHECK(nep_residual(sw, w, m) < 1e-12);
  // staggered profile alternates sign
  Field f = profile(sw, w);
  CHECK(f[w.index(1)].real() == doctest::Approx(-sw.C * std::exp(-sw.k)));
  CHECK(f[w.index(2)].real() == doctest::Approx(sw.C * std::exp(-2 * sw.k)));
}

TEST_CASE("phase rotates the profile") {
  Nonlinearity m = Nonlinearity::cubic();
  SolitaryWave sw = make_wave(m, Branch::plus, 1.0, 0.75);
  Window w(40);
  Field f = profile(sw, w);
  CHECK(f[w.index(0)] == cplx(sw.C * std::cos(0.75), sw.C * std::sin(0.75)));
  CHECK(nep_residual(sw, w, m) < 1e-10);  // equation is phase invariant
}

TEST_CASE("omega derivative of the profile matches finite differences") {
  Nonlinearity m{{0.0, 6.0, -3.0}};  // a(s) = 6s - 3s^2, nontrivial a'
  SolitaryWave sw = make_wave(m, Branch::plus, 1.2);
  Window w(window_for_wave(sw));
  Field dphi = d_omega_profile(sw, w, m);
  double h = 1e-6;
  Field up = profile(make_wave(m, Branch::plus, 1.2 + h), w);
  Field dn = profile(make_wave(m, Branch::plus, 1.2 - h), w);
  for (int i = 0; i < w.size(); ++i) {
    double fd = (up[i].real() - dn[i].real()) / (2 * h);
    CHECK(dphi[i].real() == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("norm derivative closed form for the cubic model") {
  // sum |psi|^2 = C^2 coth k = 2 cosh k = omega + 2, so the derivative is 1
  Nonlinearity m = Nonlinearity::cubic();
  for (double omega : {0.3, 1.0, 2.5}) {
    SolitaryWave sw = make_wave(m, Branch::plus, omega);
    CHECK(d_omega_norm_sq(sw, m) == doctest::Approx(1.0).epsilon(1e-12));
    Window w(window_for_wave(sw));
    Field f = profile(sw, w);
    double sum = 0;
    for (auto v : f) sum += std::norm(v);
    CHECK(sum == doctest::Approx(omega + 2.0).epsilon(1e-12));
  }
}

TEST_CASE("norm derivative matches finite differences off the cubic case") {
  Nonlinearity m{{2.0, -1.0}};  // a(s) = 2 - s
  SolitaryWave sw = make_wave(m, Branch::plus, 0.2360679774997896964);
  double h = 1e-6;
  auto nrm = [&](double om) {
    SolitaryWave s = make_wave(m, Branch::plus, om);
    return s.C * s.C / std::tanh(s.k);
  };
  double fd = (nrm(sw.omega + h) - nrm(sw.omega - h)) / (2 * h);
  CHECK(d_omega_norm_sq(sw, m) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("window sizing controls the tail") {
  Nonlinearity m = Nonlinearity::cubic();
  SolitaryWave sw = make_wave(m, Branch::plus, 0.2);  // slow decay
  int N = window_for_wave(sw, 1e-14);
  CHECK(std::exp(-sw.k * N) <= 1e-14);
  CHECK(window_for_wave(make_wave(m, Branch::plus, 3.0)) >= 40);
}

TEST_CASE("admissibility for the certified model") {
  Nonlinearity m{{2.0, -1.0}};
  SolitaryWave sw = make_wave(m, Branch::plus, 0.2360679774997896964);
  CHECK(sw.C == doctest::Approx(1.0).epsilon(1e-10));
  AdmissibilityReport r = admissibility_report(sw, m);
  CHECK(r.a == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.a_prime == doctest::Approx(-1.0));
  CHECK(r.aprime_nonzero);
  CHECK(r.sp_cond1);
  CHECK(r.intdif_ok);
}
