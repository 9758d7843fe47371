#include "dnls/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dnls {

Window::Window(int half_width) : N(half_width) {
  if (half_width <= 0) throw std::invalid_argument("window half-width must be positive");
}

Field zero_field(const Window& w) { return Field(w.size(), cplx(0.0, 0.0)); }

Field delta_field(const Window& w, int x, cplx amp) {
  if (!w.contains(x)) throw std::out_of_range("delta site outside window");
  Field f = zero_field(w);
  f[w.index(x)] = amp;
  return f;
}

void require_finite(const Field& f, const char* what) {
  for (const cplx& v : f) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::runtime_error(std::string(what) + ": non-finite field value");
  }
}

static void check_same(const Window& w, const Field& f, const Field& g) {
  if (f.size() != g.size() || static_cast<int>(f.size()) != w.size())
    throw std::invalid_argument("mismatched windows");
}

Field laplacian(const Window& w, const Field& f) {
  const int M = w.size();
  Field out(M);
  for (int i = 0; i < M; ++i) {
    cplx left = (i > 0) ? f[i - 1] : cplx(0.0);
    cplx right = (i + 1 < M) ? f[i + 1] : cplx(0.0);
    out[i] = right - 2.0 * f[i] + left;
  }
  return out;
}

double weighted_norm(const Window& w, const Field& f, const WeightSpec& spec) {
  const int M = w.size();
  double acc = 0.0;
  for (int i = 0; i < M; ++i) {
    double wt = std::pow(1.0 + std::abs(w.site(i)), spec.beta);
    double v = std::abs(f[i]) * wt;
    switch (spec.p) {
      case WeightSpec::P::one: acc += v; break;
      case WeightSpec::P::two: acc += v * v; break;
      case WeightSpec::P::inf: acc = std::max(acc, v); break;
    }
  }
  return spec.p == WeightSpec::P::two ? std::sqrt(acc) : acc;
}

double norm_l2(const Field& f) {
  double acc = 0.0;
  for (const cplx& v : f) acc += std::norm(v);
  return std::sqrt(acc);
}

double inner(const Field& f, const Field& g) {
  if (f.size() != g.size()) throw std::invalid_argument("mismatched windows");
  double acc = 0.0;
  for (size_t i = 0; i < f.size(); ++i)
    acc += f[i].real() * g[i].real() + f[i].imag() * g[i].imag();
  return acc;
}

Field apply_j(const Field& f) {
  Field out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = cplx(-f[i].imag(), f[i].real());
  return out;
}

double symplectic_form(const Field& f, const Field& g) {
  if (f.size() != g.size()) throw std::invalid_argument("mismatched windows");
  double acc = 0.0;
  for (size_t i = 0; i < f.size(); ++i)
    acc += f[i].real() * g[i].imag() - f[i].imag() * g[i].real();
  return acc;
}

int support_radius(const Window& w, const Field& f, double rel_tol) {
  check_same(w, f, f);
  double peak = 0.0;
  for (const cplx& v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return -1;
  int rad = 0;
  for (int i = 0; i < w.size(); ++i)
    if (std::abs(f[i]) > rel_tol * peak) rad = std::max(rad, std::abs(w.site(i)));
  return rad;
}

Kernel::Kernel(int half_width) : N(half_width) {
  data.assign(static_cast<size_t>(dim()) * dim(), 0.0);
}

void Kernel::block(int x, int y, double out[2][2]) const {
  const int M2 = M();
  int i = x + N, j = y + N;
  out[0][0] = at(i, j);
  out[0][1] = at(i, j + M2);
  out[1][0] = at(i + M2, j);
  out[1][1] = at(i + M2, j + M2);
}

void Kernel::set_block(int x, int y, const double in[2][2]) {
  const int M2 = M();
  int i = x + N, j = y + N;
  at(i, j) = in[0][0];
  at(i, j + M2) = in[0][1];
  at(i + M2, j) = in[1][0];
  at(i + M2, j + M2) = in[1][1];
}

Kernel Kernel::identity(int half_width) {
  Kernel K(half_width);
  for (int r = 0; r < K.dim(); ++r) K.at(r, r) = 1.0;
  return K;
}

double op_norm_weighted(const Kernel& K, double beta) {
  if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
  const int M2 = K.M(), N = K.N;
  std::vector<double> wt(M2);
  for (int i = 0; i < M2; ++i) wt[i] = std::pow(1.0 + std::abs(i - N), -beta);
  double best = 0.0;
  for (int i = 0; i < M2; ++i) {
    for (int j = 0; j < M2; ++j) {
      double k11 = K.at(i, j), k12 = K.at(i, j + M2);
      double k21 = K.at(i + M2, j), k22 = K.at(i + M2, j + M2);
      // sigma_max^2 of a 2x2 block: (s + sqrt(s^2 - 4 det^2)) / 2.
      double s = k11 * k11 + k12 * k12 + k21 * k21 + k22 * k22;
      double det = k11 * k22 - k12 * k21;
      double disc = s * s - 4.0 * det * det;
      double sig2 = 0.5 * (s + std::sqrt(std::max(0.0, disc)));
      double v = wt[i] * std::sqrt(sig2) * wt[j];
      best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace dnls
