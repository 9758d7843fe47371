#include "dnls/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

double Nonlinearity::a(double s) const {
  double acc = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
  return acc;
}

double Nonlinearity::da(double s) const {
  double acc = 0.0;
  for (size_t k = coeffs.size(); k-- > 1;) acc = acc * s + coeffs[k] * static_cast<double>(k);
  return acc;
}

double Nonlinearity::u(double s) const {
  // -(1/2) sum c_k s^{k+1} / (k+1), evaluated by Horner in s.
  double acc = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k] / static_cast<double>(k + 1);
  return -0.5 * s * acc;
}

cplx Nonlinearity::force(cplx z) const { return a(std::norm(z)) * z; }

std::array<std::array<double, 2>, 2> Nonlinearity::force_jacobian(cplx z) const {
  double s = std::norm(z);
  double av = a(s), dav = da(s);
  double v1 = z.real(), v2 = z.imag();
  return {{{av + 2.0 * dav * v1 * v1, 2.0 * dav * v1 * v2},
           {2.0 * dav * v1 * v2, av + 2.0 * dav * v2 * v2}}};
}

Nonlinearity Nonlinearity::cubic(double kappa) { return Nonlinearity{{0.0, kappa}}; }

Nonlinearity Nonlinearity::affine(double c0, double c1) { return Nonlinearity{{c0, c1}}; }

double hamiltonian(const Window& w, const Nonlinearity& m, const Field& f) {
  if (static_cast<int>(f.size()) != w.size()) throw std::invalid_argument("mismatched window");
  const int M = w.size();
  double grad = std::norm(f[0]) + std::norm(f[M - 1]);  // links to the zero boundary
  for (int i = 0; i + 1 < M; ++i) grad += std::norm(f[i + 1] - f[i]);
  return 0.5 * grad + m.u(std::norm(f[w.index(0)]));
}

}  // namespace dnls
