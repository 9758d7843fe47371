#pragma once

#include <complex>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

// Symmetric window x in [-N, N] on the integer lattice. Everything outside
// reads as zero (Dirichlet truncation). Site x lives at index x + N.
struct Window {
  int N = 0;

  Window() = default;
  explicit Window(int half_width);

  int size() const { return 2 * N + 1; }
  int index(int x) const { return x + N; }
  int site(int i) const { return i - N; }
  bool contains(int x) const { return x >= -N && x <= N; }
};

// Complex-valued function on a window; length is always 2N+1.
using Field = std::vector<cplx>;

Field zero_field(const Window& w);
Field delta_field(const Window& w, int x, cplx amp = cplx(1.0, 0.0));

void require_finite(const Field& f, const char* what);

// Difference Laplacian with zero boundary: (Lf)(x) = f(x+1) - 2 f(x) + f(x-1).
Field laplacian(const Window& w, const Field& f);

struct WeightSpec {
  enum class P { one, two, inf };
  P p = P::two;
  double beta = 0.0;
};

// || (1+|x|)^beta f ||_{l^p}; p = inf gives the weighted sup.
double weighted_norm(const Window& w, const Field& f, const WeightSpec& spec);

double norm_l2(const Field& f);

// Real pairing <f,g> = sum Re f Re g + Im f Im g = Re sum conj(f) g.
double inner(const Field& f, const Field& g);

// j is the symplectic unit: multiplication by i on the complex field,
// i.e. (u1,u2) -> (-u2,u1) in real-pair form.
Field apply_j(const Field& f);

// Omega(f,g) = sum (f1 g2 - f2 g1) = inner(j f, g) = -inner(f, j g).
double symplectic_form(const Field& f, const Field& g);

// Largest |x| with |f(x)| > rel_tol * max|f|; -1 for the zero field.
int support_radius(const Window& w, const Field& f, double rel_tol = 1e-9);

// Dense real matrix acting on real-pair fields, stored as 2x2 blocks per
// site pair (x,y): block(x,y) = [[k11,k12],[k21,k22]], row index x-component,
// column index y-component. Backing layout: two stacked site blocks
// (first components, then second), size (2M)^2 with M = 2N+1.
struct Kernel {
  int N = 0;
  std::vector<double> data;  // row-major, dimension 2M x 2M

  Kernel() = default;
  explicit Kernel(int half_width);

  int M() const { return 2 * N + 1; }
  int dim() const { return 2 * M(); }
  double& at(int r, int c) { return data[static_cast<size_t>(r) * dim() + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * dim() + c]; }

  // 2x2 block for the site pair; x,y are lattice coordinates.
  void block(int x, int y, double out[2][2]) const;
  void set_block(int x, int y, const double in[2][2]);

  static Kernel identity(int half_width);
};

// sup over (x,y) of (1+|x|)^{-beta} * sigma_max(block(x,y)) * (1+|y|)^{-beta};
// sigma_max is the 2x2 spectral norm. This realizes the operator norm
// l^1_beta -> l^inf_{-beta} under the documented block convention.
double op_norm_weighted(const Kernel& K, double beta);

}  // namespace dnls
