// SPDX-License-Identifier: Apache-2.0
#pragma once

// Free-space fundamental solution, half-space Dirichlet Green's function
// (image construction about x_n = 0), its y-gradient and normal derivative,
// and the scaled Taylor-expansion remainders used to certify the kernel
// decay estimates.

#include <array>
#include <cmath>

#include "rscat/common.hpp"
#include "rscat/special.hpp"

namespace rscat::greens {

using Vec3 = std::array<double, 3>;

/// Evaluation bundle for kernel probes.
struct KernelEval {
  cplx value{0.0, 0.0};
  std::array<cplx, 3> gradient_y{cplx{}, cplx{}, cplx{}};
};

inline double dist(const Vec3& x, const Vec3& y, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

inline Vec3 reflect(const Vec3& y, int dim) {
  Vec3 yp = y;
  yp[dim - 1] = -yp[dim - 1];
  return yp;
}

/// Fundamental solution of the Helmholtz equation:
/// dim 3: e^{ikr}/(4 pi r); dim 2: (i/4) H0^(1)(kr). Im k >= 0 accepted.
inline cplx phi_dist(double r, cplx k, int dim) {
  if (!(r > 0.0)) throw invalid_input("phi: coincident points");
  if (!(k.real() > 0.0) || k.imag() < 0.0)
    throw invalid_input("phi: need Re k > 0 and Im k >= 0");
  if (dim == 3) return std::exp(iu * k * r) / (4.0 * pi * r);
  if (dim == 2) return 0.25 * iu * special::h0(k * r);
  throw invalid_input("phi: dim must be 2 or 3");
}

inline cplx phi(const Vec3& x, const Vec3& y, cplx k, int dim) {
  return phi_dist(dist(x, y, dim), k, dim);
}

/// G(x,y) = Phi(x,y) - Phi(x,y') with y' the reflection of y in x_n = 0.
inline cplx greens_halfspace(const Vec3& x, const Vec3& y, cplx k, int dim) {
  return phi(x, y, k, dim) - phi(x, reflect(y, dim), k, dim);
}

/// grad_y Phi(x,y); 3D only (the layer operators are 3D).
inline std::array<cplx, 3> grad_y_phi3(const Vec3& x, const Vec3& y, cplx k) {
  const double r = dist(x, y, 3);
  if (!(r > 0.0)) throw invalid_input("grad_y_phi3: coincident points");
  // dPhi/dy_i = (x_i - y_i) e^{ikr}(1 - ikr)/(4 pi r^3)
  const cplx f = std::exp(iu * k * r) * (1.0 - iu * k * r) / (4.0 * pi * r * r * r);
  return {(x[0] - y[0]) * f, (x[1] - y[1]) * f, (x[2] - y[2]) * f};
}

/// grad_y G(x,y) for the half-space Green's function, 3D.
inline std::array<cplx, 3> grad_y_greens3(const Vec3& x, const Vec3& y, cplx k) {
  auto g = grad_y_phi3(x, y, k);
  auto gi = grad_y_phi3(x, reflect(y, 3), k);
  // y'_3 = -y_3 flips the sign of the vertical derivative of the image term
  g[0] -= gi[0];
  g[1] -= gi[1];
  g[2] += gi[2];
  return g;
}

/// dG/dnu(y) = nu . grad_y G(x,y), 3D, with |nu| = 1.
inline cplx dG_dnu(const Vec3& x, const Vec3& y, const Vec3& normal, cplx k) {
  const double n2 = normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2];
  if (std::abs(n2 - 1.0) > 1e-10) throw invalid_input("dG_dnu: normal must be unit length");
  auto g = grad_y_greens3(x, y, k);
  return normal[0] * g[0] + normal[1] * g[1] + normal[2] * g[2];
}

inline KernelEval eval_kernel(const Vec3& x, const Vec3& y, cplx k) {
  KernelEval out;
  out.value = greens_halfspace(x, y, k, 3);
  out.gradient_y = grad_y_greens3(x, y, k);
  return out;
}

/// Scaled remainder of the leading-order expansion of G at heights h,s over
/// the plane: | G(xt+h e3, yt+s e3) + (2hs/4pi) ik e^{ikr}/r^2 | * r^3,
/// r = |xt - yt|. Bounded in r iff the expansion's O(1/r^3) estimate holds.
inline double expansion_remainder(const std::array<double, 2>& xt, const std::array<double, 2>& yt,
                                  double h, double s, double k) {
  const double r = std::hypot(xt[0] - yt[0], xt[1] - yt[1]);
  if (!(r > 0.0)) throw invalid_input("expansion_remainder: coincident lateral points");
  const Vec3 x{xt[0], xt[1], h}, y{yt[0], yt[1], s};
  const cplx lead = -(2.0 * h * s / (4.0 * pi)) * iu * k * std::exp(iu * k * r) / (r * r);
  return std::abs(greens_halfspace(x, y, k, 3) - lead) * r * r * r;
}

/// Scaled remainder of the normal-derivative expansion: the two retained
/// terms are -k^2 (nu~ . rhat) e^{ikr}/r^2 * 2hs and -ik nu_3 e^{ikr}/r^2 * 2h
/// (times 1/4pi), remainder scaled by r^3.
inline double expansion_remainder_dnu(const std::array<double, 2>& xt, const std::array<double, 2>& yt,
                                      double h, double s, double k, const Vec3& normal) {
  const double dx = xt[0] - yt[0], dy = xt[1] - yt[1];
  const double r = std::hypot(dx, dy);
  if (!(r > 0.0)) throw invalid_input("expansion_remainder_dnu: coincident lateral points");
  const Vec3 x{xt[0], xt[1], h}, y{yt[0], yt[1], s};
  const cplx e = std::exp(iu * k * r) / (r * r);
  const cplx lead = (-k * k * (normal[0] * dx + normal[1] * dy) / r * 2.0 * h * s
                     - iu * k * normal[2] * 2.0 * h) * e / (4.0 * pi);
  return std::abs(dG_dnu(x, y, normal, cplx(k, 0.0)) - lead) * r * r * r;
}

/// |G(x,y)| |x-y|^2 / ((1+x_3)(1+y_3)); an empirical probe for the constant
/// in the decay bound |G| <= C(1+x_3)(1+y_3)/|x-y|^2.
inline double gbound_ratio(const Vec3& x, const Vec3& y, double k) {
  if (x[2] < 0.0 || y[2] < 0.0) throw invalid_input("gbound_ratio: heights must be >= 0");
  const double r = dist(x, y, 3);
  const double g = std::abs(greens_halfspace(x, y, cplx(k, 0.0), 3));
  return g * r * r / ((1.0 + x[2]) * (1.0 + y[2]));
}

}  // namespace rscat::greens
