// SPDX-License-Identifier: Apache-2.0
#pragma once

// Wavenumber fields k(x), admittance fields beta(y), and runtime validators
// for the structural hypotheses the explicit bounds depend on (vertical-decay
// Assumption 1 of the layer problem, interface Assumptions 4-5 of the
// transmission problem, and admittance positivity A2/A3).

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "rscat/common.hpp"
#include "rscat/geometry.hpp"

namespace rscat::media {

using geometry::SurfaceProfile;
using geometry::Vec2;

enum class MediumKind { constant, vertical_ramp, two_layer, tabulated };

struct MediumSpec {
  MediumKind kind = MediumKind::constant;
  cplx k2_value{1.0, 0.0};           // constant
  cplx k2_bottom{1.0, 0.0};          // vertical-ramp
  cplx k2_top{1.0, 0.0};
  double ramp_lo = 0.0, ramp_hi = 1.0;
  double k_plus = 1.0, k_minus = 1.0;  // two-layer
  double interface_height = 0.0;
  std::shared_ptr<const SurfaceProfile> interface;  // optional rough interface
  double blend_width = 0.0;          // 0 = sharp jump
  std::vector<double> heights;       // tabulated (laterally uniform)
  std::vector<cplx> k2_table;
};

/// Outcome of a hypothesis validator. Failures carry the arg-min sample so
/// they can be reproduced.
struct ValidationReport {
  bool pass = false;
  double worst_margin = 0.0;
  std::array<double, 3> argmin{0.0, 0.0, 0.0};
  std::string message;
};

class MediumProfile {
public:
  double k_plus = 1.0;   // wavenumber above the layer
  double k_minus = 1.0;  // wavenumber below (transmission)
  double k0 = 1.0;       // lower bound on |k|
  double k_inf = 1.0;    // upper bound on |k|
  double theta = 0.0;    // lower bound of arg(k^2), in [0, pi/2]
  double H = 1.0;        // top of the strip (layer problems)
  double h_plus = 1.0, h_minus = -1.0;  // transmission strip
  double f_minus = 0.0;  // lower bound of the boundary

  cplx k2(const Vec2& xt, double xn) const {
    switch (spec_.kind) {
      case MediumKind::constant:
        return spec_.k2_value;
      case MediumKind::vertical_ramp: {
        if (xn <= spec_.ramp_lo) return spec_.k2_bottom;
        if (xn >= spec_.ramp_hi) return spec_.k2_top;
        double t = (xn - spec_.ramp_lo) / (spec_.ramp_hi - spec_.ramp_lo);
        return spec_.k2_bottom + t * (spec_.k2_top - spec_.k2_bottom);
      }
      case MediumKind::two_layer: {
        double fi = spec_.interface ? spec_.interface->eval(xt) : spec_.interface_height;
        double d = xn - fi;
        double kp2 = spec_.k_plus * spec_.k_plus, km2 = spec_.k_minus * spec_.k_minus;
        if (spec_.blend_width <= 0.0) return d >= 0.0 ? kp2 : km2;
        if (d <= -0.5 * spec_.blend_width) return km2;
        if (d >= 0.5 * spec_.blend_width) return kp2;
        double t = d / spec_.blend_width + 0.5;
        return km2 + t * (kp2 - km2);
      }
      case MediumKind::tabulated: {
        const auto& hs = spec_.heights;
        if (xn <= hs.front()) return spec_.k2_table.front();
        if (xn >= hs.back()) return spec_.k2_table.back();
        auto it = std::upper_bound(hs.begin(), hs.end(), xn);
        std::size_t i = static_cast<std::size_t>(it - hs.begin()) - 1;
        double t = (xn - hs[i]) / (hs[i + 1] - hs[i]);
        return spec_.k2_table[i] + t * (spec_.k2_table[i + 1] - spec_.k2_table[i]);
      }
    }
    return {1.0, 0.0};
  }

  cplx k2(double x1, double xn) const { return k2({x1, 0.0}, xn); }

  bool laterally_uniform() const {
    return spec_.kind != MediumKind::two_layer || !spec_.interface;
  }

  const MediumSpec& spec() const { return spec_; }

private:
  friend MediumProfile make_medium(const MediumSpec&, double, double, double, double);
  MediumSpec spec_;
};

/// Builds a medium and derives k0, k_inf, theta by dense sampling of the
/// strip. Rejects media violating the standing sign assumptions
/// Re(k^2) >= 0, Im(k^2) >= 0.
inline MediumProfile make_medium(const MediumSpec& spec, double H, double h_plus,
                                 double h_minus, double f_minus) {
  MediumProfile m;
  m.spec_ = spec;
  m.H = H;
  m.h_plus = h_plus;
  m.h_minus = h_minus;
  m.f_minus = f_minus;
  m.k_plus = spec.k_plus;
  m.k_minus = spec.k_minus;
  if (spec.kind == MediumKind::constant || spec.kind == MediumKind::vertical_ramp ||
      spec.kind == MediumKind::tabulated) {
    // k_plus is |k| at the top of the strip for laterally uniform media
    m.k_plus = std::sqrt(std::abs(m.k2(0.0, std::max(H, h_plus))));
    m.k_minus = std::sqrt(std::abs(m.k2(0.0, std::min(f_minus, h_minus))));
  }
  double lo = 1e300, hi = 0.0, th = 0.5 * pi;
  const int nv = 700, nl = m.laterally_uniform() ? 1 : 64;
  double zlo = std::min(f_minus, h_minus), zhi = std::max(H, h_plus);
  for (int j = 0; j < nl; ++j) {
    double x1 = (j + 0.5) * 16.0 / nl - 8.0;
    for (int i = 0; i <= nv; ++i) {
      double xn = zlo + (zhi - zlo) * i / nv;
      cplx v = m.k2(x1, xn);
      if (v.real() < -1e-12 || v.imag() < -1e-12)
        throw invalid_input("make_medium: requires Re(k^2) >= 0 and Im(k^2) >= 0");
      double mag = std::sqrt(std::abs(v));
      lo = std::min(lo, mag);
      hi = std::max(hi, mag);
      if (std::abs(v) > 0.0) th = std::min(th, std::max(0.0, std::arg(v)));
    }
  }
  if (!(lo > 0.0)) throw invalid_input("make_medium: k must be bounded away from zero");
  m.k0 = lo;
  m.k_inf = hi;
  m.theta = th;
  return m;
}

/// Checks the differential consequence of Assumption 1 on a finite-difference
/// stencil: d Re(k^2)/d x_n >= -lambda1 - lambda2 Im(k^2), sampled over the
/// strip [f_minus, H]. lambda1 must lie in (0, 4/(H - f_minus)^3).
inline ValidationReport validate_assumption1(const MediumProfile& m, double lambda1,
                                             double lambda2, int n_lateral = 16,
                                             double lateral_extent = 8.0) {
  const double depth = m.H - m.f_minus;
  if (!(lambda1 > 0.0) || !(lambda1 < 4.0 / (depth * depth * depth)))
    throw hypothesis_error("assumption 1: lambda1 outside (0, 4/(H-f_-)^3)");
  if (lambda2 < 0.0) throw hypothesis_error("assumption 1: lambda2 must be >= 0");
  const double h = depth / 512.0;
  const double slack = 1e-8;
  ValidationReport rep;
  rep.pass = true;
  rep.worst_margin = 1e300;
  int nl = m.laterally_uniform() ? 1 : n_lateral;
  for (int j = 0; j < nl; ++j) {
    double x1 = nl == 1 ? 0.0 : (j + 0.5) * lateral_extent / nl - 0.5 * lateral_extent;
    for (int i = 0; i < 512; ++i) {
      double xn = m.f_minus + i * h;
      cplx a = m.k2(x1, xn), b = m.k2(x1, xn + h);
      double deriv = (b.real() - a.real()) / h;
      double margin = deriv + lambda1 + lambda2 * a.imag();
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.argmin = {x1, 0.0, xn};
      }
    }
  }
  rep.pass = rep.worst_margin >= -slack;
  rep.message = rep.pass ? "assumption 1 holds on the sample grid"
                         : "assumption 1 violated: d Re(k^2)/dx_n too negative";
  return rep;
}

/// Assumption 4 (vertical monotonicity of k^2 about the height beta) and
/// Assumption 5 (k~^2 - k^2 >= lambda3 on the collar of the interface).
inline ValidationReport validate_assumptions_4_5(const MediumProfile& m, double beta_height,
                                                 double lambda3, double eps,
                                                 const SurfaceProfile& collar_surface,
                                                 int n_lateral = 64, double lateral_extent = 8.0) {
  if (!(beta_height >= m.h_minus && beta_height <= m.h_plus))
    throw hypothesis_error("assumptions 4-5: beta must lie in [h_-, h_+]");
  if (!(lambda3 > 0.0) || !(eps > 0.0))
    throw hypothesis_error("assumptions 4-5: lambda3 and eps must be positive");
  if (collar_surface.f_minus - eps < m.h_minus || collar_surface.f_plus + eps > m.h_plus)
    throw invalid_input("assumptions 4-5: collar not contained in the strip");

  ValidationReport rep;
  rep.worst_margin = 1e300;
  const double depth = m.h_plus - m.h_minus;
  const double h = depth / 512.0;
  const double slack = 1e-8;
  bool monotone_ok = true;
  std::array<double, 3> mono_argmin{0.0, 0.0, 0.0};
  double mono_worst = 0.0;
  for (int j = 0; j < n_lateral; ++j) {
    double x1 = (j + 0.5) * lateral_extent / n_lateral - 0.5 * lateral_extent;
    for (int i = 0; i < 512; ++i) {
      double xn = m.h_minus + i * h;
      double d = (m.k2(x1, xn + h).real() - m.k2(x1, xn).real()) / h;
      // non-increasing below beta, non-decreasing above
      double viol = (xn + 0.5 * h < beta_height) ? d : -d;
      if (viol > slack && viol > mono_worst) {
        mono_worst = viol;
        mono_argmin = {x1, 0.0, xn};
        monotone_ok = false;
      }
    }
    // collar check at this lateral station
    double fi = collar_surface.eval({x1, 0.0});
    for (int i = 0; i <= 64; ++i) {
      double xn = fi - eps + 2.0 * eps * i / 64.0;
      double ktilde2 = xn > beta_height ? m.k_plus * m.k_plus : m.k_minus * m.k_minus;
      double margin = ktilde2 - m.k2(x1, xn).real() - lambda3;
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.argmin = {x1, 0.0, xn};
      }
    }
  }
  bool collar_ok = rep.worst_margin >= -slack;
  rep.pass = monotone_ok && collar_ok;
  if (!monotone_ok) {
    rep.message = "assumption 4 violated: wrong monotonicity at the sample point";
    rep.worst_margin = -mono_worst;
    rep.argmin = mono_argmin;
  } else if (!collar_ok) {
    rep.message = "assumption 5 violated: k~^2 - k^2 < lambda3 on the collar";
  } else {
    rep.message = "assumptions 4 and 5 hold on the sample grid";
  }
  return rep;
}

enum class AdmittanceKind { constant, tabulated };

struct AdmittanceSpec {
  AdmittanceKind kind = AdmittanceKind::constant;
  cplx value{1.0, 0.0};
  std::vector<double> knots_x;  // tabulated along x1, clamped ends
  std::vector<cplx> values;
};

enum class AdmittanceMode { A2, A3 };

/// Relative surface admittance beta on Gamma, with the angles the impedance
/// bounds need: alpha1 and eta are the A2 data, Phi = min{0, ess inf arg b}.
class AdmittanceProfile {
public:
  double B = 0.0;       // sup |beta|
  double eta = 0.0;     // positivity margin used by A2/A3
  double alpha1 = 0.0;  // rotation angle for A2, in [0, pi/2)
  double Phi = 0.0;     // in (-pi/2, 0]

  cplx beta(const Vec2& xt) const {
    if (spec_.kind == AdmittanceKind::constant) return spec_.value;
    const auto& xs = spec_.knots_x;
    double x = xt[0];
    if (x <= xs.front()) return spec_.values.front();
    if (x >= xs.back()) return spec_.values.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return spec_.values[i] + t * (spec_.values[i + 1] - spec_.values[i]);
  }

  const AdmittanceSpec& spec() const { return spec_; }

  std::vector<cplx> samples(int n = 512, double extent = 16.0) const {
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = beta({(i + 0.5) * extent / n - 0.5 * extent, 0.0});
    return out;
  }

private:
  friend AdmittanceProfile make_admittance(const AdmittanceSpec&, double, double);
  AdmittanceSpec spec_;
};

inline AdmittanceProfile make_admittance(const AdmittanceSpec& spec, double eta,
                                         double alpha1) {
  if (alpha1 < 0.0 || alpha1 >= 0.5 * pi)
    throw invalid_input("make_admittance: alpha1 must lie in [0, pi/2)");
  AdmittanceProfile a;
  a.spec_ = spec;
  a.eta = eta;
  a.alpha1 = alpha1;
  double phi = 0.0, sup = 0.0;
  for (const cplx& b : a.samples()) {
    sup = std::max(sup, std::abs(b));
    if (std::abs(b) > 0.0) phi = std::min(phi, std::arg(b));
  }
  a.B = sup;
  a.Phi = std::max(phi, -0.5 * pi + 1e-12);
  return a;
}

struct AdmittanceReport {
  bool pass = false;
  double worst_margin = 0.0;
  double eta_alpha = 0.0;  // eta * sec(alpha1), consumed by the small-k bound
  std::array<double, 3> argmin{0.0, 0.0, 0.0};
  std::string message;
};

/// A2: Im(e^{i alpha1} beta) >= eta; A3: Re(beta) >= eta. Reports the worst
/// sampled margin either way.
inline AdmittanceReport validate_admittance(const AdmittanceProfile& a, AdmittanceMode mode,
                                            int n = 512, double extent = 16.0) {
  AdmittanceReport rep;
  rep.eta_alpha = a.eta / std::cos(a.alpha1);
  rep.worst_margin = 1e300;
  const cplx rot = std::exp(iu * a.alpha1);
  for (int i = 0; i < n; ++i) {
    double x1 = (i + 0.5) * extent / n - 0.5 * extent;
    cplx b = a.beta({x1, 0.0});
    if (b.real() < -1e-12) {
      rep.pass = false;
      rep.worst_margin = b.real();
      rep.argmin = {x1, 0.0, 0.0};
      rep.message = "admittance violates Re(beta) >= 0";
      return rep;
    }
    double margin = (mode == AdmittanceMode::A2) ? (rot * b).imag() - a.eta
                                                 : b.real() - a.eta;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.argmin = {x1, 0.0, 0.0};
    }
  }
  rep.pass = rep.worst_margin >= -1e-12;
  rep.message = rep.pass ? "admittance assumption holds on the sample grid"
                         : "admittance assumption violated";
  return rep;
}

}  // namespace rscat::media
