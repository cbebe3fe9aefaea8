// SPDX-License-Identifier: Apache-2.0
#pragma once

// Rough-surface geometry: Lipschitz graphs x_n = f(x~), their slope data,
// smooth mollified approximants, and non-tangential approach cones.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "rscat/common.hpp"

namespace rscat::geometry {

using Vec2 = std::array<double, 2>;

enum class SurfaceKind { flat, sinusoid, piecewise_linear, tabulated, mollified };

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::flat;
  double offset = 0.0;                 // flat height / sinusoid mean height
  double amplitude1 = 0.0, period1 = 1.0, phase1 = 0.0;  // sinusoid along x1
  double amplitude2 = 0.0, period2 = 1.0, phase2 = 0.0;  // sinusoid along x2
  std::vector<double> knots_x, knots_f;  // piecewise-linear (1D lateral)
  std::vector<double> table;             // tabulated (1D lateral, periodic)
  double table_spacing = 1.0;
  double declared_L = -1.0;  // < 0: derive from the profile itself
};

class SurfaceProfile;
SurfaceProfile mollify(const SurfaceProfile& f, double eps);

/// Graph of a Lipschitz function f : R^{n-1} -> R. Immutable; evaluation,
/// one-sided gradients and the area element J_f = sqrt(1+|grad f|^2) are
/// pure. Lateral points are Vec2; 1D-lateral profiles ignore the second
/// component, so the same object serves the 2D strip solvers and the 3D BIE.
class SurfaceProfile {
public:
  double L = 0.0;        // Lipschitz constant (declared, validated on build)
  double f_minus = 0.0;  // lower height bound
  double f_plus = 0.0;   // upper height bound

  double operator()(const Vec2& xt) const { return eval(xt); }
  double operator()(double x1) const { return eval({x1, 0.0}); }

  double eval(const Vec2& xt) const {
    switch (kind_) {
      case SurfaceKind::flat:
        return spec_.offset;
      case SurfaceKind::sinusoid:
        return spec_.offset +
               spec_.amplitude1 * std::sin(2.0 * pi * xt[0] / spec_.period1 + spec_.phase1) +
               spec_.amplitude2 * std::sin(2.0 * pi * xt[1] / spec_.period2 + spec_.phase2);
      case SurfaceKind::piecewise_linear:
        return eval_pwl(xt[0]);
      case SurfaceKind::tabulated:
        return eval_table(xt[0]);
      case SurfaceKind::mollified:
        return eval_mollified(xt);
    }
    return 0.0;
  }

  /// grad f where defined (one-sided from the right at kinks).
  Vec2 gradient(const Vec2& xt) const {
    switch (kind_) {
      case SurfaceKind::flat:
        return {0.0, 0.0};
      case SurfaceKind::sinusoid:
        return {spec_.amplitude1 * 2.0 * pi / spec_.period1 *
                    std::cos(2.0 * pi * xt[0] / spec_.period1 + spec_.phase1),
                spec_.amplitude2 * 2.0 * pi / spec_.period2 *
                    std::cos(2.0 * pi * xt[1] / spec_.period2 + spec_.phase2)};
      case SurfaceKind::piecewise_linear:
      case SurfaceKind::tabulated: {
        const double h = 1e-7;
        return {(eval({xt[0] + h, xt[1]}) - eval(xt)) / h, 0.0};
      }
      case SurfaceKind::mollified:
        return grad_mollified(xt);
    }
    return {0.0, 0.0};
  }

  double jacobian(const Vec2& xt) const {
    Vec2 g = gradient(xt);
    return std::sqrt(1.0 + g[0] * g[0] + g[1] * g[1]);
  }

  /// True when grad f is continuous, which the Nystrom quadrature requires.
  bool is_smooth() const {
    return kind_ == SurfaceKind::flat || kind_ == SurfaceKind::sinusoid ||
           kind_ == SurfaceKind::mollified;
  }

  SurfaceKind kind() const { return kind_; }

private:
  friend SurfaceProfile make_surface(const SurfaceSpec&);
  friend SurfaceProfile mollify(const SurfaceProfile&, double);

  SurfaceKind kind_ = SurfaceKind::flat;
  SurfaceSpec spec_;
  // mollified profiles wrap the base they smooth
  std::shared_ptr<const SurfaceProfile> base_;
  double moll_eps_ = 0.0, moll_delta_ = 0.0;
  bool base_is_1d_ = true;

  double eval_pwl(double x) const {
    const auto& xs = spec_.knots_x;
    const auto& fs = spec_.knots_f;
    if (x <= xs.front()) return fs.front();
    if (x >= xs.back()) return fs.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return fs[i] + t * (fs[i + 1] - fs[i]);
  }

  double eval_table(double x) const {
    const auto& v = spec_.table;
    const double dx = spec_.table_spacing;
    const double period = dx * static_cast<double>(v.size());
    double s = std::fmod(x, period);
    if (s < 0.0) s += period;
    double u = s / dx;
    std::size_t i = std::min(static_cast<std::size_t>(u), v.size() - 1);
    double t = u - static_cast<double>(i);
    double f0 = v[i], f1 = v[(i + 1) % v.size()];
    return f0 + t * (f1 - f0);
  }

  // Quartic bump psi(t) ~ (1-|t|^2)^4 on |t|<1, scaled to radius delta and
  // normalized by the same tensor Gauss rule used for the convolution, so
  // mollifying a constant reproduces it exactly.
  static double bump(double s) {
    double q = 1.0 - s * s;
    return q > 0.0 ? q * q * q * q : 0.0;
  }
  static double bump_deriv(double s) {
    double q = 1.0 - s * s;
    return q > 0.0 ? -8.0 * s * q * q * q : 0.0;
  }

  double eval_mollified(const Vec2& xt) const {
    const auto& gr = gauss16();
    const double d = moll_delta_;
    double acc = 0.0, norm = 0.0;
    if (base_is_1d_) {
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        double w = gr.w[i] * bump(gr.x[i]);
        acc += w * base_->eval({xt[0] - d * gr.x[i], xt[1]});
        norm += w;
      }
    } else {
      for (std::size_t i = 0; i < gr.x.size(); ++i)
        for (std::size_t j = 0; j < gr.x.size(); ++j) {
          double w = gr.w[i] * gr.w[j] * bump(std::hypot(gr.x[i], gr.x[j]));
          acc += w * base_->eval({xt[0] - d * gr.x[i], xt[1] - d * gr.x[j]});
          norm += w;
        }
    }
    return acc / norm + 0.5 * moll_eps_;
  }

  Vec2 grad_mollified(const Vec2& xt) const {
    // (psi_d * f)' = (1/d) integral psi'(t) f(x - d t) dt with the matching
    // normalization; exact for the smoothed profile up to quadrature error.
    const auto& gr = gauss16();
    const double d = moll_delta_;
    Vec2 g{0.0, 0.0};
    double norm = 0.0;
    if (base_is_1d_) {
      for (std::size_t i = 0; i < gr.x.size(); ++i) {
        norm += gr.w[i] * bump(gr.x[i]);
        g[0] += gr.w[i] * bump_deriv(gr.x[i]) * base_->eval({xt[0] - d * gr.x[i], xt[1]});
      }
      g[0] /= -d * norm;  // d/dx f(x - d t) pairs with -psi'/d after parts
      return g;
    }
    for (std::size_t i = 0; i < gr.x.size(); ++i)
      for (std::size_t j = 0; j < gr.x.size(); ++j) {
        double r = std::hypot(gr.x[i], gr.x[j]);
        double w = gr.w[i] * gr.w[j];
        norm += w * bump(r);
        double db = bump_deriv(r);
        double fx = base_->eval({xt[0] - d * gr.x[i], xt[1] - d * gr.x[j]});
        if (r > 0.0) {
          g[0] += w * db * (gr.x[i] / r) * fx;
          g[1] += w * db * (gr.x[j] / r) * fx;
        }
      }
    g[0] /= -d * norm;
    g[1] /= -d * norm;
    return g;
  }
};

/// Builds a profile from its spec, validating height bounds and the declared
/// Lipschitz constant against sampled difference quotients.
inline SurfaceProfile make_surface(const SurfaceSpec& spec) {
  SurfaceProfile p;
  p.kind_ = spec.kind;
  p.spec_ = spec;
  double actual_L = 0.0;
  switch (spec.kind) {
    case SurfaceKind::flat:
      if (!std::isfinite(spec.offset)) throw invalid_input("make_surface: non-finite height");
      p.f_minus = p.f_plus = spec.offset;
      actual_L = 0.0;
      break;
    case SurfaceKind::sinusoid: {
      if (spec.period1 <= 0.0 || spec.period2 <= 0.0)
        throw invalid_input("make_surface: sinusoid period must be positive");
      double l1 = std::abs(spec.amplitude1) * 2.0 * pi / spec.period1;
      double l2 = std::abs(spec.amplitude2) * 2.0 * pi / spec.period2;
      actual_L = std::hypot(l1, l2);
      double range = std::abs(spec.amplitude1) + std::abs(spec.amplitude2);
      p.f_minus = spec.offset - range;
      p.f_plus = spec.offset + range;
      break;
    }
    case SurfaceKind::piecewise_linear: {
      if (spec.knots_x.size() < 2 || spec.knots_x.size() != spec.knots_f.size())
        throw invalid_input("make_surface: piecewise-linear needs matching knot arrays");
      double lo = spec.knots_f[0], hi = spec.knots_f[0];
      for (std::size_t i = 0; i + 1 < spec.knots_x.size(); ++i) {
        double dx = spec.knots_x[i + 1] - spec.knots_x[i];
        if (dx <= 0.0) throw invalid_input("make_surface: knots must be increasing");
        actual_L = std::max(actual_L, std::abs(spec.knots_f[i + 1] - spec.knots_f[i]) / dx);
      }
      for (double f : spec.knots_f) { lo = std::min(lo, f); hi = std::max(hi, f); }
      p.f_minus = lo;
      p.f_plus = hi;
      break;
    }
    case SurfaceKind::tabulated: {
      if (spec.table.size() < 2 || spec.table_spacing <= 0.0)
        throw invalid_input("make_surface: tabulated needs >= 2 samples, positive spacing");
      double lo = spec.table[0], hi = spec.table[0];
      for (std::size_t i = 0; i < spec.table.size(); ++i) {
        double next = spec.table[(i + 1) % spec.table.size()];
        actual_L = std::max(actual_L, std::abs(next - spec.table[i]) / spec.table_spacing);
        lo = std::min(lo, spec.table[i]);
        hi = std::max(hi, spec.table[i]);
      }
      p.f_minus = lo;
      p.f_plus = hi;
      break;
    }
    case SurfaceKind::mollified:
      throw invalid_input("make_surface: build the base profile, then call mollify");
  }
  if (spec.declared_L >= 0.0) {
    if (actual_L > spec.declared_L + 1e-9)
      throw invalid_input("make_surface: sampled slope exceeds declared Lipschitz constant");
    p.L = spec.declared_L;
  } else {
    p.L = actual_L;
  }
  if (p.f_minus > p.f_plus) throw invalid_input("make_surface: f_minus > f_plus");
  return p;
}

/// Smooth Lipschitz approximant f_eps = psi_delta * f + eps/2, delta=eps/(3L).
/// Guarantees (tested, not just asserted): Lipschitz constant <= L,
/// f_eps >= f + eps/6, and ||f_eps - f||_inf < eps.
inline SurfaceProfile mollify(const SurfaceProfile& f, double eps) {
  if (!(eps > 0.0)) throw invalid_input("mollify: eps must be positive");
  if (f.L == 0.0) {
    // convolution of a constant is the constant; only the eps/2 shift remains
    SurfaceSpec s;
    s.kind = SurfaceKind::flat;
    s.offset = f.f_plus + 0.5 * eps;
    return make_surface(s);
  }
  SurfaceProfile p;
  p.kind_ = SurfaceKind::mollified;
  p.base_ = std::make_shared<SurfaceProfile>(f);
  p.moll_eps_ = eps;
  p.moll_delta_ = eps / (3.0 * f.L);
  p.base_is_1d_ = (f.kind() != SurfaceKind::sinusoid) || (f.spec_.amplitude2 == 0.0);
  p.L = f.L;
  p.f_minus = f.f_minus + eps / 6.0;
  p.f_plus = f.f_plus + eps;
  return p;
}

/// Cone of non-tangential approach above the apex.
struct NonTangentialCone {
  std::array<double, 3> apex{0.0, 0.0, 0.0};  // (x~, f(x~))
  double L_star = 2.0;                        // cone slope, must exceed surface L
};

inline bool cone_contains(const NonTangentialCone& cone, const std::array<double, 3>& y) {
  double lateral = std::hypot(y[0] - cone.apex[0], y[1] - cone.apex[1]);
  return y[2] - cone.apex[2] >= cone.L_star * lateral;
}

/// A sufficient constant for |z - x| <= alpha |z - y| over apex x in Gamma,
/// y in Gamma, z in the cone at x. Derived from dist(z,Gamma) >=
/// (vertical gap)/sqrt(1+L^2) and the cone inequality; tight when the
/// surface rises toward z at full slope L.
inline double cone_alpha(double L, double L_star) {
  if (!(L_star > L)) throw invalid_input("cone_alpha: need L_star > L");
  return std::sqrt(1.0 + L * L) * std::sqrt(1.0 + L_star * L_star) / (L_star - L);
}

}  // namespace rscat::geometry
