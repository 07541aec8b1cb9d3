// SPDX-License-Identifier: Apache-2.0
#include "apwcert/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "apwcert/errors.hpp"

namespace apwcert::sobolev {

using special::lm_count;
using special::lm_index;

namespace {

// W_p(x) = i_p(x)/x^p, entire in x^2, W_p(0) = 1/(2p+1)!!. Series keeps the
// small-argument regime away from underflow for large p.
double bessel_i_over_pow(int p, double x) {
  double prefac = 1.0;
  for (int n = 1; n <= p; ++n) prefac /= (2.0 * n + 1.0);
  double term = prefac, sum = prefac;
  const double x2 = x * x;
  for (int k = 1; k <= 500; ++k) {
    term *= x2 / (2.0 * k * (2.0 * (p + k) + 1.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

} // namespace

SphereFunction SphereFunction::zero(double R, int l_eval) {
  SphereFunction g;
  g.R = R;
  g.l_eval = l_eval;
  g.coeffs.assign(lm_count(l_eval), Complex(0.0, 0.0));
  return g;
}

Complex SphereFunction::evaluate(double theta, double phi) const {
  Complex sum = 0.0;
  for (int l = 0; l <= l_eval; ++l)
    for (int m = -l; m <= l; ++m) sum += coeffs[lm_index(l, m)] * special::spherical_harmonic(l, m, theta, phi);
  return sum;
}

std::string SphereFunction::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (int l = 0; l <= l_eval; ++l)
    for (int m = -l; m <= l; ++m) {
      const Complex c = coeffs[lm_index(l, m)];
      if (c == Complex(0.0, 0.0)) continue;
      arr.push_back({l, m, c.real(), c.imag()});
    }
  return arr.dump();
}

SphereFunction SphereFunction::from_json(const std::string& text, double R) {
  nlohmann::json arr = nlohmann::json::parse(text);
  int l_eval = 0;
  for (const auto& e : arr) l_eval = std::max(l_eval, e.at(0).get<int>());
  SphereFunction g = zero(R, l_eval);
  for (const auto& e : arr) {
    const int l = e.at(0).get<int>(), m = e.at(1).get<int>();
    if (std::abs(m) > l) throw ConfigError("sphere function entry with |m| > l");
    g.at(l, m) += Complex(e.at(2).get<double>(), e.at(3).get<double>());
  }
  return g;
}

double boundary_sobolev_norm(const SphereFunction& g, double s) {
  if (s < 0.0) throw std::invalid_argument("boundary_sobolev_norm: s >= 0 required");
  double sum = 0.0;
  for (int l = 0; l <= g.l_eval; ++l) {
    const double w = std::pow(1.0 + l * (l + 1.0) / (g.R * g.R), s);
    for (int m = -l; m <= l; ++m) sum += w * std::norm(g.at(l, m));
  }
  return g.R * std::sqrt(sum);
}

Complex BallFunction::evaluate(double r, double theta, double phi) const {
  Complex sum = 0.0;
  for (int l = 0; l <= l_eval; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int idx = lm_index(l, m);
      Complex radial;
      if (kind == Kind::ModifiedBessel) {
        radial = amp[idx] * (bessel_i_over_pow(l, r) / bessel_i_over_pow(l, R)) * std::pow(r / R, l);
      } else {
        radial = amp[idx] * std::pow(r, l) + amp2[idx] * std::pow(r, l + 2);
      }
      if (radial != Complex(0.0, 0.0)) sum += radial * special::spherical_harmonic(l, m, theta, phi);
    }
  }
  return sum;
}

SphereFunction BallFunction::trace() const {
  SphereFunction g = SphereFunction::zero(R, l_eval);
  for (int l = 0; l <= l_eval; ++l)
    for (int m = -l; m <= l; ++m) {
      const int idx = lm_index(l, m);
      if (kind == Kind::ModifiedBessel)
        g.coeffs[idx] = amp[idx];
      else
        g.coeffs[idx] = amp[idx] * std::pow(R, l) + amp2[idx] * std::pow(R, l + 2);
    }
  return g;
}

SphereFunction BallFunction::inward_normal_derivative() const {
  SphereFunction g = SphereFunction::zero(R, l_eval);
  for (int l = 0; l <= l_eval; ++l) {
    double dprof = 0.0;
    if (kind == Kind::ModifiedBessel) {
      // f = i_l(r)/i_l(R); f'(R) = [i_{l+1}(R) + (l/R) i_l(R)] / i_l(R)
      const double wl = bessel_i_over_pow(l, R);
      const double wl1 = bessel_i_over_pow(l + 1, R);
      dprof = wl1 * R / wl + l / R; // i_{l+1}/i_l = W_{l+1} R^{l+1} / (W_l R^l)
    }
    for (int m = -l; m <= l; ++m) {
      const int idx = lm_index(l, m);
      if (kind == Kind::ModifiedBessel) {
        g.coeffs[idx] = -amp[idx] * dprof;
      } else {
        g.coeffs[idx] = -(amp[idx] * double(l) * std::pow(R, l - 1) + amp2[idx] * (l + 2.0) * std::pow(R, l + 1));
      }
    }
  }
  return g;
}

BallFunction orthocomplement_extension(const SphereFunction& g) {
  BallFunction u;
  u.kind = BallFunction::Kind::ModifiedBessel;
  u.R = g.R;
  u.l_eval = g.l_eval;
  u.amp = g.coeffs;
  return u;
}

namespace {

// Radial reduction of the mode-diagonal H^2 pairing. For u = f(r) Y_lm with
// g = f/r^l, h1 = g'/r, h2 = (g'' - g'/r)/r^2:
//   ||u||^2      = int g^2 r^{2l} r^2 dr
//   ||grad u||^2 = int [ (h1 r^2 + l g)^2 + l(l+1) g^2 r^2 ] r^{2l-2} dr
//   ||D^2 u||^2  = int [ A r^{2l} + B l(2l+1) r^{2l-2}
//                        + g^2 l(l-1)(2l-1)(2l+1) r^{2l-4} ] r^2 dr
// with A = h2^2 r^4 + (3 + 2l^2 + 4l) h1^2 + (2 + 4l) h1 h2 r^2 + 2 h2 g l(l-1)
// and  B = 2 h1^2 r^2 + 4 h1 g (l-1).
//
// Profiles enter here rescaled by R^l (hatted): true (g, h1, h2) times R^l,
// with r^{2l} replaced by (r/R)^{2l}. That keeps every factor O(1) for large
// l instead of pairing r^{2l} against R^{-2l} amplitudes.
struct HattedProfile {
  double g, h1, h2;
};

// Bilinear H^2 integrand between two hatted profiles sharing (l, m).
double h2_bilinear_integrand(int l, double rho, double R, const HattedProfile& a, const HattedProfile& b) {
  const double r2 = rho * rho;
  const double t = rho / R;
  const double p2l = std::pow(t, 2 * l);
  const double l2 = static_cast<double>(l) * l;
  const double A = a.h2 * b.h2 * r2 * r2 + (3.0 + 2.0 * l2 + 4.0 * l) * a.h1 * b.h1 +
                   (1.0 + 2.0 * l) * (a.h1 * b.h2 + a.h2 * b.h1) * r2 + (a.h2 * b.g + a.g * b.h2) * l * (l - 1.0);
  const double B = 2.0 * a.h1 * b.h1 * r2 + 2.0 * (a.h1 * b.g + a.g * b.h1) * (l - 1.0);
  double hess = A * p2l;
  if (l >= 1) hess += B * l * (2.0 * l + 1.0) * p2l / r2;
  if (l >= 2) hess += a.g * b.g * l * (l - 1.0) * (2.0 * l - 1.0) * (2.0 * l + 1.0) * p2l / (r2 * r2);
  const double pl = std::pow(t, l);
  const double fa = a.g * pl, fb = b.g * pl;
  const double da = (a.h1 * r2 + l * a.g) * pl, db = (b.h1 * r2 + l * b.g) * pl;
  const double grad = da * db + l * (l + 1.0) * fa * fb;
  const double val = fa * fb * r2;
  return hess * r2 + grad + val;
}

} // namespace

double h2_ball_norm(const BallFunction& u) {
  double total = 0.0;
  for (int l = 0; l <= u.l_eval; ++l) {
    // Per-mode amplitudes, profile scaling folded in so both profile and
    // amplitude stay O(1) (see HattedProfile note).
    double s1 = 0.0, s2 = 0.0, cr = 0.0;
    const double Rl = std::pow(u.R, l);
    for (int m = -l; m <= l; ++m) {
      const int idx = lm_index(l, m);
      if (u.kind == BallFunction::Kind::ModifiedBessel) {
        s1 += std::norm(u.amp[idx]);
      } else {
        const Complex a1 = u.amp[idx] * Rl;
        const Complex a2 = u.amp2[idx] * Rl * u.R * u.R;
        s1 += std::norm(a1);
        s2 += std::norm(a2);
        cr += (std::conj(a1) * a2).real();
      }
    }
    if (s1 == 0.0 && s2 == 0.0 && cr == 0.0) continue;

    const int npts = 200 + 2 * l;
    const auto rule = special::gauss_legendre(npts);
    const double wR = (u.kind == BallFunction::Kind::ModifiedBessel) ? bessel_i_over_pow(l, u.R) : 1.0;
    double mode = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double rho = 0.5 * u.R * (rule.nodes[i] + 1.0);
      const double w = 0.5 * u.R * rule.weights[i];
      if (u.kind == BallFunction::Kind::ModifiedBessel) {
        // f = i_l(rho)/i_l(R): hatted g = W_l(rho)/W_l(R), h1 = W_{l+1}/W_l(R),
        // h2 = W_{l+2}/W_l(R) with W_p = i_p(x)/x^p (exact identities).
        const HattedProfile p{bessel_i_over_pow(l, rho) / wR, bessel_i_over_pow(l + 1, rho) / wR,
                              bessel_i_over_pow(l + 2, rho) / wR};
        mode += w * s1 * h2_bilinear_integrand(l, rho, u.R, p, p);
      } else {
        // pair profiles (r/R)^l and (r/R)^{l+2}
        const HattedProfile pa{1.0, 0.0, 0.0};
        const double iR2 = 1.0 / (u.R * u.R);
        const HattedProfile pb{rho * rho * iR2, 2.0 * iR2, 0.0};
        mode += w * (s1 * h2_bilinear_integrand(l, rho, u.R, pa, pa) +
                     s2 * h2_bilinear_integrand(l, rho, u.R, pb, pb) +
                     2.0 * cr * h2_bilinear_integrand(l, rho, u.R, pa, pb));
      }
    }
    total += mode;
  }
  return std::sqrt(total);
}

H2BoundProfile h2_bound_constant(double R, int l_eval) {
  if (l_eval > 100) throw std::invalid_argument("h2_bound_constant: l_eval <= 100");
  H2BoundProfile prof;
  prof.per_l.resize(l_eval + 1);
  for (int l = 0; l <= l_eval; ++l) {
    SphereFunction g = SphereFunction::zero(R, l);
    g.at(l, 0) = 1.0;
    const BallFunction ext = orthocomplement_extension(g);
    const double num = h2_ball_norm(ext);
    const double den = boundary_sobolev_norm(g, 1.5);
    prof.per_l[l] = num / den;
    prof.max_ratio = std::max(prof.max_ratio, prof.per_l[l]);
  }
  return prof;
}

BallFunction trace_right_inverse_Z1(const SphereFunction& g0, const SphereFunction& g1) {
  if (g0.R != g1.R) throw std::invalid_argument("trace_right_inverse_Z1: mismatched spheres");
  const int L = std::max(g0.l_eval, g1.l_eval);
  BallFunction u;
  u.kind = BallFunction::Kind::PowerPair;
  u.R = g0.R;
  u.l_eval = L;
  u.amp.assign(lm_count(L), Complex(0.0, 0.0));
  u.amp2.assign(lm_count(L), Complex(0.0, 0.0));
  const double R = g0.R;
  for (int l = 0; l <= L; ++l) {
    const double Rl = std::pow(R, l);
    for (int m = -l; m <= l; ++m) {
      const Complex a = (l <= g0.l_eval) ? g0.at(l, m) : Complex(0.0, 0.0);
      const Complex b = (l <= g1.l_eval) ? g1.at(l, m) : Complex(0.0, 0.0);
      // c1 R^l + c2 R^{l+2} = a ;  -(c1 l R^{l-1} + c2 (l+2) R^{l+1}) = b
      const Complex c2 = -(b + static_cast<double>(l) * a / R) / (2.0 * Rl * R);
      const Complex c1 = (a - c2 * Rl * R * R) / Rl;
      u.amp[lm_index(l, m)] = c1;
      u.amp2[lm_index(l, m)] = c2;
    }
  }
  return u;
}

std::pair<SphereFunction, SphereFunction> j_flip(const SphereFunction& g0, const SphereFunction& g1) {
  SphereFunction f1 = g1;
  for (auto& c : f1.coeffs) c = -c;
  return {g0, f1};
}

double LayeredComponent::evaluate(double r) const {
  if (r > outer_boundary) return 0.0;
  if (r > inner_boundary) return on_region(r);
  if (!has_fill) return on_region(r);
  return fill_c1 + fill_c2 * r * r;
}

std::vector<LayeredComponent> layered_decomposition(const std::vector<RadialDatum>& values,
                                                    const std::vector<double>& radii) {
  const int N = static_cast<int>(values.size());
  if (N < 1) throw GeometryUnsupported("layered_decomposition: no regions");
  if (radii.size() + 1 != values.size())
    throw GeometryUnsupported("layered_decomposition: need one radius per internal boundary");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1])) throw GeometryUnsupported("layered_decomposition: radii must increase");
  for (double r : radii)
    if (!(r > 0.0)) throw GeometryUnsupported("layered_decomposition: radii must be positive");

  // region alpha (1-based, outermost first) occupies (b_in, b_out) with
  // b_out = radii[N-alpha] (or +inf for alpha=1), b_in = radii[N-alpha-1]
  // (or 0 for alpha=N)
  auto outer_of = [&](int alpha) {
    return alpha == 1 ? std::numeric_limits<double>::infinity() : radii[N - alpha];
  };
  auto inner_of = [&](int alpha) { return alpha == N ? 0.0 : radii[N - alpha - 1]; };

  std::vector<RadialDatum> residual = values;
  std::vector<LayeredComponent> out;
  out.reserve(N);
  for (int alpha = 1; alpha <= N; ++alpha) {
    LayeredComponent v;
    v.alpha = alpha;
    v.outer_boundary = outer_of(alpha);
    v.inner_boundary = inner_of(alpha);
    v.on_region = residual[alpha - 1].f;
    if (alpha < N) {
      const double b = v.inner_boundary;
      const double t0 = residual[alpha - 1].f(b);
      const double t1 = residual[alpha - 1].df(b);
      // Z1 J T1: C^1-matched quadratic fill c1 + c2 r^2 on the hole
      v.has_fill = true;
      v.fill_c2 = t1 / (2.0 * b);
      v.fill_c1 = t0 - v.fill_c2 * b * b;
      for (int beta = alpha + 1; beta <= N; ++beta) {
        const RadialDatum prev = residual[beta - 1];
        const double c1 = v.fill_c1, c2 = v.fill_c2;
        residual[beta - 1] = RadialDatum{[prev, c1, c2](double r) { return prev.f(r) - (c1 + c2 * r * r); },
                                         [prev, c2](double r) { return prev.df(r) - 2.0 * c2 * r; }};
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

Surrogate continuous_surrogate(const std::vector<SphereFunction>& jumps) {
  Surrogate s;
  double sum_sq = 0.0;
  for (const auto& g : jumps) {
    SphereFunction neg = g;
    for (auto& c : neg.coeffs) c = -c;
    BallFunction phi = orthocomplement_extension(neg);
    const double n = h2_ball_norm(phi);
    sum_sq += n * n;
    // zero-jump check: trace(phi) + g must vanish coefficient-wise
    const SphereFunction tr = phi.trace();
    for (size_t i = 0; i < g.coeffs.size(); ++i)
      s.max_trace_residual = std::max(s.max_trace_residual, std::abs(tr.coeffs[i] + g.coeffs[i]));
    s.corrections.push_back(std::move(phi));
  }
  s.dist_upper = std::sqrt(sum_sq);
  return s;
}

} // namespace apwcert::sobolev
