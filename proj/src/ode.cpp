#include "bandsolve/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bandsolve {

namespace {

using Vec2 = std::array<double, 2>;

inline Vec2 f_eval(const Vec2& y, double kappa) {
  return {y[1] / std::sqrt(1.0 + y[1] * y[1]), kappa * y[0]};
}

void require_finite_params(const ModelParams& p) {
  if (!std::isfinite(p.kappa) || !std::isfinite(p.lambda) || !std::isfinite(p.u0))
    throw std::domain_error("non-finite model parameters");
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Two-point quintic Hermite on [ra, rb] from values, first and second
// derivatives at both ends (divided differences with repeated nodes).
double hermite5(double ra, double rb, double y0, double d0, double s0,
                double y1, double d1, double s1, double r) {
  const double h = rb - ra;
  const double d01 = (y1 - y0) / h;
  const double f001 = (d01 - d0) / h;
  const double f011 = (d1 - d01) / h;
  const double f0001 = (f001 - 0.5 * s0) / h;
  const double f0011 = (f011 - f001) / h;
  const double f0111 = (0.5 * s1 - f011) / h;
  const double f00011 = (f0011 - f0001) / h;
  const double f00111 = (f0111 - f0011) / h;
  const double f000111 = (f00111 - f00011) / h;
  const double x0 = r - ra;
  const double x1 = r - rb;
  return y0 + x0 * (d0 + x0 * (0.5 * s0 + x0 * (f0001 + x1 * (f00011 + x1 * f000111))));
}

// State derivatives in closed form: u'' = kappa*u/(1+v^2)^{3/2}, v'' = kappa*u'.
struct EndpointData {
  double u, du, ddu, v, dv, ddv;
};

EndpointData endpoint_data(const PhaseState& s, double kappa) {
  const double c2 = 1.0 + s.v * s.v;
  const double c = std::sqrt(c2);
  const double du = s.v / c;
  return {s.u, du, kappa * s.u / (c2 * c), s.v, kappa * s.u, kappa * du};
}

PhaseState interpolate(const PhaseState& a, const PhaseState& b, double kappa, double r) {
  const EndpointData ea = endpoint_data(a, kappa);
  const EndpointData eb = endpoint_data(b, kappa);
  PhaseState out;
  out.r = r;
  out.u = hermite5(a.r, b.r, ea.u, ea.du, ea.ddu, eb.u, eb.du, eb.ddu, r);
  out.v = hermite5(a.r, b.r, ea.v, ea.dv, ea.ddv, eb.v, eb.dv, eb.ddv, r);
  return out;
}

Profile zero_profile(const ModelParams& params, double r_max,
                     const IntegratorControl& ctrl) {
  Profile p;
  p.params = params;
  p.step_stats.abs_tol = ctrl.abs_tol;
  p.step_stats.rel_tol = ctrl.rel_tol;
  if (ctrl.sample_spacing > 0.0) {
    const double edge = 1e-12 * std::max(1.0, r_max);
    for (double r = 0.0; r < r_max - edge; r += ctrl.sample_spacing)
      p.samples.push_back({r, 0.0, 0.0});
  } else {
    p.samples.push_back({0.0, 0.0, 0.0});
  }
  p.samples.push_back({r_max, 0.0, 0.0});
  return p;
}

}  // namespace

double slope(const PhaseState& s) { return s.v / std::sqrt(1.0 + s.v * s.v); }

double angle(const PhaseState& s) { return std::asinh(s.v); }

double cosh_angle(const PhaseState& s) { return std::sqrt(1.0 + s.v * s.v); }

Derivatives rhs(const PhaseState& s, double kappa) {
  if (!std::isfinite(s.u) || !std::isfinite(s.v) || !std::isfinite(kappa))
    throw std::domain_error("rhs: non-finite input");
  if (kappa == 0.0)
    throw std::domain_error("rhs: kappa must be nonzero");
  const Vec2 f = f_eval({s.u, s.v}, kappa);
  return {f[0], f[1]};
}

double first_integral_residual(const PhaseState& s, const ModelParams& params) {
  if (params.kappa == 0.0)
    throw std::domain_error("first_integral_residual: kappa must be nonzero");
  const double raw = s.u * s.u - params.u0 * params.u0 -
                     (2.0 / params.kappa) * (cosh_angle(s) - 1.0);
  const double scale = std::max({1.0, params.u0 * params.u0, s.u * s.u});
  return raw / scale;
}

double Profile::r_min() const {
  if (samples.empty()) throw std::logic_error("empty profile");
  return samples.front().r;
}

double Profile::r_max() const {
  if (samples.empty()) throw std::logic_error("empty profile");
  return samples.back().r;
}

PhaseState Profile::state_at(double r) const {
  if (samples.empty()) throw std::logic_error("empty profile");
  const double lo = samples.front().r, hi = samples.back().r;
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  if (r < lo - slack || r > hi + slack)
    throw std::domain_error(fmt("state_at: r=%.17g outside [%.17g, ...]", r, lo));
  const double rc = std::clamp(r, lo, hi);
  auto it = std::lower_bound(samples.begin(), samples.end(), rc,
                             [](const PhaseState& s, double x) { return s.r < x; });
  if (it != samples.end() && it->r == rc) return *it;
  const PhaseState& b = *it;
  const PhaseState& a = *(it - 1);
  return interpolate(a, b, params.kappa, rc);
}

Profile integrate_ivp(const ModelParams& params, double r_max,
                      const IntegratorControl& ctrl) {
  require_finite_params(params);
  if (params.kappa == 0.0)
    throw std::invalid_argument(
        "integrate_ivp: kappa must be nonzero (kappa = 0 surfaces are the "
        "closed-form hyperbolic cylinders)");
  if (params.lambda != 0.0)
    throw std::invalid_argument("integrate_ivp: apply normalize_lambda first");
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("integrate_ivp: r_max must be positive");
  if (!(ctrl.abs_tol > 0.0) || !(ctrl.rel_tol > 0.0) || !(ctrl.max_step > 0.0))
    throw std::invalid_argument("integrate_ivp: tolerances and max_step must be positive");

  if (params.u0 == 0.0) return zero_profile(params, r_max, ctrl);

  // Dormand-Prince 5(4), FSAL. The system is autonomous, so the c nodes
  // never appear explicitly.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double kappa = params.kappa;
  Profile p;
  p.params = params;
  p.step_stats.abs_tol = ctrl.abs_tol;
  p.step_stats.rel_tol = ctrl.rel_tol;
  p.samples.push_back({0.0, params.u0, 0.0});

  double r = 0.0;
  Vec2 y = {params.u0, 0.0};
  Vec2 k1 = f_eval(y, kappa);
  double h = ctrl.initial_step > 0.0
                 ? ctrl.initial_step
                 : std::min(ctrl.max_step, std::max(r_max / 100.0, 1e-6));
  h = std::min(h, r_max);
  double next_grid = ctrl.sample_spacing > 0.0 ? ctrl.sample_spacing : 0.0;
  bool rejected_last = false;

  for (std::size_t iter = 0;; ++iter) {
    if (iter >= ctrl.max_steps)
      throw integration_error("integrate_ivp: step budget exhausted");
    if (r >= r_max) break;
    bool last = false;
    if (r + h >= r_max) {
      h = r_max - r;
      last = true;
    }
    if (!(h > std::abs(r) * 1e-15 + 1e-300))
      throw integration_error("integrate_ivp: step size underflow");

    const Vec2 k2 = f_eval({y[0] + h * a21 * k1[0], y[1] + h * a21 * k1[1]}, kappa);
    const Vec2 k3 = f_eval({y[0] + h * (a31 * k1[0] + a32 * k2[0]),
                            y[1] + h * (a31 * k1[1] + a32 * k2[1])}, kappa);
    const Vec2 k4 = f_eval({y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                            y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])}, kappa);
    const Vec2 k5 = f_eval(
        {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
         y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])}, kappa);
    const Vec2 k6 = f_eval(
        {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
         y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])},
        kappa);
    const Vec2 y1v = {
        y[0] + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
        y[1] + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
    const Vec2 k7 = f_eval(y1v, kappa);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double sc =
          ctrl.abs_tol + ctrl.rel_tol * std::max(std::abs(y[i]), std::abs(y1v[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 2.0);
    if (!std::isfinite(err))
      throw integration_error("integrate_ivp: non-finite state (spacelike breakdown)");

    if (err <= 1.0) {
      const double r_new = last ? r_max : r + h;
      const PhaseState prev = {r, y[0], y[1]};
      const PhaseState cur = {r_new, y1v[0], y1v[1]};
      if (ctrl.sample_spacing > 0.0) {
        const double edge = 1e-12 * std::max(1.0, r_new);
        while (next_grid < r_new - edge) {
          if (next_grid > r + edge)
            p.samples.push_back(interpolate(prev, cur, kappa, next_grid));
          next_grid += ctrl.sample_spacing;
        }
        if (std::abs(next_grid - r_new) <= edge) next_grid += ctrl.sample_spacing;
      }
      p.samples.push_back(cur);
      p.step_stats.steps_accepted++;
      p.step_stats.max_step_taken = std::max(p.step_stats.max_step_taken, h);
      r = r_new;
      y = y1v;
      k1 = k7;
      double fac = 0.9 * std::pow(err > 1e-300 ? err : 1e-300, -0.2);
      fac = std::clamp(fac, 0.2, rejected_last ? 1.0 : 5.0);
      h = std::min(h * fac, ctrl.max_step);
      rejected_last = false;
    } else {
      p.step_stats.steps_rejected++;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      rejected_last = true;
    }
  }

  for (const PhaseState& s : p.samples) {
    const double res = std::abs(first_integral_residual(s, params));
    p.step_stats.max_residual = std::max(p.step_stats.max_residual, res);
  }
  if (p.step_stats.max_residual > ctrl.conserve_tol)
    throw integration_error(fmt(
        "integrate_ivp: first-integral residual %.3g exceeds conserve_tol %.3g",
        p.step_stats.max_residual, ctrl.conserve_tol));
  return p;
}

Profile extend_by_symmetry(const Profile& p) {
  if (p.samples.empty()) throw std::logic_error("empty profile");
  if (p.samples.front().r != 0.0 || p.samples.front().v != 0.0)
    throw std::invalid_argument(
        "extend_by_symmetry: profile must start at a critical point (r=0, v=0)");
  Profile out;
  out.params = p.params;
  out.step_stats = p.step_stats;
  out.samples.reserve(2 * p.samples.size() - 1);
  for (auto it = p.samples.rbegin(); it != p.samples.rend(); ++it)
    out.samples.push_back({-it->r, it->u, -it->v});
  out.samples.insert(out.samples.end(), p.samples.begin() + 1, p.samples.end());
  return out;
}

Profile reflect_sign(const Profile& p) {
  Profile out;
  out.params = p.params;
  out.params.u0 = -p.params.u0;
  out.step_stats = p.step_stats;
  out.samples.reserve(p.samples.size());
  for (const PhaseState& s : p.samples) out.samples.push_back({s.r, -s.u, -s.v});
  return out;
}

LambdaNormalization normalize_lambda(const ModelParams& params) {
  require_finite_params(params);
  if (params.kappa == 0.0) {
    if (params.lambda == 0.0) return {params, 0.0};
    throw std::invalid_argument(
        "normalize_lambda: kappa = 0 with lambda != 0 is the constant-curvature "
        "case; use the hyperbolic-cylinder generator instead");
  }
  LambdaNormalization n;
  n.shift = params.lambda / params.kappa;
  n.params = params;
  n.params.lambda = 0.0;
  return n;
}

SignCanonicalization canonicalize_sign(const ModelParams& params) {
  require_finite_params(params);
  SignCanonicalization c{params, false};
  if (params.u0 != 0.0 && params.kappa != 0.0 &&
      std::signbit(params.u0) != std::signbit(params.kappa)) {
    c.params.u0 = -params.u0;
    c.flipped = true;
  }
  return c;
}

double spacing_for_linear_interp(const ModelParams& params, double r_max, double eps) {
  if (!(eps > 0.0) || !(r_max > 0.0))
    throw std::invalid_argument("spacing_for_linear_interp: eps and r_max must be positive");
  const double m = std::abs(params.kappa) * std::max(1.0, std::abs(params.u0) + r_max);
  return std::sqrt(8.0 * eps / m);
}

}  // namespace bandsolve
