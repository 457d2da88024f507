#include "bandsolve/analysis.hpp"

#include "bandsolve/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandsolve {

namespace {

constexpr double kZeroTol = 1e-8;  // |u| below this counts as a zero

double curvature(const PhaseState& s, double kappa) {
  const double c2 = 1.0 + s.v * s.v;
  return kappa * s.u / (c2 * std::sqrt(c2));
}

void require_pendent(const ModelParams& params, const char* who) {
  if (!(params.kappa < 0.0) || !(params.u0 < 0.0))
    throw std::invalid_argument(std::string(who) + ": requires kappa < 0 and u0 < 0");
  if (params.lambda != 0.0)
    throw std::invalid_argument(std::string(who) + ": apply normalize_lambda first");
}

// Bisection for a scalar function of r on a profile interpolant.
template <typename F>
double bisect_on(const F& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double locate_first_zero(const Profile& p) {
  for (std::size_t i = 1; i < p.samples.size(); ++i) {
    if ((p.samples[i - 1].u < 0.0) != (p.samples[i].u < 0.0) || p.samples[i].u == 0.0) {
      return bisect_on([&](double r) { return p.state_at(r).u; },
                       p.samples[i - 1].r, p.samples[i].r);
    }
  }
  return -1.0;
}

ComparisonVerdict finish(ComparisonVerdict v, double tol_compare) {
  v.min_slack = v.slacks.empty()
                    ? 0.0
                    : *std::min_element(v.slacks.begin(), v.slacks.end());
  v.passed = v.min_slack >= -tol_compare;
  return v;
}

}  // namespace

SessileShapeReport sessile_shape_check(const Profile& p) {
  const double kappa = p.params.kappa, u0 = p.params.u0;
  if (!(kappa > 0.0) || !(u0 > 0.0))
    throw std::invalid_argument("sessile_shape_check: requires kappa > 0 and u0 > 0");
  if (p.samples.size() < 3 || p.samples.front().r != 0.0)
    throw std::invalid_argument("sessile_shape_check: need an axis-anchored profile");

  SessileShapeReport rep;
  const auto& s = p.samples;

  // Richardson extrapolation of v(r)/r from the first two off-axis samples;
  // the remainder is ~ kappa*c4*r2^4/5 with c4 = kappa^2*u0*(1-3*kappa*u0^2)/24.
  const double r1 = s[1].r, r2 = s[2].r;
  const double f1 = s[1].v / r1, f2 = s[2].v / r2;
  rep.initial_curvature = (f1 * r2 * r2 - f2 * r1 * r1) / (r2 * r2 - r1 * r1);
  const double c4 = kappa * kappa * u0 * (1.0 - 3.0 * kappa * u0 * u0) / 24.0;
  rep.initial_curvature_tol =
      std::max(1e-9, 4.0 * std::abs(kappa * c4 / 5.0) * std::pow(r2, 4));

  rep.min_increase = std::numeric_limits<double>::infinity();
  rep.min_slope_increase = std::numeric_limits<double>::infinity();
  rep.min_curvature = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) {
    rep.min_increase = std::min(rep.min_increase, s[i].u - s[i - 1].u);
    rep.min_slope_increase = std::min(rep.min_slope_increase, s[i].v - s[i - 1].v);
  }
  for (const PhaseState& q : s)
    rep.min_curvature = std::min(rep.min_curvature, curvature(q, kappa));

  const double w = kappa * u0 * p.r_max();
  rep.tail_slope = slope(s.back());
  rep.tail_slope_threshold = w / std::sqrt(1.0 + w * w);

  // u'' decays once 5*kappa*u^2/2 exceeds 1 - kappa*u0^2/2 (with margin).
  const double gate = 1.02 * std::max(0.0, 1.0 - kappa * u0 * u0 / 2.0) + 1e-12;
  rep.tail_curvature_decrease = std::numeric_limits<double>::infinity();
  int tail_count = 0;
  double prev = 0.0;
  for (const PhaseState& q : s) {
    if (2.5 * kappa * q.u * q.u < gate) continue;
    const double cur = curvature(q, kappa);
    if (tail_count > 0)
      rep.tail_curvature_decrease = std::min(rep.tail_curvature_decrease, prev - cur);
    prev = cur;
    ++tail_count;
  }
  rep.tail_checked = tail_count >= 3;

  rep.passed = std::abs(rep.initial_curvature - kappa * u0) <= rep.initial_curvature_tol &&
               rep.min_increase > 0.0 && rep.min_slope_increase > 0.0 &&
               rep.min_curvature > 0.0 && rep.tail_slope > rep.tail_slope_threshold &&
               (!rep.tail_checked || rep.tail_curvature_decrease > -1e-14);
  return rep;
}

double first_zero(const ModelParams& params, const IntegratorControl& ctrl) {
  require_pendent(params, "first_zero");
  double window = 3.0 * std::sqrt(params.u0 * params.u0 - 2.0 / params.kappa);
  for (int attempt = 0; attempt < 6; ++attempt, window *= 2.0) {
    const Profile p = integrate_ivp(params, window, ctrl);
    const double z = locate_first_zero(p);
    if (z > 0.0) return z;
  }
  throw integration_error("first_zero: no sign change found (unexpected)");
}

double max_slope_closed_form(const ModelParams& params) {
  require_pendent(params, "max_slope_closed_form");
  const double k = params.kappa, u0 = params.u0;
  return (-u0 / (2.0 - k * u0 * u0)) * std::sqrt(k * k * u0 * u0 - 4.0 * k);
}

PendentSummary pendent_summary(const ModelParams& params,
                               const IntegratorControl& ctrl) {
  require_pendent(params, "pendent_summary");
  PendentSummary sum;
  sum.first_zero_lower = std::sqrt(params.u0 * params.u0 - 2.0 / params.kappa);
  sum.first_zero_lower_primitive = std::sqrt(-2.0 / params.kappa);
  sum.r_o = first_zero(params, ctrl);
  sum.period = 4.0 * sum.r_o;
  sum.profile = integrate_ivp(params, 2.0 * sum.period, ctrl);

  const auto& s = sum.profile.samples;
  sum.amplitude = 0.0;
  sum.grid_max_slope = 0.0;
  sum.inflection_margin = std::numeric_limits<double>::infinity();
  for (const PhaseState& q : s) {
    sum.amplitude = std::max(sum.amplitude, std::abs(q.u));
    sum.grid_max_slope = std::max(sum.grid_max_slope, std::abs(slope(q)));
    if (std::abs(q.u) >= kZeroTol) {
      const double ratio =
          std::abs(curvature(q, params.kappa)) / (std::abs(params.kappa) * std::abs(q.u));
      sum.inflection_margin = std::min(sum.inflection_margin, ratio);
    }
  }
  sum.max_slope = std::abs(slope(sum.profile.state_at(sum.r_o)));

  sum.extrema_locations.push_back(0.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1].r == 0.0) continue;
    if ((s[i - 1].v < 0.0) != (s[i].v < 0.0)) {
      sum.extrema_locations.push_back(bisect_on(
          [&](double r) { return sum.profile.state_at(r).v; }, s[i - 1].r, s[i].r));
    }
  }

  const int n = 512;
  sum.period_residual = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = sum.period * i / n;
    const double d =
        std::abs(sum.profile.state_at(r + sum.period).u - sum.profile.state_at(r).u);
    sum.period_residual = std::max(sum.period_residual, d);
  }
  return sum;
}

ComparisonVerdict compare_kappa_ivp(double u0, double kappa1, double kappa2,
                                    const std::vector<double>& r_grid,
                                    double tol_compare,
                                    const IntegratorControl& ctrl) {
  if (!(0.0 < kappa1 && kappa1 < kappa2))
    throw std::invalid_argument("compare_kappa_ivp: need 0 < kappa1 < kappa2");
  if (!(u0 > 0.0))
    throw std::invalid_argument("compare_kappa_ivp: need u0 > 0");
  ComparisonVerdict v;
  v.relation = Relation::ivp_kappa;
  v.grid = r_grid;
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const Profile p1 = integrate_ivp({kappa1, 0.0, u0}, r_max, ctrl);
  const Profile p2 = integrate_ivp({kappa2, 0.0, u0}, r_max, ctrl);
  for (double r : v.grid) {
    if (!(r > 0.0))
      throw std::invalid_argument("compare_kappa_ivp: grid must avoid the axis r = 0");
    const PhaseState a = p1.state_at(r), b = p2.state_at(r);
    v.slacks.push_back(std::min(b.u - a.u, slope(b) - slope(a)));
  }
  return finish(std::move(v), tol_compare);
}

ComparisonVerdict compare_kappa_bvp(double a, double beta, double kappa1,
                                    double kappa2, int n_interior,
                                    double tol_compare,
                                    const IntegratorControl& ctrl) {
  if (!(0.0 < kappa1 && kappa1 < kappa2))
    throw std::invalid_argument("compare_kappa_bvp: need 0 < kappa1 < kappa2");
  if (!(beta > 0.0))
    throw std::invalid_argument("compare_kappa_bvp: need beta > 0");
  ComparisonVerdict v;
  v.relation = Relation::bvp_kappa;
  const ShootingResult s1 = solve_bvp({a, beta, kappa1}, 1e-10, ctrl);
  const ShootingResult s2 = solve_bvp({a, beta, kappa2}, 1e-10, ctrl);
  // Heights compare on the closed interval, slopes only between the shared
  // critical point at 0 and the shared contact slope at a.
  for (int i = 0; i <= n_interior + 1; ++i) {
    const double r = a * i / (n_interior + 1);
    v.grid.push_back(r);
    const PhaseState q1 = s1.profile.state_at(r), q2 = s2.profile.state_at(r);
    double slack = q1.u - q2.u;
    if (i > 0 && i <= n_interior)
      slack = std::min(slack, slope(q1) - slope(q2));
    v.slacks.push_back(slack);
  }
  return finish(std::move(v), tol_compare);
}

ComparisonVerdict compare_u0(double kappa, double u0, double delta,
                             const std::vector<double>& r_grid, double tol_compare,
                             const IntegratorControl& ctrl) {
  if (!(kappa > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("compare_u0: need kappa > 0 and delta > 0");
  ComparisonVerdict v;
  v.relation = Relation::u0_shift;
  v.grid = r_grid;
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const Profile p = integrate_ivp({kappa, 0.0, u0}, r_max, ctrl);
  const Profile q = integrate_ivp({kappa, 0.0, u0 + delta}, r_max, ctrl);
  for (double r : v.grid) {
    if (!(r > 0.0))
      throw std::invalid_argument("compare_u0: grid must avoid the axis r = 0");
    v.slacks.push_back(q.state_at(r).u - delta - p.state_at(r).u);
  }
  return finish(std::move(v), tol_compare);
}

ComparisonVerdict compare_kappa_pendent(double u0, double kappa1, double kappa2,
                                        int n_grid, double tol_compare,
                                        const IntegratorControl& ctrl) {
  if (!(kappa1 < kappa2 && kappa2 < 0.0))
    throw std::invalid_argument("compare_kappa_pendent: need kappa1 < kappa2 < 0");
  require_pendent({kappa1, 0.0, u0}, "compare_kappa_pendent");
  ComparisonVerdict v;
  v.relation = Relation::pendent_kappa;
  const double window =
      0.5 * std::min(first_zero({kappa1, 0.0, u0}, ctrl), first_zero({kappa2, 0.0, u0}, ctrl));
  v.note = "window (0, min(r_o, r_o')/2]: partial monotonicity only";
  const Profile p1 = integrate_ivp({kappa1, 0.0, u0}, window, ctrl);
  const Profile p2 = integrate_ivp({kappa2, 0.0, u0}, window, ctrl);
  for (int i = 1; i <= n_grid; ++i) {
    const double r = window * i / n_grid;
    v.grid.push_back(r);
    v.slacks.push_back(p1.state_at(r).u - p2.state_at(r).u);
  }
  return finish(std::move(v), tol_compare);
}

ComparisonVerdict compare_u0_pendent(double kappa, double u0, double delta,
                                     int n_grid, double tol_compare,
                                     const IntegratorControl& ctrl) {
  if (!(delta > 0.0))
    throw std::invalid_argument("compare_u0_pendent: need delta > 0");
  require_pendent({kappa, 0.0, u0}, "compare_u0_pendent");
  ComparisonVerdict v;
  v.relation = Relation::pendent_u0_shift;
  const double window = 0.5 * std::min(first_zero({kappa, 0.0, u0}, ctrl),
                                       first_zero({kappa, 0.0, u0 - delta}, ctrl));
  v.note = "window (0, min(r_o, r_o')/2]: partial monotonicity only";
  const Profile p = integrate_ivp({kappa, 0.0, u0}, window, ctrl);
  const Profile q = integrate_ivp({kappa, 0.0, u0 - delta}, window, ctrl);
  for (int i = 1; i <= n_grid; ++i) {
    const double r = window * i / n_grid;
    v.grid.push_back(r);
    v.slacks.push_back(q.state_at(r).u + delta - p.state_at(r).u);
  }
  return finish(std::move(v), tol_compare);
}

GrowthBoundsReport growth_bounds_check(const Profile& p) {
  const double kappa = p.params.kappa, u0 = p.params.u0;
  if (!(kappa > 0.0) || !(u0 > 0.0))
    throw std::invalid_argument("growth_bounds_check: requires kappa > 0 and u0 > 0");
  GrowthBoundsReport rep;
  rep.min_lower_slack = std::numeric_limits<double>::infinity();
  rep.min_upper_slack = std::numeric_limits<double>::infinity();
  for (const PhaseState& s : p.samples) {
    if (!(s.r > 0.0)) continue;
    const double ratio = s.v / s.r;
    rep.min_lower_slack = std::min(rep.min_lower_slack, ratio - kappa * u0);
    rep.min_upper_slack = std::min(rep.min_upper_slack, kappa * s.u - ratio);
  }
  rep.passed = rep.min_lower_slack > 0.0 && rep.min_upper_slack > 0.0;
  return rep;
}

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::ivp_kappa: return "ivp-kappa";
    case Relation::bvp_kappa: return "bvp-kappa";
    case Relation::u0_shift: return "u0-shift";
    case Relation::pendent_kappa: return "pendent-kappa";
    case Relation::pendent_u0_shift: return "pendent-u0-shift";
  }
  return "?";
}

}  // namespace bandsolve
