#include "bandsolve/bounds.hpp"

#include "bandsolve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandsolve {

namespace {

InequalityRecord strict_less(std::string name, double lhs, double rhs,
                             double tol, std::string note = {}) {
  InequalityRecord rec;
  rec.name = std::move(name);
  rec.lhs = lhs;
  rec.rhs = rhs;
  rec.slack = rhs - lhs;
  rec.status = rec.slack >= -tol ? CheckStatus::pass : CheckStatus::fail;
  rec.note = std::move(note);
  return rec;
}

InequalityRecord degenerate(std::string name, std::string note) {
  InequalityRecord rec;
  rec.name = std::move(name);
  rec.status = CheckStatus::degenerate;
  rec.note = std::move(note);
  return rec;
}

BoundsReport finish(BoundsReport rep) {
  rep.min_slack = std::numeric_limits<double>::infinity();
  rep.passed = true;
  bool any = false;
  for (const InequalityRecord& r : rep.records) {
    if (r.status == CheckStatus::degenerate) continue;
    any = true;
    rep.min_slack = std::min(rep.min_slack, r.slack);
    if (r.status == CheckStatus::fail) rep.passed = false;
  }
  if (!any) rep.min_slack = 0.0;
  return rep;
}

BoundsReport degenerate_report(std::initializer_list<const char*> names) {
  BoundsReport rep;
  for (const char* n : names)
    rep.records.push_back(degenerate(n, "beta = 0: plane solution, bound degenerate"));
  return finish(std::move(rep));
}

// Worst grid point of u(r) - y(r) over samples with lo < r <= hi.
struct GridSlack {
  double slack = std::numeric_limits<double>::infinity();
  double at_r = 0.0;
  int count = 0;
};

template <typename Diff>
GridSlack scan_samples(const Profile& p, double lo, double hi, const Diff& diff) {
  GridSlack g;
  for (const PhaseState& s : p.samples) {
    if (!(s.r > lo) || !(s.r <= hi)) continue;
    const double d = diff(s);
    if (d < g.slack) {
      g.slack = d;
      g.at_r = s.r;
    }
    ++g.count;
  }
  return g;
}

std::string grid_note(const GridSlack& g) {
  return "worst of " + std::to_string(g.count) +
         " profile samples, at r = " + std::to_string(g.at_r);
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::degenerate: return "degenerate-skip";
  }
  return "?";
}

Hyperbola hyperbolic_cylinder(double m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::domain_error("hyperbolic_cylinder: curvature m must be positive");
  const Hyperbola h{0.0, 1.0 / m};
  // Curvature identity spot check on a small grid; exact up to roundoff.
  for (double r : {0.0, 0.5 / m, 1.0 / m, 10.0 / m}) {
    const double sl = h.slope(r);
    const double ypp = h.m * h.m / std::pow(r * r + h.m * h.m, 1.5);
    if (std::abs(ypp / std::pow(1.0 - sl * sl, 1.5) - m) > 1e-10 * std::max(1.0, m))
      throw std::logic_error("hyperbolic_cylinder: curvature identity violated");
  }
  return h;
}

double F(double c, double m, double a) {
  if (!(m > 0.0)) throw std::domain_error("F: waist m must be positive");
  if (!(a > 0.0)) throw std::domain_error("F: a must be positive");
  const double s = std::sqrt(a * a + m * m);
  return a * c + 0.5 * a * s + 0.5 * m * m * std::log((a + s) / m);
}

double ua_upper_bound(double a, double beta, double kappa) {
  if (!(a > 0.0) || !(beta > 0.0) || kappa == 0.0)
    throw std::domain_error("ua_upper_bound: need a > 0, beta > 0, kappa != 0");
  const double sh = std::sinh(beta);
  return sh / (kappa * a) + 0.5 * a / std::tanh(beta) - 0.5 * a * beta / (sh * sh);
}

SessileEnvelope sessile_envelope(const ShootingResult& solved, double a,
                                 double tol_compare) {
  const ModelParams& mp = solved.profile.params;
  SessileEnvelope env;
  if (solved.branch == Branch::plane) {
    env.report = degenerate_report({"envelope-lower", "envelope-upper",
                                    "envelope-curvature-order"});
    return env;
  }
  if (!(mp.kappa > 0.0) || !(solved.u0 > 0.0))
    throw std::invalid_argument("sessile_envelope: requires a sessile solution");

  const double mu1 = 1.0 / (mp.kappa * solved.u0);
  const double va = solved.profile.state_at(a).v;  // sinh(psi(a))
  const double mu2 = a / va;
  env.lower = {solved.u0 - mu1, mu1};
  env.upper = {solved.u0 - mu2, mu2};

  BoundsReport rep;
  const GridSlack lo = scan_samples(
      solved.profile, 0.0, a,
      [&](const PhaseState& s) { return s.u - env.lower.value(s.r); });
  rep.records.push_back(strict_less("envelope-lower", 0.0, lo.slack, tol_compare,
                                    grid_note(lo)));
  const GridSlack hi = scan_samples(
      solved.profile, 0.0, a,
      [&](const PhaseState& s) { return env.upper.value(s.r) - s.u; });
  rep.records.push_back(strict_less("envelope-upper", 0.0, hi.slack, tol_compare,
                                    grid_note(hi)));
  rep.records.push_back(strict_less(
      "envelope-curvature-order", env.lower.curvature(), env.upper.curvature(),
      tol_compare, "axis curvature kappa*u0 below boundary mean slope sinh(psi(a))/a"));
  env.report = finish(std::move(rep));
  return env;
}

BoundsReport check_height_at_boundary(const ShootingResult& solved, double a,
                                      double beta, double tol_compare) {
  if (solved.branch == Branch::plane || beta == 0.0)
    return degenerate_report({"height-at-boundary-lower", "height-at-boundary-upper"});
  const ModelParams& mp = solved.profile.params;
  if (!(mp.kappa > 0.0) || !(solved.u0 > 0.0))
    throw std::invalid_argument("check_height_at_boundary: requires a sessile solution");
  const double ua = solved.profile.state_at(a).u;
  const double mu1 = 1.0 / (mp.kappa * solved.u0);
  BoundsReport rep;
  rep.records.push_back(strict_less(
      "height-at-boundary-lower",
      solved.u0 - mu1 + std::sqrt(a * a + mu1 * mu1), ua, tol_compare,
      "lower envelope hyperbola evaluated at the boundary"));
  rep.records.push_back(strict_less(
      "height-at-boundary-upper", ua, solved.u0 + a * std::tanh(beta / 2.0),
      tol_compare, "upper envelope hyperbola evaluated at the boundary"));
  return finish(std::move(rep));
}

BoundsReport check_initial_height(const ShootingResult& solved, double a,
                                  double beta, double kappa, double tol_compare) {
  if (solved.branch == Branch::plane || beta == 0.0)
    return degenerate_report({"initial-height-lower", "initial-height-upper",
                              "flux-lower-hyperbola", "flux-upper-hyperbola"});
  if (!(kappa > 0.0) || !(solved.u0 > 0.0))
    throw std::invalid_argument("check_initial_height: requires a sessile solution");
  const double sh = std::sinh(beta);
  const double mu1 = 1.0 / (kappa * solved.u0);
  const double mu2 = a / sh;
  BoundsReport rep;
  rep.records.push_back(strict_less(
      "initial-height-lower",
      sh / (a * kappa) + a / sh - 0.5 * a / std::tanh(beta) - 0.5 * a * beta / (sh * sh),
      solved.u0, tol_compare));
  rep.records.push_back(strict_less("initial-height-upper", solved.u0,
                                    sh / (a * kappa), tol_compare));
  rep.records.push_back(strict_less(
      "flux-lower-hyperbola", kappa * F(solved.u0 - mu1, mu1, a), sh, tol_compare,
      "axis-tangent hyperbola integrates below the profile"));
  rep.records.push_back(strict_less(
      "flux-upper-hyperbola", sh, kappa * F(solved.u0 - mu2, mu2, a), tol_compare,
      "boundary-slope hyperbola integrates above the profile"));
  return finish(std::move(rep));
}

BoundsReport check_tangent_envelope(const ShootingResult& solved, double a,
                                    double beta, double kappa, double tol_compare) {
  if (solved.branch == Branch::plane || beta == 0.0)
    return degenerate_report({"tangent-envelope", "boundary-height-angle-only"});
  if (!(kappa > 0.0) || !(solved.u0 > 0.0))
    throw std::invalid_argument("check_tangent_envelope: requires a sessile solution");
  const double ua = solved.profile.state_at(a).u;
  const Hyperbola y3{ua - a / std::tanh(beta), a / std::sinh(beta)};
  BoundsReport rep;
  // Tangent to the profile at (a, u(a)); strictly below on [0, a).
  GridSlack g = scan_samples(solved.profile, -1.0, a, [&](const PhaseState& s) {
    return s.r < a ? s.u - y3.value(s.r) : std::numeric_limits<double>::infinity();
  });
  rep.records.push_back(
      strict_less("tangent-envelope", 0.0, g.slack, tol_compare, grid_note(g)));
  rep.records.push_back(strict_less(
      "boundary-height-angle-only", ua, ua_upper_bound(a, beta, kappa), tol_compare,
      "independent of the axis height"));
  return finish(std::move(rep));
}

BoundsReport check_pendent_estimates(const ShootingResult& solved,
                                     const BvpProblem& prob, double tol_compare,
                                     const IntegratorControl& ctrl) {
  if (solved.branch == Branch::plane || prob.beta == 0.0)
    return degenerate_report({"pendent-envelope", "pendent-height-at-boundary",
                              "pendent-flux", "first-zero-lower",
                              "first-zero-lower-primitive"});
  if (!(prob.kappa < 0.0) || !(solved.u0 < 0.0) || solved.branch != Branch::pendent_negative)
    throw std::invalid_argument(
        "check_pendent_estimates: requires a negative-branch pendent solution");

  const double kappa = prob.kappa, u0 = solved.u0, a = prob.a;
  const double r_o = first_zero({kappa, 0.0, u0}, ctrl);
  if (a > r_o)
    throw out_of_regime_error(
        "check_pendent_estimates: a exceeds the first zero of the profile");

  const double m4 = 1.0 / (kappa * u0);  // positive: kappa < 0, u0 < 0
  const Hyperbola y4{u0 - m4, m4};
  BoundsReport rep;
  GridSlack g = scan_samples(solved.profile, 0.0, a, [&](const PhaseState& s) {
    return y4.value(s.r) - s.u;
  });
  rep.records.push_back(strict_less("pendent-envelope", 0.0, g.slack, tol_compare,
                                    grid_note(g)));
  rep.records.push_back(strict_less("pendent-height-at-boundary",
                                    solved.profile.state_at(a).u, y4.value(a),
                                    tol_compare));
  rep.records.push_back(strict_less(
      "pendent-flux", std::sinh(prob.beta) / kappa, F(u0 - m4, m4, a), tol_compare,
      "axis-tangent hyperbola integrates above the profile; kappa < 0 flips the order"));
  rep.records.push_back(strict_less(
      "first-zero-lower", std::sqrt(u0 * u0 - 2.0 / kappa), r_o, tol_compare,
      "zero of the axis-tangent hyperbola bounds the first profile zero"));
  rep.records.push_back(strict_less("first-zero-lower-primitive",
                                    std::sqrt(-2.0 / kappa),
                                    std::sqrt(u0 * u0 - 2.0 / kappa), tol_compare));
  return finish(std::move(rep));
}

BoundsReport run_sessile_bounds(const ShootingResult& solved,
                                const BvpProblem& prob, double tol_compare) {
  BoundsReport rep;
  auto absorb = [&rep](BoundsReport part) {
    for (InequalityRecord& r : part.records) rep.records.push_back(std::move(r));
  };
  absorb(sessile_envelope(solved, prob.a, tol_compare).report);
  absorb(check_height_at_boundary(solved, prob.a, prob.beta, tol_compare));
  absorb(check_initial_height(solved, prob.a, prob.beta, prob.kappa, tol_compare));
  absorb(check_tangent_envelope(solved, prob.a, prob.beta, prob.kappa, tol_compare));
  return finish(std::move(rep));
}

}  // namespace bandsolve
