#include "bandsolve/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bandsolve {

namespace {

constexpr int kMaxBisect = 200;

double u0_tol(double u0) { return 1e-12 * std::max(1.0, std::abs(u0)); }

void validate(const BvpProblem& prob) {
  if (!std::isfinite(prob.a) || !std::isfinite(prob.beta) || !std::isfinite(prob.kappa))
    throw std::domain_error("solve_bvp: non-finite problem");
  if (!(prob.a > 0.0)) throw std::invalid_argument("solve_bvp: a must be positive");
  if (prob.kappa == 0.0) throw std::invalid_argument("solve_bvp: kappa must be nonzero");
}

struct Shot {
  Profile profile;
  double residual;
  bool negative_branch;  // u < 0 at every sample with r < a
};

Shot shoot(double u0, const BvpProblem& prob, const IntegratorControl& ctrl,
           double target_slope) {
  Shot s{integrate_ivp({prob.kappa, 0.0, u0}, prob.a, ctrl), 0.0, true};
  s.residual = slope(s.profile.samples.back()) - target_slope;
  for (const PhaseState& q : s.profile.samples) {
    if (q.r < prob.a && q.u >= 0.0) {
      s.negative_branch = false;
      break;
    }
  }
  return s;
}

ShootingResult plane_result(const BvpProblem& prob, const IntegratorControl& ctrl) {
  ShootingResult res;
  res.u0 = 0.0;
  res.profile = integrate_ivp({prob.kappa, 0.0, 0.0}, prob.a, ctrl);
  res.young_residual = 0.0;
  res.bracket = {0.0, 0.0};
  res.branch = Branch::plane;
  return res;
}

ShootingResult solve_sessile(const BvpProblem& prob, double tol_bvp,
                             const IntegratorControl& ctrl,
                             std::optional<std::pair<double, double>> hint) {
  const double target = std::tanh(prob.beta);
  // u'(a; u0) rises from 0 through tanh(beta) before u0 reaches sinh(beta)/(kappa a),
  // since sinh(psi(a)) > kappa*u0*a along sessile profiles.
  double lo = 0.0, hi = 1.0000001 * std::sinh(prob.beta) / (prob.kappa * prob.a);
  if (hint) {
    lo = std::max(0.0, hint->first);
    hi = hint->second;
  }
  double res_lo = lo == 0.0 ? -target : shoot(lo, prob, ctrl, target).residual;
  int iters = 0;
  for (int i = 0; res_lo > 0.0 && i < 60; ++i) {  // hint may miss; slide down
    hi = lo;
    lo /= 2.0;
    res_lo = shoot(lo, prob, ctrl, target).residual;
    ++iters;
  }
  for (int i = 0;; ++i) {
    if (i >= 60)
      throw integration_error("solve_bvp: failed to bracket sessile root");
    Shot s = shoot(hi, prob, ctrl, target);
    ++iters;
    if (s.residual >= 0.0) break;
    lo = hi;
    res_lo = s.residual;
    hi *= 2.0;
  }

  ShootingResult out;
  out.branch = Branch::sessile;
  out.bracket = {lo, hi};
  Shot best = shoot(0.5 * (lo + hi), prob, ctrl, target);
  double mid = 0.5 * (lo + hi);
  ++iters;
  while (std::abs(best.residual) > tol_bvp) {
    if (iters >= kMaxBisect)
      throw integration_error("solve_bvp: bisection iteration cap reached");
    if (best.residual > 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= u0_tol(mid)) break;
    mid = 0.5 * (lo + hi);
    best = shoot(mid, prob, ctrl, target);
    ++iters;
  }
  out.u0 = mid;
  out.profile = std::move(best.profile);
  out.young_residual = best.residual;
  out.iterations = iters;
  return out;
}

ShootingResult solve_pendent(const BvpProblem& prob, double tol_bvp,
                             const IntegratorControl& ctrl) {
  const double target = std::tanh(prob.beta);
  const double scale = std::sqrt(std::max(1.0, -2.0 / prob.kappa));
  std::vector<ScanPoint> trace;

  // Outward geometric scan over t = -u0; keep the first adjacent pair of
  // negative-branch scans whose residuals change sign.
  double t_prev = 0.0, res_prev = -target;
  bool have_prev = true;  // u0 -> 0 limit: residual -> -tanh(beta), branch valid in the limit
  double lo_t = 0.0, hi_t = 0.0;
  bool bracketed = false;
  double t = 1e-4 * scale;
  for (int i = 0; i < 140 && !bracketed; ++i, t *= 1.5) {
    Shot s = shoot(-t, prob, ctrl, target);
    trace.push_back({-t, s.residual, s.negative_branch});
    if (!s.negative_branch) {
      have_prev = false;
      continue;
    }
    if (have_prev && res_prev < 0.0 && s.residual >= 0.0) {
      lo_t = t_prev;
      hi_t = t;
      bracketed = true;
      break;
    }
    t_prev = t;
    res_prev = s.residual;
    have_prev = true;
  }
  if (!bracketed)
    throw no_bracket_error(
        "solve_bvp: no negative-branch bracket for the pendent problem "
        "(a exceeds the admissible range for this branch)",
        std::move(trace));

  ShootingResult out;
  out.branch = Branch::pendent_negative;
  out.bracket = {-hi_t, -lo_t};
  int iters = static_cast<int>(trace.size());
  double mid = 0.5 * (lo_t + hi_t);
  Shot best = shoot(-mid, prob, ctrl, target);
  ++iters;
  while (std::abs(best.residual) > tol_bvp) {
    if (iters >= kMaxBisect)
      throw integration_error("solve_bvp: bisection iteration cap reached");
    if (!best.negative_branch || best.residual < 0.0)
      lo_t = mid;  // zero crossing before a behaves like the small-|u0| side
    else
      hi_t = mid;
    if (hi_t - lo_t <= u0_tol(mid)) break;
    mid = 0.5 * (lo_t + hi_t);
    best = shoot(-mid, prob, ctrl, target);
    ++iters;
  }
  out.u0 = -mid;
  out.profile = std::move(best.profile);
  out.young_residual = best.residual;
  out.iterations = iters;
  return out;
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::plane: return "plane";
    case Branch::sessile: return "sessile";
    case Branch::pendent_negative: return "pendent-negative";
  }
  return "?";
}

ShootingResult solve_bvp(const BvpProblem& prob, double tol_bvp,
                         const IntegratorControl& ctrl,
                         std::optional<std::pair<double, double>> bracket_hint) {
  validate(prob);
  if (prob.beta == 0.0) return plane_result(prob, ctrl);
  if (prob.beta < 0.0) {
    BvpProblem mirror = prob;
    mirror.beta = -prob.beta;
    std::optional<std::pair<double, double>> mirror_hint;
    if (bracket_hint)
      mirror_hint = std::pair{-bracket_hint->second, -bracket_hint->first};
    ShootingResult res = solve_bvp(mirror, tol_bvp, ctrl, mirror_hint);
    res.profile = reflect_sign(res.profile);
    res.u0 = -res.u0;
    res.bracket = {-res.bracket.second, -res.bracket.first};
    res.young_residual = slope(res.profile.samples.back()) - std::tanh(prob.beta);
    return res;
  }
  return prob.kappa > 0.0 ? solve_sessile(prob, tol_bvp, ctrl, bracket_hint)
                          : solve_pendent(prob, tol_bvp, ctrl);
}

double young_residual(const Profile& p, double a, double beta) {
  return slope(p.state_at(a)) - std::tanh(beta);
}

double solve_foliation(double a, double b, double kappa, double tol,
                       const IntegratorControl& ctrl) {
  if (!(a > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("solve_foliation: need a > 0 and finite b");
  if (!(kappa > 0.0))
    throw std::invalid_argument("solve_foliation: kappa must be positive");
  if (b == 0.0) return 0.0;
  if (b < 0.0) return -solve_foliation(a, -b, kappa, tol, ctrl);

  // u(a; u0) - u0 is positive and the map is strictly increasing, so [0, b]
  // brackets: u(a; 0) = 0 < b and u(a; b) > b.
  double lo = 0.0, hi = b;
  auto height = [&](double u0) {
    return integrate_ivp({kappa, 0.0, u0}, a, ctrl).samples.back().u;
  };
  double mid = 0.5 * (lo + hi);
  double g = height(mid) - b;
  for (int i = 0; std::abs(g) > tol; ++i) {
    if (i >= kMaxBisect)
      throw integration_error("solve_foliation: bisection iteration cap reached");
    if (g > 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= u0_tol(mid)) break;
    mid = 0.5 * (lo + hi);
    g = height(mid) - b;
  }
  return mid;
}

std::vector<ScanPoint> pendent_residual_scan(const BvpProblem& prob, double t_lo,
                                             double t_hi, int n,
                                             const IntegratorControl& ctrl) {
  validate(prob);
  if (!(prob.kappa < 0.0))
    throw std::invalid_argument("pendent_residual_scan: kappa must be negative");
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || n < 2)
    throw std::invalid_argument("pendent_residual_scan: need 0 < t_lo < t_hi, n >= 2");
  const double target = std::tanh(prob.beta);
  const double ratio = std::pow(t_hi / t_lo, 1.0 / (n - 1));
  std::vector<ScanPoint> out;
  out.reserve(n);
  double t = t_lo;
  for (int i = 0; i < n; ++i, t *= ratio) {
    Shot s = shoot(-t, prob, ctrl, target);
    out.push_back({-t, s.residual, s.negative_branch});
  }
  return out;
}

}  // namespace bandsolve
