#pragma once
// Quadrature oracles, independent of the Runge-Kutta integrator. The first
// integral cosh(psi) = 1 + kappa*(u^2 - u0^2)/2 turns the profile equation
// into dr/du = coth(psi); substituting u = u0 + s^2 removes the endpoint
// singularity at u = u0, leaving a smooth integrand for Gauss-Kronrod.
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oracle {

// r(U; kappa, u0): radius at which the height first reaches U, valid while the
// profile is monotone between u0 and U (sessile: any U > u0; pendent negative
// branch: u0 < U <= 0). Accuracy ~1e-13.
inline double radius_at_height(double kappa, double u0, double U) {
  if (U == u0) return 0.0;
  if (!(U > u0)) throw std::domain_error("radius_at_height: need U > u0");
  const double send = std::sqrt(U - u0);
  auto integrand = [kappa, u0](double s) {
    const double t = u0 + s * s;
    const double C = 1.0 + 0.5 * kappa * (t * t - u0 * u0);  // cosh(psi)
    return 2.0 * C / std::sqrt(0.5 * kappa * (t + u0) * (C + 1.0));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, send, 15, 1e-13);
}

// Inverse of the above: height U with r(U) = r_star (sessile, kappa > 0,
// u0 > 0). The map U -> r(U) is strictly increasing.
inline double height_at_radius(double kappa, double u0, double r_star) {
  double lo = u0, hi = u0 + 1.0;
  for (int i = 0; radius_at_height(kappa, u0, hi) < r_star; ++i) {
    if (i >= 80) throw std::runtime_error("height_at_radius: no upper bound");
    lo = hi;
    hi = u0 + 2.0 * (hi - u0);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (radius_at_height(kappa, u0, mid) < r_star ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// First zero of the pendent profile (kappa < 0, u0 < 0).
inline double pendent_first_zero(double kappa, double u0) {
  return radius_at_height(kappa, u0, 0.0);
}

// Boundary radius of the sessile contact-angle problem for a trial u0: the r
// at which psi = beta, via the closed-form boundary height.
inline double sessile_bvp_radius(double kappa, double u0, double beta) {
  const double q = u0 * u0 + 2.0 * (std::cosh(beta) - 1.0) / kappa;
  return radius_at_height(kappa, u0, std::sqrt(q));
}

// Same for the pendent negative branch; defined only while psi reaches beta
// before the first zero (q >= 0).
inline double pendent_bvp_radius(double kappa, double u0, double beta) {
  const double q = u0 * u0 + 2.0 * (std::cosh(beta) - 1.0) / kappa;
  if (!(q >= 0.0))
    throw std::domain_error("pendent_bvp_radius: angle not reached on the branch");
  return radius_at_height(kappa, u0, -std::sqrt(q));
}

// Axis height solving the sessile contact-angle problem: bisection on the
// strictly decreasing map u0 -> boundary radius.
inline double sessile_bvp_u0(double kappa, double a, double beta) {
  double lo = 1e-6, hi = 1.0000001 * std::sinh(beta) / (kappa * a);
  if (!(sessile_bvp_radius(kappa, lo, beta) > a) ||
      !(sessile_bvp_radius(kappa, hi, beta) < a))
    throw std::runtime_error("sessile_bvp_u0: bracket assumption violated");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (sessile_bvp_radius(kappa, mid, beta) > a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Axis height of the negative-branch pendent solution with the smallest |u0|:
// outward scan over t = -u0 from the closed-form validity threshold, first
// sign change of the radius residual bisected.
inline double pendent_bvp_u0(double kappa, double a, double beta) {
  const double t_min = std::sqrt(2.0 * (std::cosh(beta) - 1.0) / -kappa);
  double t_prev = t_min * (1.0 + 1e-9);
  double g_prev = pendent_bvp_radius(kappa, -t_prev, beta) - a;
  if (!(g_prev > 0.0))
    throw std::runtime_error("pendent_bvp_u0: a too large for this oracle");
  double t = t_prev;
  for (int i = 0;; ++i) {
    if (i >= 200) throw std::runtime_error("pendent_bvp_u0: no sign change");
    t = t_prev * 1.02 + 1e-6;
    const double g = pendent_bvp_radius(kappa, -t, beta) - a;
    if (g <= 0.0) break;
    t_prev = t;
    g_prev = g;
  }
  double lo = t_prev, hi = t;  // g(lo) > 0 > g(hi)
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (pendent_bvp_radius(kappa, -mid, beta) - a > 0.0 ? lo : hi) = mid;
  }
  return -0.5 * (lo + hi);
}

// Axis height whose profile passes through (a, b), kappa > 0, b > 0: bisection
// on the strictly decreasing map u0 -> r(b; u0).
inline double foliation_u0(double kappa, double a, double b) {
  double lo = 1e-12 * b, hi = b * (1.0 - 1e-12);
  for (int i = 0; i < 220 && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (radius_at_height(kappa, mid, b) > a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Fixed-step classical RK4 on (u, v), as a second independent cross-check of
// the adaptive integrator (no shared tableau, no dense output).
inline std::pair<double, double> rk4_endpoint(double kappa, double u0,
                                              double r_max, int n_steps) {
  const double h = r_max / n_steps;
  double u = u0, v = 0.0;
  auto du = [](double vv) { return vv / std::sqrt(1.0 + vv * vv); };
  for (int i = 0; i < n_steps; ++i) {
    const double k1u = du(v), k1v = kappa * u;
    const double k2u = du(v + 0.5 * h * k1v), k2v = kappa * (u + 0.5 * h * k1u);
    const double k3u = du(v + 0.5 * h * k2v), k3v = kappa * (u + 0.5 * h * k2u);
    const double k4u = du(v + h * k3v), k4v = kappa * (u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return {u, v};
}

// Adaptive quadrature of the hyperbola integrand, for checking F(c, m, a).
inline double hyperbola_area(double c, double m, double a) {
  auto integrand = [c, m](double r) { return c + std::sqrt(r * r + m * m); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, a, 15, 1e-13);
}

}  // namespace oracle
