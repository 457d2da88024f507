#pragma once

#include "bandsolve/ode.hpp"

#include <string>
#include <vector>

namespace bandsolve {

/// Qualitative shape verdict for a sessile profile (kappa > 0, u0 > 0): unique
/// minimum at the axis, strict growth and convexity, slope approaching the
/// lightlike limit 1, curvature decaying monotonically on the tail.
struct SessileShapeReport {
  double initial_curvature = 0.0;   // Richardson limit of v(r)/r at r -> 0
  double initial_curvature_tol = 0.0;
  double min_increase = 0.0;        // min over consecutive samples of u[i+1]-u[i]
  double min_slope_increase = 0.0;  // min over consecutive samples of v[i+1]-v[i]
  double min_curvature = 0.0;       // min of u'' over samples
  double tail_slope = 0.0;          // u'(r_max)
  double tail_slope_threshold = 0.0;  // kappa*u0*r_max/sqrt(1+(kappa*u0*r_max)^2)
  double tail_curvature_decrease = 0.0;  // min decrement of u'' across tail samples
  bool tail_checked = false;
  bool passed = false;
};

SessileShapeReport sessile_shape_check(const Profile& p);

/// Periodic structure of a pendent profile (kappa < 0, u0 < 0) over two full
/// periods. r_o is the first zero; the period is 4*r_o by the reflection
/// symmetries; extrema (critical points) land at even multiples of r_o.
struct PendentSummary {
  double r_o = 0.0;
  double period = 0.0;      // 4*r_o
  double amplitude = 0.0;   // max |u| over the window; equals |u0| up to tolerance
  double max_slope = 0.0;   // |u'| at the refined first zero
  double grid_max_slope = 0.0;
  std::vector<double> extrema_locations;  // v = 0 within [0, 2 periods)
  double period_residual = 0.0;  // max |u(r + period) - u(r)| over one period
  double first_zero_lower = 0.0;            // sqrt(u0^2 - 2/kappa) < r_o
  double first_zero_lower_primitive = 0.0;  // sqrt(-2/kappa)
  // Inflections coincide with zeros of u: away from zeros (|u| >= 1e-8) the
  // ratio |u''|/(|kappa||u|) stays above 1/cosh^3(psi_max) > 0.
  double inflection_margin = 0.0;
  Profile profile;  // on [0, 2 periods]
};

PendentSummary pendent_summary(const ModelParams& params,
                               const IntegratorControl& ctrl = {});

/// First zero of a pendent profile, bracketed on the samples and bisected on
/// the dense interpolant to 1e-10.
double first_zero(const ModelParams& params, const IntegratorControl& ctrl = {});

/// Slope magnitude at the zeros of a pendent profile:
///   (-u0/(2 - kappa*u0^2)) * sqrt(kappa^2*u0^2 - 4*kappa);
/// always < 1. Requires kappa < 0, u0 < 0.
double max_slope_closed_form(const ModelParams& params);

enum class Relation {
  ivp_kappa,        // 0 < k1 < k2: u1 < u2 off the axis, u1' < u2' for r > 0
  bvp_kappa,        // same (a, beta): order reverses, u1 > u2 on [0,a]
  u0_shift,         // u(r; u0+delta) - delta > u(r; u0) off the axis
  pendent_kappa,    // k1 < k2 < 0: u1 > u2 on the half-first-zero window
  pendent_u0_shift, // u(r; u0-delta) + delta >= u(r; u0) on the window
};

const char* to_string(Relation rel);

struct ComparisonVerdict {
  Relation relation = Relation::ivp_kappa;
  std::vector<double> grid;
  std::vector<double> slacks;  // per grid point; min over families where two apply
  double min_slack = 0.0;
  bool passed = false;
  std::string note;
};

/// Strict ordering of profiles under a curvature-coefficient increase, same u0.
ComparisonVerdict compare_kappa_ivp(double u0, double kappa1, double kappa2,
                                    const std::vector<double>& r_grid,
                                    double tol_compare = 1e-9,
                                    const IntegratorControl& ctrl = {});

/// Reversed ordering for boundary problems sharing (a, beta): the larger
/// coefficient needs the smaller axis height. Checks heights on [0, a] and
/// slopes on the interior grid.
ComparisonVerdict compare_kappa_bvp(double a, double beta, double kappa1,
                                    double kappa2, int n_interior = 39,
                                    double tol_compare = 1e-9,
                                    const IntegratorControl& ctrl = {});

/// Axis-height shift bound: raising u0 by delta raises the whole profile by
/// more than delta away from the axis (kappa > 0).
ComparisonVerdict compare_u0(double kappa, double u0, double delta,
                             const std::vector<double>& r_grid,
                             double tol_compare = 1e-9,
                             const IntegratorControl& ctrl = {});

/// Pendent analogues, valid only on (0, min(r_o, r_o')/2]; the note records
/// the restricted window.
ComparisonVerdict compare_kappa_pendent(double u0, double kappa1, double kappa2,
                                        int n_grid = 40, double tol_compare = 1e-9,
                                        const IntegratorControl& ctrl = {});
ComparisonVerdict compare_u0_pendent(double kappa, double u0, double delta,
                                     int n_grid = 40, double tol_compare = 1e-9,
                                     const IntegratorControl& ctrl = {});

/// Sessile growth bounds kappa*u0 < sinh(psi(r))/r < kappa*u(r) for r > 0.
struct GrowthBoundsReport {
  double min_lower_slack = 0.0;  // min of v/r - kappa*u0
  double min_upper_slack = 0.0;  // min of kappa*u - v/r
  bool passed = false;
};

GrowthBoundsReport growth_bounds_check(const Profile& p);

}  // namespace bandsolve
