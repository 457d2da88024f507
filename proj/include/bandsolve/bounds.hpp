#pragma once

#include "bandsolve/shooting.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bandsolve {

/// Graph y(r) = c + sqrt(r^2 + m^2): the constant-curvature comparison
/// profile. Satisfies y''/(1-y'^2)^{3/2} == 1/m identically (the waist m sets
/// the curvature), which makes it the natural barrier for the profile ODE.
struct Hyperbola {
  double c = 0.0;  // vertical offset
  double m = 1.0;  // waist radius, > 0

  double value(double r) const { return c + std::sqrt(r * r + m * m); }
  double slope(double r) const { return r / std::sqrt(r * r + m * m); }
  double sinh_angle(double r) const { return r / m; }
  double curvature() const { return 1.0 / m; }
};

/// Cylinder of constant curvature m over the hyperbola y = sqrt(r^2 + 1/m^2);
/// the only stationary band with kappa = 0 (up to isometries).
Hyperbola hyperbolic_cylinder(double m);

/// Integral of (sqrt(r^2 + m^2) + c) over [0, a]:
///   a*c + (a/2)*sqrt(a^2+m^2) + (m^2/2)*log((a + sqrt(a^2+m^2))/m).
/// Requires m > 0, a > 0.
double F(double c, double m, double a);

/// Boundary-height bound depending only on (a, beta, kappa):
///   sinh(beta)/(kappa*a) + (a/2)*coth(beta) - a*beta/(2*sinh^2(beta)).
double ua_upper_bound(double a, double beta, double kappa);

enum class CheckStatus { pass, fail, degenerate };

const char* to_string(CheckStatus s);

/// One verified inequality lhs < rhs; slack = rhs - lhs. Names are stable
/// role-based identifiers, notes carry grids and derivations.
struct InequalityRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

struct BoundsReport {
  std::vector<InequalityRecord> records;
  double min_slack = 0.0;  // over non-degenerate records
  bool passed = false;     // no failing record
};

/// Thrown when an estimate is evaluated outside its regime (e.g. pendent
/// bounds with a beyond the first zero).
class out_of_regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SessileEnvelope {
  Hyperbola lower;  // waist 1/(kappa*u0), matches the profile at the axis
  Hyperbola upper;  // waist a/sinh(psi(a)), matches value at 0 and slope at a
  BoundsReport report;
};

/// Two-sided hyperbola sandwich y1 < u < y2 on (0, a] for a solved sessile
/// problem, checked at the profile's own samples.
SessileEnvelope sessile_envelope(const ShootingResult& solved, double a,
                                 double tol_compare = 1e-9);

/// Bounds on the boundary height u(a) from the envelope hyperbolas.
BoundsReport check_height_at_boundary(const ShootingResult& solved, double a,
                                      double beta, double tol_compare = 1e-9);

/// Two-sided bound on the axis height u0 plus the flux inequalities
/// kappa*F(u0-mu1, mu1) < sinh(beta) < kappa*F(u0-mu2, mu2) behind it.
BoundsReport check_initial_height(const ShootingResult& solved, double a,
                                  double beta, double kappa,
                                  double tol_compare = 1e-9);

/// Lower envelope tangent at the boundary point (a, u(a)) plus the
/// u0-independent boundary-height bound.
BoundsReport check_tangent_envelope(const ShootingResult& solved, double a,
                                    double beta, double kappa,
                                    double tol_compare = 1e-9);

/// Pendent estimates on [0, a], a within the first zero: hyperbola upper
/// envelope, boundary height, flux bound, and the first-zero lower bounds.
/// Throws out_of_regime_error if a exceeds the first zero.
BoundsReport check_pendent_estimates(const ShootingResult& solved,
                                     const BvpProblem& prob,
                                     double tol_compare = 1e-9,
                                     const IntegratorControl& ctrl = {});

/// All sessile estimates for one solved problem, concatenated.
BoundsReport run_sessile_bounds(const ShootingResult& solved,
                                const BvpProblem& prob,
                                double tol_compare = 1e-9);

}  // namespace bandsolve
