#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bandsolve {

/// Parameters of the profile equation u''/(1-u'^2)^{3/2} = kappa*u + lambda.
/// Solvers require lambda == 0; normalize_lambda() strips a nonzero offset.
struct ModelParams {
  double kappa = 1.0;   // curvature coefficient, 1/length^2
  double lambda = 0.0;  // constant offset, 1/length
  double u0 = 0.0;      // height at the axis r = 0
};

/// Point of the reduced first-order system. v = sinh(psi) = u'/sqrt(1-u'^2),
/// so |u'| < 1 (spacelike) holds for every finite v.
struct PhaseState {
  double r = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct Derivatives {
  double du_dr = 0.0;
  double dv_dr = 0.0;
};

/// u' = v/sqrt(1+v^2), recovered from the hyperbolic-angle variable.
double slope(const PhaseState& s);

/// psi = asinh(v), the hyperbolic angle of the profile against the horizontal.
double angle(const PhaseState& s);

/// cosh(psi) = sqrt(1+v^2) = 1/sqrt(1-u'^2).
double cosh_angle(const PhaseState& s);

/// Right-hand side of u' = v/sqrt(1+v^2), v' = kappa*u.
Derivatives rhs(const PhaseState& s, double kappa);

/// Conserved quantity along trajectories started at (u0, v=0):
///   u^2 - u0^2 - (2/kappa)(sqrt(1+v^2) - 1) == 0.
/// Returned in relative form, scaled by max(1, u0^2, u^2).
double first_integral_residual(const PhaseState& s, const ModelParams& params);

struct IntegratorControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.1;        // also bounds dense-output interpolation error
  double initial_step = 0.0;    // 0 = automatic
  double sample_spacing = 0.0;  // >0 adds a uniform output grid to the samples
  double conserve_tol = 1e-8;   // post-check on the first-integral residual
  std::size_t max_steps = 2000000;
};

struct StepStats {
  int order = 5;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  double max_step_taken = 0.0;
  double max_residual = 0.0;  // worst relative first-integral residual over samples
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

/// Sampled trajectory. Samples are strictly increasing in r; integration output
/// starts at (0, u0, 0). state_at() interpolates between samples with a quintic
/// two-point Hermite built from closed-form state derivatives, so evaluation
/// error stays at the integration-tolerance level.
struct Profile {
  ModelParams params;
  std::vector<PhaseState> samples;
  StepStats step_stats;

  double r_min() const;
  double r_max() const;
  PhaseState state_at(double r) const;
};

/// Thrown on step-size underflow, non-finite state, or a conservation-check
/// failure. Any of these indicates a bug or an unusable control setting.
class integration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrate the initial value problem u(0)=u0, v(0)=0 over [0, r_max] with an
/// embedded Dormand-Prince 5(4) stepper. u0 == 0 returns the exact zero profile
/// without integrating. Requires kappa != 0 and lambda == 0.
Profile integrate_ivp(const ModelParams& params, double r_max,
                      const IntegratorControl& ctrl = {});

/// Even reflection about r = 0: u(-r) = u(r), v(-r) = -v(r). The input must
/// start at a critical point (samples.front() with r == 0, v == 0).
Profile extend_by_symmetry(const Profile& p);

/// The map (u, v) -> (-u, -v), r fixed; u0 flips sign. Trajectories are closed
/// under this reflection, so reflect_sign(integrate(kappa, u0)) equals
/// integrate(kappa, -u0) sample for sample.
Profile reflect_sign(const Profile& p);

struct LambdaNormalization {
  ModelParams params;  // lambda == 0
  double shift = 0.0;  // lambda/kappa; exports add it back to heights
};

/// Remove the constant offset: the equation with (kappa, lambda) becomes the
/// lambda = 0 equation after raising heights by lambda/kappa. u0 keeps its
/// meaning of height above the support plane; the plane itself sits at
/// x3 = lambda/kappa in export coordinates. Requires kappa != 0.
LambdaNormalization normalize_lambda(const ModelParams& params);

struct SignCanonicalization {
  ModelParams params;
  bool flipped = false;
};

/// Flip u0 so that sign(u0) == sign(kappa) (or u0 == 0), recording whether a
/// flip happened. Profiles transform with reflect_sign.
SignCanonicalization canonicalize_sign(const ModelParams& params);

/// Uniform sample spacing h such that piecewise-linear interpolation of u and v
/// between samples has error below eps, from the a-priori bounds
/// |u''| <= |kappa|(|u0| + r_max) and |v''| <= |kappa|.
double spacing_for_linear_interp(const ModelParams& params, double r_max, double eps);

}  // namespace bandsolve
