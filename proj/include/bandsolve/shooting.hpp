#pragma once

#include "bandsolve/ode.hpp"

#include <optional>
#include <utility>

namespace bandsolve {

/// Boundary value problem on [0, a]: find u0 with u'(0) = 0 and
/// u'(a) = tanh(beta) (contact angle condition at the boundary cylinder).
struct BvpProblem {
  double a = 1.0;
  double beta = 0.0;
  double kappa = 1.0;
};

enum class Branch {
  plane,             // beta == 0, the trivial solution u == 0
  sessile,           // kappa > 0, sign(u0) = sign(beta)
  pendent_negative,  // kappa < 0; u < 0 on [0,a) for beta > 0 (reflected for beta < 0)
};

const char* to_string(Branch b);

struct ShootingResult {
  double u0 = 0.0;
  Profile profile;  // on [0, a]
  double young_residual = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  Branch branch = Branch::plane;
};

struct ScanPoint {
  double u0 = 0.0;
  double residual = 0.0;    // u'(a; u0) - tanh(beta)
  bool negative_branch = false;  // u < 0 on [0, a)
};

/// Thrown when the pendent scan exhausts its range without bracketing a
/// negative-branch root (a too large for that branch). Carries the scan trace.
class no_bracket_error : public std::runtime_error {
 public:
  no_bracket_error(const std::string& what, std::vector<ScanPoint> trace)
      : std::runtime_error(what), scan(std::move(trace)) {}
  std::vector<ScanPoint> scan;
};

/// Shooting solve of the boundary value problem. beta = 0 returns the plane;
/// beta < 0 is solved at |beta| and sign-reflected. For kappa > 0 the map
/// u0 -> u'(a; u0) is strictly increasing and bisection on a guaranteed
/// bracket converges; for kappa < 0 the negative branch is scanned outward
/// from 0 and the first sign change is bisected (smallest-|u0| root).
/// bracket_hint overrides the initial sessile bracket (diagnostics/tests).
ShootingResult solve_bvp(const BvpProblem& prob, double tol_bvp = 1e-10,
                         const IntegratorControl& ctrl = {},
                         std::optional<std::pair<double, double>> bracket_hint = {});

/// Residual of the contact condition for an already-computed profile.
double young_residual(const Profile& p, double a, double beta);

/// Find u0 such that u(a; u0) = b (kappa > 0). The height map u0 -> u(a; u0)
/// is strictly increasing with unit lower slope, so [0, b] brackets b > 0.
/// Negative b is solved by sign reflection; b = 0 gives the plane leaf.
double solve_foliation(double a, double b, double kappa, double tol = 1e-9,
                       const IntegratorControl& ctrl = {});

/// Diagnostic residual scan for pendent problems: sample u'(a; -t) - tanh(beta)
/// at n geometric points t in [t_lo, t_hi], recording branch validity. This is
/// the only exposure of non-negative-branch roots.
std::vector<ScanPoint> pendent_residual_scan(const BvpProblem& prob, double t_lo,
                                             double t_hi, int n,
                                             const IntegratorControl& ctrl = {});

}  // namespace bandsolve
