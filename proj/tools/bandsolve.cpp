// Batch CLI for stationary-band profiles: IVP/BVP solves, foliation leaves,
// pendent summaries, estimate reports, monotonicity checks, mesh/plot export.
// Machine-readable JSON goes to stdout, a short human summary to stderr.
// Exit codes: 0 ok, 1 check failure, 2 usage error, 3 numeric failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bandsolve/analysis.hpp"
#include "bandsolve/bounds.hpp"
#include "bandsolve/io.hpp"
#include "bandsolve/ode.hpp"
#include "bandsolve/shooting.hpp"

using nlohmann::json;
using namespace bandsolve;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json diagnostics_json(const Profile& p) {
  return {{"order", p.step_stats.order},
          {"abs_tol", p.step_stats.abs_tol},
          {"rel_tol", p.step_stats.rel_tol},
          {"max_step_taken", p.step_stats.max_step_taken},
          {"max_residual", p.step_stats.max_residual},
          {"steps_accepted", p.step_stats.steps_accepted},
          {"steps_rejected", p.step_stats.steps_rejected}};
}

json records_json(const BoundsReport& rep) {
  json rows = json::array();
  for (const InequalityRecord& r : rep.records)
    rows.push_back({{"name", r.name},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"slack", r.slack},
                    {"status", to_string(r.status)},
                    {"note", r.note}});
  return rows;
}

void print_records(const BoundsReport& rep) {
  for (const InequalityRecord& r : rep.records)
    std::fprintf(stderr, "  %-10s %-28s slack % .3e  %s\n", to_string(r.status),
                 r.name.c_str(), r.slack, r.note.c_str());
}

ProfileFormat parse_format(const std::string& name) {
  if (name == "csv") return ProfileFormat::csv;
  if (name == "json") return ProfileFormat::json;
  throw std::invalid_argument("unknown profile format: " + name);
}

// Shared solve/export options.
struct IvpOpts {
  double kappa = 1.0, lambda = 0.0, u0 = 0.0, rmax = 1.0;
  double tol = 1e-10, max_step = 0.1, spacing = 0.0;
  std::string out, format = "json";
};

void add_ivp_options(CLI::App* sub, IvpOpts& o, bool rmax_required = true) {
  sub->add_option("--kappa", o.kappa, "curvature coefficient (nonzero)")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  sub->add_option("--u0", o.u0, "height at the axis r = 0")
      ->envname("BANDSOLVE_U0")
      ->required();
  auto* rm = sub->add_option("--rmax", o.rmax, "right end of the radial interval")
                 ->envname("BANDSOLVE_RMAX");
  if (rmax_required) rm->required();
  sub->add_option("--lambda", o.lambda,
                  "constant curvature offset; normalized away and re-applied "
                  "as a vertical shift on export")
      ->envname("BANDSOLVE_LAMBDA");
  sub->add_option("--tol", o.tol, "integrator abs+rel tolerance")
      ->envname("BANDSOLVE_TOL");
  sub->add_option("--max-step", o.max_step, "integrator step cap");
  sub->add_option("--spacing", o.spacing, "uniform sample spacing (0 = step ends)");
}

IntegratorControl make_ctrl(const IvpOpts& o) {
  IntegratorControl ctrl;
  ctrl.abs_tol = ctrl.rel_tol = o.tol;
  ctrl.max_step = o.max_step;
  ctrl.sample_spacing = o.spacing;
  return ctrl;
}

int run_solve_ivp(const IvpOpts& o) {
  const LambdaNormalization norm = normalize_lambda({o.kappa, o.lambda, o.u0});
  const Profile p = integrate_ivp(norm.params, o.rmax, make_ctrl(o));
  const PhaseState end = p.samples.back();
  json j{{"command", "solve-ivp"},
         {"params", {{"kappa", o.kappa}, {"lambda", o.lambda}, {"u0", o.u0}}},
         {"support_plane_height", norm.shift},
         {"end",
          {{"r", end.r},
           {"u", end.u},
           {"slope", slope(end)},
           {"v", end.v},
           {"height", norm.shift + end.u}}},
         {"diagnostics", diagnostics_json(p)}};
  if (!o.out.empty()) {
    export_profile(p, o.out, parse_format(o.format));
    j["out"] = o.out;
  }
  emit(j);
  std::fprintf(stderr, "u(%.6g) = %.10g, slope %.10g (max residual %.3g)\n",
               end.r, end.u, slope(end), p.step_stats.max_residual);
  return 0;
}

struct BvpOpts {
  double a = 1.0, beta = 0.0, kappa = 1.0, tol = 1e-10;
  std::string out, format = "json";
};

void add_bvp_options(CLI::App* sub, BvpOpts& o) {
  sub->add_option("--a", o.a, "boundary radius")->envname("BANDSOLVE_A")->required();
  sub->add_option("--beta", o.beta, "contact angle (slope tanh(beta) at r = a)")
      ->envname("BANDSOLVE_BETA")
      ->required();
  sub->add_option("--kappa", o.kappa, "curvature coefficient (nonzero)")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  sub->add_option("--tol", o.tol, "shooting residual tolerance")
      ->envname("BANDSOLVE_TOL");
}

int run_solve_bvp(const BvpOpts& o) {
  const BvpProblem prob{o.a, o.beta, o.kappa};
  const ShootingResult res = solve_bvp(prob, o.tol);
  const PhaseState end = res.profile.samples.back();
  json j{{"command", "solve-bvp"},
         {"a", o.a},
         {"beta", o.beta},
         {"kappa", o.kappa},
         {"branch", to_string(res.branch)},
         {"u0", res.u0},
         {"young_residual", res.young_residual},
         {"iterations", res.iterations},
         {"bracket", {res.bracket.first, res.bracket.second}},
         {"boundary",
          {{"u", end.u}, {"slope", slope(end)}, {"target_slope", std::tanh(o.beta)}}},
         {"diagnostics", diagnostics_json(res.profile)}};
  // First-integral closed form for the boundary height, as a cross-check.
  const double q =
      res.u0 * res.u0 + 2.0 / o.kappa * (std::cosh(o.beta) - 1.0);
  if (q >= 0.0)
    j["boundary"]["u_closed_form"] = std::copysign(std::sqrt(q), end.u);
  if (!o.out.empty()) {
    export_profile(res.profile, o.out, parse_format(o.format));
    j["out"] = o.out;
  }
  emit(j);
  std::fprintf(stderr, "branch %s: u0 = %.12g (residual %.3g, %d iterations)\n",
               to_string(res.branch), res.u0, res.young_residual, res.iterations);
  return 0;
}

int run_foliate(double a, double b, double kappa, double tol) {
  const double u0 = solve_foliation(a, b, kappa, tol);
  const Profile p = integrate_ivp({kappa, 0.0, u0}, a);
  const double u_at_a = p.samples.back().u;
  emit(json{{"command", "foliate"},
            {"a", a},
            {"b", b},
            {"kappa", kappa},
            {"u0", u0},
            {"u_at_a", u_at_a},
            {"height_residual", u_at_a - b}});
  std::fprintf(stderr, "leaf through (%.6g, %.6g): u0 = %.12g\n", a, b, u0);
  return 0;
}

int run_pendent(double kappa, double u0_in, double slope_tol) {
  if (!(kappa < 0.0))
    throw std::invalid_argument("pendent: requires kappa < 0");
  if (u0_in == 0.0)
    throw std::invalid_argument("pendent: u0 = 0 is the plane, not a pendent band");
  const SignCanonicalization canon = canonicalize_sign({kappa, 0.0, u0_in});
  const PendentSummary s = pendent_summary(canon.params);
  const double cf = max_slope_closed_form(canon.params);
  const double slope_err = std::abs(s.max_slope - cf);
  json j{{"command", "pendent"},
         {"kappa", kappa},
         {"u0", canon.params.u0},
         {"sign_flipped", canon.flipped},
         {"r_o", s.r_o},
         {"period", s.period},
         {"amplitude", s.amplitude},
         {"max_slope", s.max_slope},
         {"max_slope_closed_form", cf},
         {"max_slope_error", slope_err},
         {"grid_max_slope", s.grid_max_slope},
         {"extrema", s.extrema_locations},
         {"period_residual", s.period_residual},
         {"first_zero_lower", s.first_zero_lower},
         {"first_zero_lower_primitive", s.first_zero_lower_primitive},
         {"inflection_margin", s.inflection_margin},
         {"passed", slope_err <= slope_tol}};
  if (canon.flipped)
    j["note"] = "u0 sign flipped to match kappa; the stated profile is -u";
  emit(j);
  std::fprintf(stderr,
               "r_o = %.10g, period = %.10g, amplitude = %.10g\n"
               "max slope %.10g vs closed form %.10g (|diff| %.3g)\n",
               s.r_o, s.period, s.amplitude, s.max_slope, cf, slope_err);
  return slope_err <= slope_tol ? 0 : 1;
}

int run_bounds(double a, double beta, double kappa, double tol) {
  const bool reflected = beta < 0.0;
  const BvpProblem eff{a, std::abs(beta), kappa};
  const ShootingResult res = solve_bvp(eff, 1e-10);
  const BoundsReport rep = kappa > 0.0
                               ? run_sessile_bounds(res, eff, tol)
                               : check_pendent_estimates(res, eff, tol);
  json j{{"command", "bounds"},
         {"a", a},
         {"beta", beta},
         {"kappa", kappa},
         {"branch", to_string(res.branch)},
         {"u0", reflected ? -res.u0 : res.u0},
         {"records", records_json(rep)},
         {"min_slack", rep.min_slack},
         {"passed", rep.passed}};
  if (reflected)
    j["note"] = "estimates evaluated on the reflected problem (beta, u) -> (-beta, -u)";
  emit(j);
  std::fprintf(stderr, "%s bounds at a=%.6g beta=%.6g kappa=%.6g:\n",
               kappa > 0.0 ? "sessile" : "pendent", a, beta, kappa);
  print_records(rep);
  std::fprintf(stderr, "min slack %.3e -> %s\n", rep.min_slack,
               rep.passed ? "pass" : "FAIL");
  return rep.passed ? 0 : 1;
}

struct CompareOpts {
  std::string mode;
  double kappa = 0.0, kappa2 = 0.0, u0 = 0.0, delta = 0.0;
  double a = 0.0, beta = 0.0, rmax = 0.0, tol = 1e-9;
  int n = 40;
  bool has_a = false, has_beta = false, has_u0 = false, has_delta = false,
       has_kappa2 = false, has_rmax = false;
};

std::vector<double> off_axis_grid(double rmax, int n) {
  if (!(rmax > 0.0) || n < 1)
    throw std::invalid_argument("compare: need --rmax > 0 and a positive grid size");
  std::vector<double> g(n);
  for (int i = 1; i <= n; ++i) g[i - 1] = rmax * i / n;
  return g;
}

int run_compare(const CompareOpts& o) {
  ComparisonVerdict v;
  if (o.mode == "kappa") {
    if (!o.has_kappa2)
      throw std::invalid_argument("compare --mode kappa: requires --kappa2");
    if (o.has_a || o.has_beta) {
      if (!(o.has_a && o.has_beta))
        throw std::invalid_argument("compare --mode kappa: need both --a and --beta");
      v = compare_kappa_bvp(o.a, o.beta, o.kappa, o.kappa2, o.n, o.tol);
    } else if (o.kappa < 0.0) {
      if (!o.has_u0)
        throw std::invalid_argument("compare --mode kappa: requires --u0");
      v = compare_kappa_pendent(o.u0, o.kappa, o.kappa2, o.n, o.tol);
    } else {
      if (!o.has_u0)
        throw std::invalid_argument("compare --mode kappa: requires --u0");
      v = compare_kappa_ivp(o.u0, o.kappa, o.kappa2, off_axis_grid(o.rmax, o.n),
                            o.tol);
    }
  } else if (o.mode == "u0") {
    if (!(o.has_u0 && o.has_delta))
      throw std::invalid_argument("compare --mode u0: requires --u0 and --delta");
    if (o.kappa < 0.0)
      v = compare_u0_pendent(o.kappa, o.u0, o.delta, o.n, o.tol);
    else
      v = compare_u0(o.kappa, o.u0, o.delta, off_axis_grid(o.rmax, o.n), o.tol);
  } else {
    throw std::invalid_argument("compare: --mode must be kappa or u0");
  }
  emit(json{{"command", "compare"},
            {"mode", o.mode},
            {"relation", to_string(v.relation)},
            {"grid", v.grid},
            {"slacks", v.slacks},
            {"min_slack", v.min_slack},
            {"passed", v.passed},
            {"note", v.note}});
  std::fprintf(stderr, "%s over %zu grid points: min slack %.3e -> %s%s%s\n",
               to_string(v.relation), v.grid.size(), v.min_slack,
               v.passed ? "pass" : "FAIL", v.note.empty() ? "" : "; ",
               v.note.c_str());
  return v.passed ? 0 : 1;
}

struct MeshOpts {
  IvpOpts ivp;
  std::string profile_file, out;
  double half_width = 1.0, cylinder = 0.0;
  int n_rulings = 17, n_directrix = 0;
  bool has_cylinder = false, has_profile = false;
};

int run_export_mesh(const MeshOpts& o) {
  SurfaceMesh mesh;
  json j{{"command", "export-mesh"}, {"out", o.out}};
  if (o.has_cylinder) {
    const Hyperbola h = hyperbolic_cylinder(o.cylinder);
    const int nd = o.n_directrix > 0 ? o.n_directrix : 201;
    mesh = build_hyperbola_mesh(h, o.ivp.rmax, o.half_width, o.n_rulings, nd);
    j["cylinder_curvature"] = o.cylinder;
  } else if (o.has_profile) {
    const Profile p = import_profile(o.profile_file);
    mesh = build_surface_mesh(p, o.half_width, o.n_rulings, o.n_directrix);
    j["curvature_residual"] = mesh_curvature_residual(mesh, p.params.kappa);
    j["profile"] = o.profile_file;
  } else {
    const LambdaNormalization norm =
        normalize_lambda({o.ivp.kappa, o.ivp.lambda, o.ivp.u0});
    IntegratorControl ctrl = make_ctrl(o.ivp);
    if (ctrl.sample_spacing == 0.0 && o.n_directrix == 0)
      ctrl.sample_spacing = o.ivp.rmax / 256.0;
    const Profile p = integrate_ivp(norm.params, o.ivp.rmax, ctrl);
    mesh = build_surface_mesh(p, o.half_width, o.n_rulings, o.n_directrix,
                              norm.shift);
    j["curvature_residual"] =
        mesh_curvature_residual(mesh, o.ivp.kappa, norm.shift);
    j["support_plane_height"] = norm.shift;
  }
  export_mesh(mesh, o.out);
  j["n_vertices"] = mesh.vertices.size();
  j["n_quads"] = mesh.quads.size();
  j["n_rulings"] = mesh.n_rulings;
  j["n_directrix"] = mesh.n_directrix;
  emit(j);
  std::fprintf(stderr, "wrote %zu vertices, %zu quads to %s\n",
               mesh.vertices.size(), mesh.quads.size(), o.out.c_str());
  return 0;
}

struct PlotOpts {
  double kappa = 1.0, u0 = 0.0, rmax = 0.0, a = 0.0, beta = 0.0, tol = 1e-10;
  std::string profile_file, out, title;
  bool envelope = false;
  bool has_a = false, has_beta = false, has_u0 = false, has_profile = false;
};

int run_plot(const PlotOpts& o) {
  std::vector<PlotCurve> curves;
  std::string title = o.title;
  if (o.has_profile) {
    const Profile p = import_profile(o.profile_file);
    curves.push_back(curve_from_profile(p, "u(r)"));
    if (title.empty()) title = o.profile_file;
  } else if (o.has_a || o.has_beta) {
    if (!(o.has_a && o.has_beta))
      throw std::invalid_argument("plot: need both --a and --beta");
    const ShootingResult res = solve_bvp({o.a, o.beta, o.kappa}, o.tol);
    curves.push_back(curve_from_profile(res.profile, "u(r)"));
    if (o.envelope) {
      if (res.branch == Branch::sessile) {
        const SessileEnvelope env = sessile_envelope(res, o.a);
        curves.push_back(curve_from_hyperbola(env.lower, 0.0, o.a, "y1"));
        curves.push_back(curve_from_hyperbola(env.upper, 0.0, o.a, "y2"));
        const double sh = std::sinh(std::abs(o.beta));
        const double u_a = res.profile.samples.back().u;
        const Hyperbola y3{u_a - o.a * std::cosh(o.beta) / sh, o.a / sh};
        curves.push_back(curve_from_hyperbola(y3, 0.0, o.a, "y3"));
      } else if (res.branch == Branch::pendent_negative) {
        const double m4 = 1.0 / (o.kappa * res.u0);
        curves.push_back(curve_from_hyperbola({res.u0 - m4, m4}, 0.0, o.a, "y4"));
      }
    }
    if (title.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "a=%g beta=%g kappa=%g", o.a, o.beta, o.kappa);
      title = buf;
    }
  } else {
    if (!o.has_u0 || !(o.rmax > 0.0))
      throw std::invalid_argument("plot: need --profile, --a/--beta, or --u0/--rmax");
    const ModelParams mp{o.kappa, 0.0, o.u0};
    const Profile p = integrate_ivp(mp, o.rmax);
    curves.push_back(curve_from_profile(p, "u(r)"));
    if (o.envelope && o.kappa > 0.0 && o.u0 > 0.0) {
      const double m1 = 1.0 / (o.kappa * o.u0);
      curves.push_back(curve_from_hyperbola({o.u0 - m1, m1}, 0.0, o.rmax, "y1"));
    } else if (o.envelope && o.kappa < 0.0 && o.u0 < 0.0) {
      const double m4 = 1.0 / (o.kappa * o.u0);
      const double hi = std::min(o.rmax, first_zero(mp));
      curves.push_back(curve_from_hyperbola({o.u0 - m4, m4}, 0.0, hi, "y4"));
    }
    if (title.empty()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "kappa=%g u0=%g", o.kappa, o.u0);
      title = buf;
    }
  }
  export_plot(curves, o.out, title);
  json labels = json::array();
  for (const PlotCurve& c : curves) labels.push_back(c.label);
  emit(json{{"command", "plot"}, {"out", o.out}, {"curves", labels}});
  std::fprintf(stderr, "wrote %zu curves to %s\n", curves.size(), o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stationary band solver: profiles, estimates, meshes"};
  app.require_subcommand(1);
  int rc = 0;

  IvpOpts ivp;
  auto* s_ivp = app.add_subcommand("solve-ivp", "integrate the profile from the axis");
  add_ivp_options(s_ivp, ivp);
  s_ivp->add_option("--out", ivp.out, "write the profile to this file (atomic)");
  s_ivp->add_option("--format", ivp.format, "profile file format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  s_ivp->callback([&] { rc = run_solve_ivp(ivp); });

  BvpOpts bvp;
  auto* s_bvp = app.add_subcommand("solve-bvp", "shoot for the contact-angle condition");
  add_bvp_options(s_bvp, bvp);
  s_bvp->add_option("--out", bvp.out, "write the solved profile to this file");
  s_bvp->add_option("--format", bvp.format, "profile file format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  s_bvp->callback([&] { rc = run_solve_bvp(bvp); });

  double fol_a = 1.0, fol_b = 0.0, fol_kappa = 1.0, fol_tol = 1e-9;
  auto* s_fol = app.add_subcommand("foliate", "leaf of the foliation through (a, b)");
  s_fol->add_option("--a", fol_a, "boundary radius")->envname("BANDSOLVE_A")->required();
  s_fol->add_option("--b", fol_b, "prescribed height u(a)")->envname("BANDSOLVE_B")->required();
  s_fol->add_option("--kappa", fol_kappa, "curvature coefficient (> 0)")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  s_fol->add_option("--tol", fol_tol, "height tolerance")->envname("BANDSOLVE_TOL");
  s_fol->callback([&] { rc = run_foliate(fol_a, fol_b, fol_kappa, fol_tol); });

  double pen_kappa = -1.0, pen_u0 = -1.0, pen_tol = 1e-6;
  auto* s_pen = app.add_subcommand("pendent", "periodic structure of a pendent band");
  s_pen->add_option("--kappa", pen_kappa, "curvature coefficient (< 0)")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  s_pen->add_option("--u0", pen_u0, "height at the axis")->envname("BANDSOLVE_U0")->required();
  s_pen->add_option("--tol", pen_tol, "max-slope closed-form check tolerance")
      ->envname("BANDSOLVE_TOL");
  s_pen->callback([&] { rc = run_pendent(pen_kappa, pen_u0, pen_tol); });

  double bnd_a = 1.0, bnd_beta = 0.0, bnd_kappa = 1.0, bnd_tol = 1e-9;
  auto* s_bnd = app.add_subcommand("bounds", "estimate report for a solved problem");
  s_bnd->add_option("--a", bnd_a, "boundary radius")->envname("BANDSOLVE_A")->required();
  s_bnd->add_option("--beta", bnd_beta, "contact angle")->envname("BANDSOLVE_BETA")->required();
  s_bnd->add_option("--kappa", bnd_kappa, "curvature coefficient (nonzero)")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  s_bnd->add_option("--tol", bnd_tol, "strictness tolerance")->envname("BANDSOLVE_TOL");
  s_bnd->callback([&] { rc = run_bounds(bnd_a, bnd_beta, bnd_kappa, bnd_tol); });

  CompareOpts cmp;
  auto* s_cmp = app.add_subcommand("compare", "monotonicity verdicts");
  s_cmp->add_option("--mode", cmp.mode, "kappa (coefficient) or u0 (axis height)")
      ->check(CLI::IsMember({"kappa", "u0"}))
      ->required();
  s_cmp->add_option("--kappa", cmp.kappa, "first curvature coefficient")
      ->envname("BANDSOLVE_KAPPA")
      ->required();
  auto* o_k2 = s_cmp->add_option("--kappa2", cmp.kappa2, "second coefficient (mode kappa)");
  auto* o_u0 = s_cmp->add_option("--u0", cmp.u0, "axis height")->envname("BANDSOLVE_U0");
  auto* o_dl = s_cmp->add_option("--delta", cmp.delta, "axis-height shift (mode u0)");
  auto* o_a = s_cmp->add_option("--a", cmp.a, "boundary radius (BVP comparison)");
  auto* o_be = s_cmp->add_option("--beta", cmp.beta, "contact angle (BVP comparison)");
  auto* o_rm = s_cmp->add_option("--rmax", cmp.rmax, "grid extent (IVP comparison)")
                   ->envname("BANDSOLVE_RMAX");
  s_cmp->add_option("--n", cmp.n, "grid size");
  s_cmp->add_option("--tol", cmp.tol, "strictness tolerance")->envname("BANDSOLVE_TOL");
  s_cmp->callback([&] {
    cmp.has_kappa2 = o_k2->count() > 0;
    cmp.has_u0 = o_u0->count() > 0;
    cmp.has_delta = o_dl->count() > 0;
    cmp.has_a = o_a->count() > 0;
    cmp.has_beta = o_be->count() > 0;
    cmp.has_rmax = o_rm->count() > 0;
    rc = run_compare(cmp);
  });

  MeshOpts mesh;
  auto* s_mesh = app.add_subcommand("export-mesh", "sweep a profile into a quad mesh");
  auto* m_prof = s_mesh->add_option("--profile", mesh.profile_file,
                                    "read the directrix from a profile file");
  auto* m_cyl = s_mesh->add_option(
      "--cylinder", mesh.cylinder,
      "hyperbolic cylinder of this constant curvature instead of a solve");
  s_mesh->add_option("--kappa", mesh.ivp.kappa, "curvature coefficient")
      ->envname("BANDSOLVE_KAPPA");
  s_mesh->add_option("--u0", mesh.ivp.u0, "height at the axis")->envname("BANDSOLVE_U0");
  s_mesh->add_option("--lambda", mesh.ivp.lambda, "constant curvature offset")
      ->envname("BANDSOLVE_LAMBDA");
  s_mesh->add_option("--rmax", mesh.ivp.rmax, "radial extent")->envname("BANDSOLVE_RMAX");
  s_mesh->add_option("--tol", mesh.ivp.tol, "integrator tolerance")->envname("BANDSOLVE_TOL");
  s_mesh->add_option("--half-width", mesh.half_width, "ruling half-length w");
  s_mesh->add_option("--n-rulings", mesh.n_rulings, "vertices per ruling (>= 2)");
  s_mesh->add_option("--n-directrix", mesh.n_directrix,
                     "uniform directrix samples (0 = use profile samples)");
  s_mesh->add_option("--out", mesh.out, "mesh file to write")->required();
  s_mesh->callback([&] {
    mesh.has_profile = m_prof->count() > 0;
    mesh.has_cylinder = m_cyl->count() > 0;
    rc = run_export_mesh(mesh);
  });

  PlotOpts plot;
  auto* s_plot = app.add_subcommand("plot", "profile plot with optional overlays");
  auto* p_prof = s_plot->add_option("--profile", plot.profile_file, "profile file to plot");
  s_plot->add_option("--kappa", plot.kappa, "curvature coefficient")
      ->envname("BANDSOLVE_KAPPA");
  auto* p_u0 = s_plot->add_option("--u0", plot.u0, "height at the axis (IVP plot)")
                   ->envname("BANDSOLVE_U0");
  s_plot->add_option("--rmax", plot.rmax, "radial extent (IVP plot)")
      ->envname("BANDSOLVE_RMAX");
  auto* p_a = s_plot->add_option("--a", plot.a, "boundary radius (BVP plot)");
  auto* p_be = s_plot->add_option("--beta", plot.beta, "contact angle (BVP plot)");
  s_plot->add_option("--tol", plot.tol, "solver tolerance")->envname("BANDSOLVE_TOL");
  s_plot->add_flag("--envelope", plot.envelope, "overlay the bounding hyperbolas");
  s_plot->add_option("--title", plot.title, "plot title");
  s_plot->add_option("--out", plot.out, "plot file to write")->required();
  s_plot->callback([&] {
    plot.has_profile = p_prof->count() > 0;
    plot.has_u0 = p_u0->count() > 0;
    plot.has_a = p_a->count() > 0;
    plot.has_beta = p_be->count() > 0;
    rc = run_plot(plot);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const no_bracket_error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    if (!e.scan.empty())
      std::fprintf(stderr, "scan trace: %zu points, u0 in [%.6g, %.6g]\n",
                   e.scan.size(), e.scan.back().u0, e.scan.front().u0);
    return 3;
  } catch (const integration_error& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const out_of_regime_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const json::parse_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return rc;
}
