#include "bandsolve/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bandsolve {

namespace {

std::string num(double x, const char* pattern) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string g10(double x) { return num(x, "%.10g"); }
std::string g17(double x) { return num(x, "%.17g"); }

}  // namespace

void write_profile_csv(std::ostream& os, const Profile& p) {
  os << "r,u,slope,v,psi,residual\n";
  for (const PhaseState& s : p.samples) {
    os << g10(s.r) << ',' << g10(s.u) << ',' << g10(slope(s)) << ',' << g10(s.v)
       << ',' << g10(angle(s)) << ',' << g10(first_integral_residual(s, p.params))
       << '\n';
  }
}

std::string profile_to_json(const Profile& p) {
  nlohmann::json j;
  j["params"] = {{"kappa", p.params.kappa},
                 {"lambda", p.params.lambda},
                 {"u0", p.params.u0}};
  j["control"] = {{"abs_tol", p.step_stats.abs_tol},
                  {"rel_tol", p.step_stats.rel_tol}};
  j["diagnostics"] = {{"order", p.step_stats.order},
                      {"max_step_taken", p.step_stats.max_step_taken},
                      {"max_residual", p.step_stats.max_residual},
                      {"steps_accepted", p.step_stats.steps_accepted},
                      {"steps_rejected", p.step_stats.steps_rejected}};
  nlohmann::json samples = nlohmann::json::array();
  for (const PhaseState& s : p.samples)
    samples.push_back(nlohmann::json::array({s.r, s.u, s.v}));
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

Profile profile_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Profile p;
  p.params.kappa = j.at("params").at("kappa").get<double>();
  p.params.lambda = j.at("params").at("lambda").get<double>();
  p.params.u0 = j.at("params").at("u0").get<double>();
  p.step_stats.abs_tol = j.at("control").at("abs_tol").get<double>();
  p.step_stats.rel_tol = j.at("control").at("rel_tol").get<double>();
  const auto& d = j.at("diagnostics");
  p.step_stats.order = d.at("order").get<int>();
  p.step_stats.max_step_taken = d.at("max_step_taken").get<double>();
  p.step_stats.max_residual = d.at("max_residual").get<double>();
  p.step_stats.steps_accepted = d.at("steps_accepted").get<std::size_t>();
  p.step_stats.steps_rejected = d.at("steps_rejected").get<std::size_t>();
  for (const auto& row : j.at("samples"))
    p.samples.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                         row.at(2).get<double>()});
  for (std::size_t i = 1; i < p.samples.size(); ++i)
    if (!(p.samples[i - 1].r < p.samples[i].r))
      throw std::runtime_error("profile_from_json: samples not increasing in r");
  return p;
}

void atomic_write(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    os << text;
    if (!os.flush()) throw std::runtime_error("atomic_write: write failed");
  }
  fs::rename(tmp, target);
}

void export_profile(const Profile& p, const std::string& path, ProfileFormat fmt) {
  if (fmt == ProfileFormat::json) {
    atomic_write(path, profile_to_json(p));
  } else {
    std::ostringstream os;
    write_profile_csv(os, p);
    atomic_write(path, os.str());
  }
}

Profile import_profile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("import_profile: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return profile_from_json(buf.str());
}

namespace {

SurfaceMesh sweep(const std::vector<std::array<double, 2>>& directrix,
                  double half_width, int n_rulings) {
  if (n_rulings < 2)
    throw std::invalid_argument("build mesh: need at least 2 rulings");
  if (!(half_width > 0.0))
    throw std::invalid_argument("build mesh: half_width must be positive");
  SurfaceMesh mesh;
  mesh.n_directrix = static_cast<int>(directrix.size());
  mesh.n_rulings = n_rulings;
  mesh.vertices.reserve(directrix.size() * n_rulings);
  for (const auto& d : directrix) {
    for (int j = 0; j < n_rulings; ++j) {
      const double t = -half_width + 2.0 * half_width * j / (n_rulings - 1);
      mesh.vertices.push_back({d[0], t, d[1]});
    }
  }
  for (int i = 0; i + 1 < mesh.n_directrix; ++i) {
    for (int j = 0; j + 1 < n_rulings; ++j) {
      const int base = i * n_rulings + j;
      mesh.quads.push_back({base, base + n_rulings, base + n_rulings + 1, base + 1});
    }
  }
  return mesh;
}

}  // namespace

SurfaceMesh build_surface_mesh(const Profile& p, double half_width, int n_rulings,
                               int n_directrix, double height_offset) {
  std::vector<std::array<double, 2>> directrix;
  if (n_directrix == 0) {
    for (const PhaseState& s : p.samples)
      directrix.push_back({s.r, height_offset + s.u});
  } else {
    if (n_directrix < 2)
      throw std::invalid_argument("build_surface_mesh: n_directrix must be >= 2");
    const double lo = p.r_min(), hi = p.r_max();
    for (int i = 0; i < n_directrix; ++i) {
      const double r = lo + (hi - lo) * i / (n_directrix - 1);
      directrix.push_back({r, height_offset + p.state_at(r).u});
    }
  }
  return sweep(directrix, half_width, n_rulings);
}

SurfaceMesh build_hyperbola_mesh(const Hyperbola& h, double r_max,
                                 double half_width, int n_rulings,
                                 int n_directrix) {
  if (n_directrix < 2 || !(r_max > 0.0))
    throw std::invalid_argument("build_hyperbola_mesh: bad directrix spec");
  std::vector<std::array<double, 2>> directrix;
  for (int i = 0; i < n_directrix; ++i) {
    const double r = r_max * i / (n_directrix - 1);
    directrix.push_back({r, h.value(r)});
  }
  return sweep(directrix, half_width, n_rulings);
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  os << "# band mesh: " << mesh.n_directrix << " directrix points x "
     << mesh.n_rulings << " rulings\n";
  for (const auto& v : mesh.vertices)
    os << "v " << g17(v[0]) << ' ' << g17(v[1]) << ' ' << g17(v[2]) << '\n';
  for (const auto& q : mesh.quads)
    os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' '
       << q[3] + 1 << '\n';
}

void export_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ostringstream os;
  write_obj(os, mesh);
  atomic_write(path, os.str());
}

double mesh_curvature_residual(const SurfaceMesh& mesh, double kappa,
                               double height_offset) {
  double worst = 0.0;
  for (int i = 1; i + 1 < mesh.n_directrix; ++i) {
    const double r0 = mesh.directrix_r(i - 1), r1 = mesh.directrix_r(i),
                 r2 = mesh.directrix_r(i + 1);
    const double u0 = mesh.directrix_u(i - 1), u1 = mesh.directrix_u(i),
                 u2 = mesh.directrix_u(i + 1);
    const double hl = r1 - r0, hr = r2 - r1;
    const double d1 = (u2 - u0) / (hl + hr);
    const double d2 = 2.0 * (hl * u2 - (hl + hr) * u1 + hr * u0) / (hl * hr * (hl + hr));
    const double crv = d2 / std::pow(1.0 - d1 * d1, 1.5);
    worst = std::max(worst, std::abs(crv - kappa * (u1 - height_offset)));
  }
  return worst;
}

PlotCurve curve_from_profile(const Profile& p, std::string label,
                             std::size_t max_points) {
  PlotCurve c;
  c.label = std::move(label);
  const std::size_t n = p.samples.size();
  const std::size_t stride = std::max<std::size_t>(1, n / max_points);
  for (std::size_t i = 0; i < n; i += stride)
    c.pts.push_back({p.samples[i].r, p.samples[i].u});
  if (c.pts.back()[0] != p.samples.back().r)
    c.pts.push_back({p.samples.back().r, p.samples.back().u});
  return c;
}

PlotCurve curve_from_hyperbola(const Hyperbola& h, double r_lo, double r_hi,
                               std::string label, int n) {
  PlotCurve c;
  c.label = std::move(label);
  c.dashed = true;
  for (int i = 0; i < n; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / (n - 1);
    c.pts.push_back({r, h.value(r)});
  }
  return c;
}

std::string render_plot_svg(const std::vector<PlotCurve>& curves,
                            const std::string& title) {
  if (curves.empty()) throw std::invalid_argument("render_plot_svg: no curves");
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const PlotCurve& c : curves) {
    for (const auto& p : c.pts) {
      x0 = std::min(x0, p[0]); x1 = std::max(x1, p[0]);
      y0 = std::min(y0, p[1]); y1 = std::max(y1, p[1]);
    }
  }
  if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  const double W = 900, H = 600, ml = 70, mr = 20, mt = 40, mb = 50;
  auto X = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto Y = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"600\" "
        "viewBox=\"0 0 900 600\">\n";
  os << "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
  os << "<text x=\"450\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
        "font-size=\"16\">" << title << "</text>\n";
  // axes with 5 ticks per side
  os << "<g stroke=\"#444\" stroke-width=\"1\" font-family=\"monospace\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
    os << "<line x1=\"" << num(X(xv), "%.2f") << "\" y1=\"" << num(H - mb, "%.2f")
       << "\" x2=\"" << num(X(xv), "%.2f") << "\" y2=\"" << num(H - mb + 5, "%.2f")
       << "\"/>\n";
    os << "<text x=\"" << num(X(xv), "%.2f") << "\" y=\"" << num(H - mb + 18, "%.2f")
       << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#222\">" << num(xv, "%.4g")
       << "</text>\n";
    os << "<line x1=\"" << num(ml - 5, "%.2f") << "\" y1=\"" << num(Y(yv), "%.2f")
       << "\" x2=\"" << num(ml, "%.2f") << "\" y2=\"" << num(Y(yv), "%.2f") << "\"/>\n";
    os << "<text x=\"" << num(ml - 9, "%.2f") << "\" y=\"" << num(Y(yv) + 4, "%.2f")
       << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#222\">" << num(yv, "%.4g")
       << "</text>\n";
  }
  os << "<line x1=\"" << num(ml, "%.2f") << "\" y1=\"" << num(H - mb, "%.2f")
     << "\" x2=\"" << num(W - mr, "%.2f") << "\" y2=\"" << num(H - mb, "%.2f") << "\"/>\n";
  os << "<line x1=\"" << num(ml, "%.2f") << "\" y1=\"" << num(mt, "%.2f") << "\" x2=\""
     << num(ml, "%.2f") << "\" y2=\"" << num(H - mb, "%.2f") << "\"/>\n</g>\n";
  int ci = 0;
  for (const PlotCurve& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"" << palette[ci % 6]
       << "\" stroke-width=\"1.5\"";
    if (c.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (const auto& p : c.pts)
      os << num(X(p[0]), "%.2f") << ',' << num(Y(p[1]), "%.2f") << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << num(W - mr - 8, "%.2f") << "\" y=\""
       << num(mt + 16.0 * (ci + 1), "%.2f")
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" fill=\""
       << palette[ci % 6] << "\">" << c.label << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

void export_plot(const std::vector<PlotCurve>& curves, const std::string& path,
                 const std::string& title) {
  atomic_write(path, render_plot_svg(curves, title));
}

}  // namespace bandsolve
