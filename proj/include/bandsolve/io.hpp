#pragma once

#include "bandsolve/bounds.hpp"
#include "bandsolve/ode.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace bandsolve {

/// CSV sample table, columns r,u,slope,v,psi,residual at 10 significant
/// digits. Human-diffable; lossy. Use the JSON record for exact round-trips.
void write_profile_csv(std::ostream& os, const Profile& p);

/// JSON record {params, control, samples, diagnostics}. Doubles serialize
/// with shortest round-trip formatting, so import reproduces samples
/// bit-identically.
std::string profile_to_json(const Profile& p);
Profile profile_from_json(const std::string& text);

enum class ProfileFormat { csv, json };

/// Atomic file export (temp file + rename) in either format.
void export_profile(const Profile& p, const std::string& path, ProfileFormat fmt);

Profile import_profile(const std::string& path);

/// Band mesh: the directrix (r, height_offset + u(r)) swept along the ruling
/// direction x2 in [-half_width, half_width]. Vertices are indexed
/// [i_directrix * n_rulings + j]; every ruling carries one height value, so
/// rulings are horizontal bit-exactly.
struct SurfaceMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 4>> quads;
  int n_directrix = 0;
  int n_rulings = 0;

  double directrix_r(int i) const { return vertices[i * n_rulings][0]; }
  double directrix_u(int i) const { return vertices[i * n_rulings][2]; }
};

/// n_directrix = 0 uses the profile samples as the directrix; a positive
/// count resamples uniformly over [r_min, r_max] through the dense
/// interpolant. height_offset re-applies a lambda/kappa normalization shift.
SurfaceMesh build_surface_mesh(const Profile& p, double half_width,
                               int n_rulings, int n_directrix = 0,
                               double height_offset = 0.0);

/// Same sweep for a closed-form hyperbola directrix on [0, r_max].
SurfaceMesh build_hyperbola_mesh(const Hyperbola& h, double r_max,
                                 double half_width, int n_rulings,
                                 int n_directrix);

void write_obj(std::ostream& os, const SurfaceMesh& mesh);
void export_mesh(const SurfaceMesh& mesh, const std::string& path);

/// Worst deviation of the three-point discrete curvature of the directrix
/// from kappa*(u - height_offset); O(h^2) on a uniform directrix.
double mesh_curvature_residual(const SurfaceMesh& mesh, double kappa,
                               double height_offset = 0.0);

struct PlotCurve {
  std::string label;
  std::vector<std::array<double, 2>> pts;
  bool dashed = false;
};

PlotCurve curve_from_profile(const Profile& p, std::string label,
                             std::size_t max_points = 512);
PlotCurve curve_from_hyperbola(const Hyperbola& h, double r_lo, double r_hi,
                               std::string label, int n = 257);

/// Deterministic SVG line plot (fixed formatting, no timestamps); byte
/// identical across runs for identical input.
std::string render_plot_svg(const std::vector<PlotCurve>& curves,
                            const std::string& title);
void export_plot(const std::vector<PlotCurve>& curves, const std::string& path,
                 const std::string& title);

/// Write text to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& text);

}  // namespace bandsolve
