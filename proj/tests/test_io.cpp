#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bandsolve/io.hpp"

using namespace bandsolve;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("bandsolve_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string operator/(const char* name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("csv export of the plane profile is byte-exact") {
  IntegratorControl ctrl;
  ctrl.sample_spacing = 0.25;
  const Profile p = integrate_ivp({1.0, 0.0, 0.0}, 1.0, ctrl);
  std::ostringstream os;
  write_profile_csv(os, p);
  CHECK(os.str() ==
        "r,u,slope,v,psi,residual\n"
        "0,0,0,0,0,0\n"
        "0.25,0,0,0,0,0\n"
        "0.5,0,0,0,0,0\n"
        "0.75,0,0,0,0,0\n"
        "1,0,0,0,0,0\n");
}

TEST_CASE("csv rows carry consistent slope and angle columns") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 1.0);
  std::ostringstream os;
  write_profile_csv(os, p);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,u,slope,v,psi,residual");
  int rows = 0;
  while (std::getline(is, line)) {
    double r, u, sl, v, psi, res;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &r, &u, &sl,
                        &v, &psi, &res) == 6);
    CHECK(sl == doctest::Approx(v / std::sqrt(1.0 + v * v)).epsilon(1e-8));
    CHECK(psi == doctest::Approx(std::asinh(v)).epsilon(1e-8));
    CHECK(res < 1e-8);
    ++rows;
  }
  CHECK(rows == static_cast<int>(p.samples.size()));
}

TEST_CASE("json round-trip reproduces samples bit-identically") {
  const Profile p = integrate_ivp({-1.0, 0.0, -1.0}, 2.0);
  const std::string text = profile_to_json(p);
  const Profile q = profile_from_json(text);
  CHECK(q.params.kappa == p.params.kappa);
  CHECK(q.params.u0 == p.params.u0);
  REQUIRE(q.samples.size() == p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    CHECK(q.samples[i].r == p.samples[i].r);
    CHECK(q.samples[i].u == p.samples[i].u);
    CHECK(q.samples[i].v == p.samples[i].v);
  }
  // Re-serialization is byte-stable.
  CHECK(profile_to_json(q) == text);
}

TEST_CASE("json import validates the sample grid") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 1.0);
  std::string text = profile_to_json(p);
  CHECK_THROWS_AS(profile_from_json("{\"params\":{}}"), std::exception);
  // corrupt the r-ordering
  Profile bad = p;
  std::swap(bad.samples[1].r, bad.samples[2].r);
  CHECK_THROWS_AS(profile_from_json(profile_to_json(bad)), std::runtime_error);
}

TEST_CASE("file export round-trip through both formats") {
  TempDir tmp;
  const Profile p = integrate_ivp({1.0, 0.0, 0.5}, 1.5);

  const std::string jpath = tmp / "profile.json";
  export_profile(p, jpath, ProfileFormat::json);
  const Profile q = import_profile(jpath);
  REQUIRE(q.samples.size() == p.samples.size());
  CHECK(q.samples.back().u == p.samples.back().u);
  CHECK(!std::filesystem::exists(jpath + ".tmp"));  // atomic rename cleaned up

  const std::string cpath = tmp / "profile.csv";
  export_profile(p, cpath, ProfileFormat::csv);
  const std::string text = slurp(cpath);
  CHECK(text.rfind("r,u,slope,v,psi,residual\n", 0) == 0);
}

TEST_CASE("surface mesh sweeps the directrix with horizontal rulings") {
  IntegratorControl ctrl;
  ctrl.sample_spacing = 0.5;
  const Profile p = integrate_ivp({1.0, 0.0, 0.0}, 1.0, ctrl);
  const SurfaceMesh mesh = build_surface_mesh(p, 1.0, 2);
  CHECK(mesh.n_directrix == 3);
  CHECK(mesh.n_rulings == 2);
  REQUIRE(mesh.vertices.size() == 6);
  REQUIRE(mesh.quads.size() == 2);

  std::ostringstream os;
  write_obj(os, mesh);
  CHECK(os.str() ==
        "# band mesh: 3 directrix points x 2 rulings\n"
        "v 0 -1 0\n"
        "v 0 1 0\n"
        "v 0.5 -1 0\n"
        "v 0.5 1 0\n"
        "v 1 -1 0\n"
        "v 1 1 0\n"
        "f 1 3 4 2\n"
        "f 3 5 6 4\n");
}

TEST_CASE("rulings are horizontal bit-exactly on a curved profile") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 2.0);
  const SurfaceMesh mesh = build_surface_mesh(p, 0.7, 9);
  for (int i = 0; i < mesh.n_directrix; ++i) {
    const double u = mesh.vertices[i * mesh.n_rulings][2];
    for (int j = 1; j < mesh.n_rulings; ++j)
      CHECK(mesh.vertices[i * mesh.n_rulings + j][2] == u);  // exact equality
  }
  // Quads index within bounds and wind consistently.
  for (const auto& q : mesh.quads)
    for (int idx : q) {
      CHECK(idx >= 0);
      CHECK(idx < static_cast<int>(mesh.vertices.size()));
    }
}

TEST_CASE("uniform resampling honors the requested directrix count") {
  const Profile p = integrate_ivp({-1.0, 0.0, -1.0}, 2.0);
  const SurfaceMesh mesh = build_surface_mesh(p, 1.0, 3, 201);
  CHECK(mesh.n_directrix == 201);
  CHECK(mesh.directrix_r(0) == 0.0);
  CHECK(mesh.directrix_r(200) == doctest::Approx(2.0).epsilon(1e-15));
  for (int i = 1; i <= 200; ++i)
    CHECK(mesh.directrix_r(i) - mesh.directrix_r(i - 1) ==
          doctest::Approx(0.01).epsilon(1e-10));
  CHECK_THROWS_AS(build_surface_mesh(p, 1.0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_surface_mesh(p, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_surface_mesh(p, 0.0, 3), std::invalid_argument);
}

TEST_CASE("mesh curvature residual shrinks at second order") {
  IntegratorControl tight;
  tight.max_step = 0.005;
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 2.0, tight);
  const double res_h = mesh_curvature_residual(
      build_surface_mesh(p, 1.0, 2, 101), 1.0);  // h = 0.02
  const double res_h2 = mesh_curvature_residual(
      build_surface_mesh(p, 1.0, 2, 201), 1.0);  // h = 0.01
  const double order = std::log2(res_h / res_h2);
  CHECK(order > 1.9);
  CHECK(order < 2.5);
}

TEST_CASE("height offset restores the support-plane frame") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 1.0);
  const SurfaceMesh mesh = build_surface_mesh(p, 1.0, 2, 101, 3.0);
  CHECK(mesh.directrix_u(0) == doctest::Approx(4.0).epsilon(1e-12));
  // The curvature law holds about the shifted datum.
  CHECK(mesh_curvature_residual(mesh, 1.0, 3.0) < 1e-3);
}

TEST_CASE("hyperbola mesh matches the closed form") {
  const Hyperbola h = hyperbolic_cylinder(1.0);
  const SurfaceMesh mesh = build_hyperbola_mesh(h, 2.0, 1.0, 2, 401);
  CHECK(mesh.n_directrix == 401);
  for (int i = 0; i < 401; i += 50)
    CHECK(mesh.directrix_u(i) ==
          doctest::Approx(h.value(mesh.directrix_r(i))).epsilon(1e-14));
  // Constant curvature 1 to discretization accuracy.
  CHECK(mesh_curvature_residual(mesh, 0.0, 0.0) > 0.9);  // |crv - 0| ~ 1
}

TEST_CASE("obj export writes a parseable file") {
  TempDir tmp;
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 1.0);
  const SurfaceMesh mesh = build_surface_mesh(p, 1.0, 4, 33);
  const std::string path = tmp / "band.obj";
  export_mesh(mesh, path);
  const std::string text = slurp(path);
  CHECK(text.rfind("# band mesh: 33 directrix points x 4 rulings\n", 0) == 0);
  int v_count = 0, f_count = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++v_count;
    if (line.rfind("f ", 0) == 0) ++f_count;
  }
  CHECK(v_count == 33 * 4);
  CHECK(f_count == 32 * 3);
}

TEST_CASE("plot rendering is deterministic and self-contained") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 1.0);
  const PlotCurve c1 = curve_from_profile(p, "profile");
  const PlotCurve c2 =
      curve_from_hyperbola(hyperbolic_cylinder(1.0), 0.0, 1.0, "cylinder");
  CHECK(c2.dashed);
  CHECK(!c1.dashed);
  CHECK(c1.pts.front()[0] == 0.0);
  CHECK(c1.pts.back()[0] == doctest::Approx(1.0).epsilon(1e-15));

  const std::string svg = render_plot_svg({c1, c2}, "envelope check");
  CHECK(svg == render_plot_svg({c1, c2}, "envelope check"));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("envelope check") != std::string::npos);
  CHECK(svg.find("profile") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  CHECK_THROWS_AS(render_plot_svg({}, "empty"), std::invalid_argument);

  TempDir tmp;
  const std::string path = tmp / "plot.svg";
  export_plot({c1}, path, "solo");
  CHECK(slurp(path).rfind("<svg", 0) == 0);
}

TEST_CASE("curve decimation keeps the endpoints") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 5.0);
  const PlotCurve c = curve_from_profile(p, "long", 16);
  CHECK(c.pts.size() <= 18);  // stride decimation plus guaranteed endpoint
  CHECK(c.pts.front()[0] == 0.0);
  CHECK(c.pts.back()[0] == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("atomic_write replaces content without leaving temp files") {
  TempDir tmp;
  const std::string path = tmp / "note.txt";
  atomic_write(path, "first\n");
  atomic_write(path, "second\n");
  CHECK(slurp(path) == "second\n");
  CHECK(!std::filesystem::exists(path + ".tmp"));
}
