#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "bandsolve/analysis.hpp"
#include "oracles.hpp"

using namespace bandsolve;

// Frozen quadrature values (see also test_ode.cpp / test_shooting.cpp).
static constexpr double kFirstZero_m1m1 = 1.8451711373602893;  // kappa=-1, u0=-1
static constexpr double kMaxSlopeSpot = 0.7453559924999299;    // sqrt(5)/3

TEST_CASE("sessile profiles are convex, increasing, and asymptotically steep") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 20.0);
  const SessileShapeReport rep = sessile_shape_check(p);
  CHECK(rep.passed);
  CHECK(rep.initial_curvature == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(rep.initial_curvature - 1.0) <= rep.initial_curvature_tol);
  CHECK(rep.min_increase > 0.0);
  CHECK(rep.min_slope_increase > 0.0);
  CHECK(rep.min_curvature > 0.0);
  CHECK(rep.tail_checked);
  CHECK(rep.tail_slope > rep.tail_slope_threshold);
  CHECK(rep.tail_slope > 0.99);
  CHECK(rep.tail_curvature_decrease > 0.0);
}

TEST_CASE("initial curvature tracks kappa * u0") {
  const Profile p = integrate_ivp({2.0, 0.0, 0.1}, 5.0);
  const SessileShapeReport rep = sessile_shape_check(p);
  CHECK(rep.passed);
  CHECK(rep.initial_curvature == doctest::Approx(0.2).epsilon(1e-2));
  CHECK(std::abs(rep.initial_curvature - 0.2) <= rep.initial_curvature_tol);
}

TEST_CASE("sessile shape check rejects the wrong regime") {
  CHECK_THROWS_AS(sessile_shape_check(integrate_ivp({-1.0, 0.0, 1.0}, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sessile_shape_check(integrate_ivp({1.0, 0.0, -1.0}, 1.0)),
                  std::invalid_argument);
  Profile empty;
  empty.params = {1.0, 0.0, 1.0};
  CHECK_THROWS_AS(sessile_shape_check(empty), std::invalid_argument);
}

TEST_CASE("growth envelopes hold along a long sessile profile") {
  const Profile p = integrate_ivp({1.0, 0.0, 1.0}, 20.0);
  const GrowthBoundsReport rep = growth_bounds_check(p);
  CHECK(rep.passed);
  CHECK(rep.min_lower_slack > 0.0);
  CHECK(rep.min_upper_slack > 0.0);

  const Profile pendent = integrate_ivp({-1.0, 0.0, -1.0}, 1.0);
  CHECK_THROWS_AS(growth_bounds_check(pendent), std::invalid_argument);
}

TEST_CASE("pendent summary reproduces the frozen reference profile") {
  const PendentSummary s = pendent_summary({-1.0, 0.0, -1.0});
  CHECK(s.r_o == doctest::Approx(kFirstZero_m1m1).epsilon(1e-9));
  CHECK(s.period == doctest::Approx(4.0 * kFirstZero_m1m1).epsilon(1e-8));
  CHECK(s.amplitude == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(s.period_residual < 1e-6);
  CHECK(s.max_slope == doctest::Approx(kMaxSlopeSpot).epsilon(1e-7));
  CHECK(s.grid_max_slope <= s.max_slope + 1e-9);
  CHECK(s.grid_max_slope == doctest::Approx(s.max_slope).epsilon(1e-3));
  CHECK(s.inflection_margin > 0.0);

  // Extrema sit at multiples of the half period 2 r_o.
  REQUIRE(s.extrema_locations.size() >= 4);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(std::abs(s.extrema_locations[k] - 2.0 * kFirstZero_m1m1 * k) < 1e-6);

  // Zero bounds sit below the zero; the primitive bound is cruder.
  CHECK(s.first_zero_lower < s.r_o);
  CHECK(s.first_zero_lower_primitive < s.first_zero_lower);
  CHECK(s.first_zero_lower == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(s.first_zero_lower_primitive == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // The profile oscillates inside [u0, -u0].
  for (const PhaseState& st : s.profile.samples) {
    CHECK(st.u >= -1.0 - 1e-9);
    CHECK(st.u <= 1.0 + 1e-9);
  }
}

TEST_CASE("first zero location matches direct quadrature") {
  for (const auto& [kappa, u0] : {std::pair{-1.0, -1.0}, std::pair{-0.5, -2.0},
                                  std::pair{-2.0, -0.5}}) {
    CHECK(first_zero({kappa, 0.0, u0}) ==
          doctest::Approx(oracle::pendent_first_zero(kappa, u0)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(first_zero({1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("closed-form pendent slope bound") {
  CHECK(max_slope_closed_form({-1.0, 0.0, -1.0}) ==
        doctest::Approx(kMaxSlopeSpot).epsilon(1e-15));
  // Always subluminal, and vanishing with the amplitude.
  for (double u0 : {-0.01, -0.3, -1.0, -3.0})
    CHECK(max_slope_closed_form({-1.0, 0.0, u0}) < 1.0);
  CHECK(max_slope_closed_form({-1.0, 0.0, -1e-6}) < 1e-5);
  CHECK_THROWS_AS(max_slope_closed_form({1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("pendent summary rejects the wrong regime") {
  CHECK_THROWS_AS(pendent_summary({1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(pendent_summary({-1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(pendent_summary({-1.0, 0.0, 0.0}), std::invalid_argument);
}

static std::vector<double> off_axis_grid(double r_max, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(r_max * i / n);
  return g;
}

TEST_CASE("raising kappa raises the profile pointwise (fixed axis height)") {
  const ComparisonVerdict v =
      compare_kappa_ivp(1.0, 0.5, 2.0, off_axis_grid(3.0, 25));
  CHECK(v.passed);
  CHECK(v.min_slack > 0.0);
  CHECK(v.relation == Relation::ivp_kappa);
  REQUIRE(v.slacks.size() == v.grid.size());
  for (double s : v.slacks) CHECK(s > 0.0);

  CHECK_THROWS_AS(compare_kappa_ivp(1.0, 2.0, 0.5, off_axis_grid(3.0, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compare_kappa_ivp(1.0, -1.0, 2.0, off_axis_grid(3.0, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compare_kappa_ivp(-1.0, 0.5, 2.0, off_axis_grid(3.0, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compare_kappa_ivp(1.0, 0.5, 2.0, std::vector<double>{0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("raising the axis height raises the whole profile by more than the shift") {
  const ComparisonVerdict v = compare_u0(1.0, 0.5, 0.25, off_axis_grid(3.0, 25));
  CHECK(v.passed);
  CHECK(v.min_slack > 0.0);
  CHECK(v.relation == Relation::u0_shift);
  CHECK_THROWS_AS(compare_u0(1.0, 0.5, 0.0, off_axis_grid(3.0, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compare_u0(-1.0, 0.5, 0.25, off_axis_grid(3.0, 5)),
                  std::invalid_argument);
}

TEST_CASE("raising kappa lowers the solved boundary-value profile") {
  const ComparisonVerdict v = compare_kappa_bvp(1.0, 1.0, 0.5, 2.0);
  CHECK(v.passed);
  CHECK(v.min_slack > 0.0);
  CHECK(v.relation == Relation::bvp_kappa);
  REQUIRE(v.grid.size() == 41);  // endpoints plus 39 interior points
  CHECK(v.grid.front() == 0.0);
  CHECK(v.grid.back() == 1.0);
  CHECK_THROWS_AS(compare_kappa_bvp(1.0, 0.0, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(compare_kappa_bvp(1.0, 1.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("pendent comparisons hold on the restricted window near the axis") {
  const ComparisonVerdict vk = compare_kappa_pendent(-1.0, -2.0, -1.0);
  CHECK(vk.passed);
  CHECK(vk.min_slack > 0.0);
  CHECK(vk.relation == Relation::pendent_kappa);
  CHECK(vk.note.find("window") != std::string::npos);

  const ComparisonVerdict vu = compare_u0_pendent(-1.0, -1.0, 0.25);
  CHECK(vu.passed);
  CHECK(vu.min_slack > 0.0);
  CHECK(vu.relation == Relation::pendent_u0_shift);
  CHECK(vu.note.find("partial monotonicity") != std::string::npos);

  CHECK_THROWS_AS(compare_kappa_pendent(-1.0, -1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(compare_u0_pendent(-1.0, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(compare_u0_pendent(1.0, -1.0, 0.25), std::invalid_argument);
}

TEST_CASE("relation labels are stable") {
  CHECK(std::strcmp(to_string(Relation::ivp_kappa), "ivp-kappa") == 0);
  CHECK(std::strcmp(to_string(Relation::bvp_kappa), "bvp-kappa") == 0);
  CHECK(std::strcmp(to_string(Relation::u0_shift), "u0-shift") == 0);
  CHECK(std::strcmp(to_string(Relation::pendent_kappa), "pendent-kappa") == 0);
  CHECK(std::strcmp(to_string(Relation::pendent_u0_shift), "pendent-u0-shift") == 0);
}
