#include <cmath>

#include "classes2d.hpp"
#include "doctest.h"
#include "geometry.hpp"

using namespace ppdm;

namespace {

constexpr double kPi = 3.14159265358979323846;

double pair_ppdm_diff(const class_pair& pr) {
  return (compute_ppdm(pr.reference) - compute_ppdm(pr.equivalent)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("classes2d") {
  TEST_CASE("parallelogram: axis-aligned rectangle sheared to known companion") {
    parallelogram_params p;
    p.phi1 = 0.0;
    p.phi3 = kPi / 2.0;
    p.d = 0.6;
    p.branch = 0;
    p.offsets = {1.5, 1.5, 1.0, 1.0};
    p.waypoints = {Eigen::Vector2d(1.0, 1.4)};
    auto res = gen_parallelogram_pair(p);

    CHECK(res.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.b == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(pair_ppdm_diff(res.pair) <= 1e-14);

    // Reference room is the rectangle itself.
    CHECK((res.pair.reference.planes[0].normal - Eigen::Vector2d(1.0, 0.0)).norm() <=
          1e-12);
    CHECK((res.pair.reference.planes[2].normal - Eigen::Vector2d(0.0, 1.0)).norm() <=
          1e-12);

    // First companion wall leans by atan(0.6 / 0.8).
    const Eigen::Vector2d n0 = res.pair.equivalent.planes[2].normal;
    CHECK(std::atan2(n0(1), n0(0)) == doctest::Approx(std::atan(0.75)).epsilon(1e-10));
    // Waypoint carried through the inverse-transpose map.
    CHECK((res.pair.equivalent.waypoints[0] - Eigen::Vector2d(1.0, 1.0)).norm() <=
          1e-12);
  }

  TEST_CASE("parallelogram: walls stay antipodal and distances match for shifted angles") {
    parallelogram_params p;
    p.phi1 = 0.35;
    p.phi3 = 1.9;
    p.d = 0.52;
    p.offsets = {1.1, 0.9, 1.3, 0.7};
    p.waypoints = {Eigen::Vector2d(0.3, -0.4), Eigen::Vector2d(-0.8, 0.6)};
    auto res = gen_parallelogram_pair(p);
    CHECK(pair_ppdm_diff(res.pair) <= 1e-13);
    for (const configuration* c : {&res.pair.reference, &res.pair.equivalent}) {
      CHECK((c->planes[0].normal + c->planes[1].normal).norm() <= 1e-12);
      CHECK((c->planes[2].normal + c->planes[3].normal).norm() <= 1e-12);
    }
  }

  TEST_CASE("parallelogram: extra walls reuse the base azimuths") {
    parallelogram_params p;
    p.phi1 = 0.2;
    p.phi3 = 1.5;
    p.d = 0.7;
    p.extra_walls = {0, 2};
    p.offsets = {1.0, 1.0, 1.2, 1.2, 2.5, -0.5};
    p.waypoints = {Eigen::Vector2d(0.1, 0.2)};
    auto res = gen_parallelogram_pair(p);
    CHECK(res.pair.reference.wall_count() == 6);
    CHECK(pair_ppdm_diff(res.pair) <= 1e-13);
    CHECK((res.pair.reference.planes[4].normal - res.pair.reference.planes[0].normal)
              .norm() <= 1e-12);
    CHECK(res.pair.reference.planes[4].offset == doctest::Approx(2.5));
  }

  TEST_CASE("parallelogram: degenerate and infeasible parameters are rejected") {
    parallelogram_params p;
    p.offsets = {1.0, 1.0, 1.0, 1.0};
    p.waypoints = {Eigen::Vector2d(0.0, 0.0)};

    SUBCASE("parallel base azimuths") {
      p.phi1 = 0.4;
      p.phi3 = 0.4 + kPi;  // same direction class
      try {
        gen_parallelogram_pair(p);
        FAIL("expected a throw");
      } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_class_parameters);
      }
    }

    SUBCASE("companion angle out of reach") {
      p.phi1 = 0.0;
      p.phi3 = kPi / 2.0;
      p.d = 2.0;  // d^2 sin^2(phi3) > 1
      try {
        gen_parallelogram_pair(p);
        FAIL("expected a throw");
      } catch (const error& e) {
        CHECK(e.code() == errc::infeasible_parameters);
      }
    }

    SUBCASE("forced branch is a reflection") {
      p.phi1 = 0.0;
      p.phi3 = kPi / 2.0;
      p.d = 1.0;
      p.branch = 2;  // (-, +) gives diag(-1, 1)
      try {
        gen_parallelogram_pair(p);
        FAIL("expected a throw");
      } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_class_parameters);
      }
    }

    SUBCASE("forced branch makes the map singular") {
      p.phi1 = kPi / 4.0;
      p.phi3 = 3.0 * kPi / 4.0;  // mirror angles: branch (+,+) collapses a to 0
      p.d = 0.6;
      p.branch = 0;
      try {
        gen_parallelogram_pair(p);
        FAIL("expected a throw");
      } catch (const error& e) {
        CHECK(e.code() == errc::degenerate_class_parameters);
      }
      p.branch = -1;  // automatic pick avoids the collapse
      CHECK_NOTHROW(gen_parallelogram_pair(p));
    }

    SUBCASE("offset count must match walls") {
      p.phi1 = 0.0;
      p.phi3 = kPi / 2.0;
      p.d = 0.6;
      p.offsets = {1.0, 1.0};
      CHECK_THROWS_AS(gen_parallelogram_pair(p), error);
    }
  }

  TEST_CASE("corridor: known shift of the kept coordinate") {
    corridor_params p;
    p.a = 1.0;
    p.offsets = {1.0, 2.0};
    p.waypoints0 = {Eigen::Vector2d(1.0, 1.0)};
    auto pr = gen_corridor_pair(p);
    CHECK(pair_ppdm_diff(pr) <= 1e-14);
    // Reference walls lean at atan(1); companion walls are axis-aligned.
    const Eigen::Vector2d n0 = pr.reference.planes[0].normal;
    CHECK(std::atan2(n0(1), n0(0)) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(pr.equivalent.planes[0].normal(0)) - 1.0) <= 1e-12);
    CHECK(std::abs(pr.equivalent.planes[0].normal(1)) <= 1e-12);
    // x' = (x + a y) / sqrt(a^2 + 1); the free coordinate defaults to y.
    CHECK(pr.equivalent.waypoints[0](0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pr.equivalent.waypoints[0](1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("corridor: alternating default signs and free coordinates") {
    corridor_params p;
    p.a = -0.7;
    p.offsets = {1.0, 1.4, 0.8, 1.9};
    p.waypoints0 = {Eigen::Vector2d(0.5, 0.1), Eigen::Vector2d(-0.2, 1.3)};
    p.free_coords = {2.0, -0.5};
    auto pr = gen_corridor_pair(p);
    CHECK(pair_ppdm_diff(pr) <= 1e-14);
    // Walls 0 and 1 face opposite ways by default.
    CHECK((pr.reference.planes[0].normal + pr.reference.planes[1].normal).norm() <=
          1e-12);
    CHECK(pr.equivalent.waypoints[0](1) == doctest::Approx(2.0));
    CHECK(pr.equivalent.waypoints[1](1) == doctest::Approx(-0.5));
  }

  TEST_CASE("corridor: needs two walls and matching array sizes") {
    corridor_params p;
    p.a = 0.5;
    p.offsets = {1.0};
    p.waypoints0 = {Eigen::Vector2d(0.0, 0.0)};
    CHECK_THROWS_AS(gen_corridor_pair(p), error);
    p.offsets = {1.0, 1.0};
    p.free_coords = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(gen_corridor_pair(p), error);
  }

  TEST_CASE("linear trajectory: waypoints sit on the stated lines") {
    linear_trajectory2d_params p;
    p.wall_angles = {0.2, 1.1, 2.3, 3.9, 5.2};
    p.a = 0.3;
    p.b = 0.9;
    p.c = 0.2;
    p.offsets = {1.0, 1.1, 1.2, 1.3, 1.4};
    p.gammas = {1.0, -0.8, 0.4};
    auto pr = gen_linear_trajectory_pair_2d(p);
    CHECK(pair_ppdm_diff(pr) <= 1e-13);
    // gamma = 1: reference waypoint is (-b, -c), companion is (-1, a).
    CHECK((pr.reference.waypoints[0] - Eigen::Vector2d(-0.9, -0.2)).norm() <= 1e-12);
    CHECK((pr.equivalent.waypoints[0] - Eigen::Vector2d(-1.0, 0.3)).norm() <= 1e-12);
    for (size_t n = 0; n < p.gammas.size(); ++n) {
      CHECK((pr.reference.waypoints[n] - p.gammas[n] * Eigen::Vector2d(-0.9, -0.2))
                .norm() <= 1e-12);
      CHECK((pr.equivalent.waypoints[n] - p.gammas[n] * Eigen::Vector2d(-1.0, 0.3))
                .norm() <= 1e-12);
    }
  }

  TEST_CASE("linear trajectory: a wall the companion cannot reach is rejected") {
    linear_trajectory2d_params p;
    p.wall_angles = {0.0};
    p.a = 0.0;
    p.b = 2.0;  // w = 2 > sqrt(a^2 + 1)
    p.c = 0.0;
    p.offsets = {1.0};
    p.gammas = {1.0};
    try {
      gen_linear_trajectory_pair_2d(p);
      FAIL("expected a throw");
    } catch (const error& e) {
      CHECK(e.code() == errc::infeasible_parameters);
      CHECK(std::string(e.what()).find("wall") != std::string::npos);
    }
  }

  TEST_CASE("linear trajectory: boundary angle is clamped, not rejected") {
    linear_trajectory2d_params p;
    p.wall_angles = {0.0};
    p.a = 0.0;
    p.b = 1.0 + 1e-13;  // just past the boundary, inside the clamp window
    p.c = 0.0;
    p.offsets = {1.0};
    p.gammas = {0.5};
    CHECK_NOTHROW(gen_linear_trajectory_pair_2d(p));
    CHECK(pair_ppdm_diff(gen_linear_trajectory_pair_2d(p)) <= 1e-6);
  }
}
