#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fairmetric/region.hpp"
#include "fairmetric/sampling.hpp"

using fairmetric::FeasibleRegion;
using fairmetric::LpResult;
using fairmetric::Sampler;

namespace {

FeasibleRegion demo_region() {
  return fairmetric::make_region({{0, 1}, {1, 2}, {1, 0}}, {1.5, 12, 10},
                                 {"x1", "x2"});
}

}  // namespace

TEST_CASE("region construction and membership") {
  const FeasibleRegion region = demo_region();
  CHECK(region.dimension() == 2);
  CHECK(region.rows() == 3);
  REQUIRE(region.names.size() == 2);
  CHECK(region.names[1] == "x2");

  CHECK(region.contains({0.0, 0.0}, 1e-9));
  CHECK(region.contains({10.0, 1.0}, 1e-9));
  CHECK(region.contains({9.0, 1.5}, 1e-9));
  CHECK_FALSE(region.contains({9.1, 1.5}, 1e-9));
  CHECK_FALSE(region.contains({10.0, 1.5}, 1e-9));
  CHECK_FALSE(region.contains({-0.01, 0.5}, 1e-9));
  CHECK_FALSE(region.contains({1.0}, 1e-9));  // wrong dimension
}

TEST_CASE("region construction rejects bad input") {
  CHECK_THROWS_AS(fairmetric::make_region({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::make_region({{1, 0}}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::make_region({{1, 0}, {1}}, {1, 2}),
                  std::invalid_argument);
  // Unbounded along x2.
  CHECK_THROWS_WITH_AS(fairmetric::make_region({{1, 0}}, {4}),
                       doctest::Contains("unbounded"), std::invalid_argument);
  // x1 + x2 <= -1 cannot meet x >= 0.
  CHECK_THROWS_WITH_AS(fairmetric::make_region({{1, 1}}, {-1}),
                       doctest::Contains("empty"), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(fairmetric::make_region({{1, inf}}, {4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::make_region({{1, 1}}, {inf}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::make_region({{1, 1}}, {2}, {"only_one"}),
                  std::invalid_argument);
}

TEST_CASE("duplicate constraint rows are harmless") {
  const FeasibleRegion region =
      fairmetric::make_region({{1, 0}, {1, 0}, {0, 1}}, {2, 2, 3});
  CHECK(region.contains({2.0, 3.0}, 1e-9));
  const auto box = fairmetric::bounding_box(region);
  CHECK(box.hi[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(box.hi[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("simplex solves a textbook maximization") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18.
  const auto r = fairmetric::lp_maximize({3, 5}, {{1, 0}, {0, 2}, {3, 2}},
                                         {4, 12, 18});
  REQUIRE(r.status == LpResult::Status::optimal);
  CHECK(r.value == doctest::Approx(36.0).epsilon(1e-9));
  REQUIRE(r.x.size() == 2);
  CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("simplex phase one handles negative right-hand sides") {
  // x >= 2 encoded as -x <= -2, plus x <= 10, y <= 3.
  const auto r = fairmetric::lp_maximize({1, 1}, {{-1, 0}, {1, 0}, {0, 1}},
                                         {-2, 10, 3});
  REQUIRE(r.status == LpResult::Status::optimal);
  CHECK(r.value == doctest::Approx(13.0).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("simplex reports unbounded and infeasible problems") {
  const auto unb = fairmetric::lp_maximize({0, 1}, {{1, 0}}, {4});
  CHECK(unb.status == LpResult::Status::unbounded);

  const auto inf = fairmetric::lp_maximize({1, 1}, {{1, 1}, {-1, -1}}, {1, -3});
  CHECK(inf.status == LpResult::Status::infeasible);
}

TEST_CASE("simplex with no rows falls back to the nonnegativity cone") {
  const auto at_origin = fairmetric::lp_maximize({-1, -2}, {}, {});
  REQUIRE(at_origin.status == LpResult::Status::optimal);
  CHECK(at_origin.value == 0.0);
  CHECK(at_origin.x == std::vector<double>{0.0, 0.0});

  const auto unb = fairmetric::lp_maximize({1, 0}, {}, {});
  CHECK(unb.status == LpResult::Status::unbounded);

  CHECK_THROWS_AS(fairmetric::lp_maximize({1}, {{1, 0}}, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fairmetric::lp_maximize({1, 0}, {{1, 0}}, {1, 2}),
                  std::invalid_argument);
}

TEST_CASE("bounding box of the demo region") {
  const auto box = fairmetric::bounding_box(demo_region());
  REQUIRE(box.hi.size() == 2);
  CHECK(box.hi[0] == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(box.hi[1] == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(box.diameter == doctest::Approx(std::sqrt(102.25)).epsilon(1e-9));
}

TEST_CASE("projection reproduces hand-computed points") {
  const FeasibleRegion simplex2 = fairmetric::make_region({{1, 1}}, {2});

  // (2,2) -> nearest point of {x1 + x2 <= 2} is (1,1).
  auto p = fairmetric::project_to_region(simplex2, {2.0, 2.0}, 0.0);
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-6));

  // Interior points stay put.
  p = fairmetric::project_to_region(simplex2, {0.5, 0.25}, 0.0);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-9));

  // Floor active on one coordinate, sum constraint active too: KKT gives
  // (0.1, 1.9) for the source point (-1, 3).
  p = fairmetric::project_to_region(simplex2, {-1.0, 3.0}, 0.1);
  CHECK(p[0] == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(1.9).epsilon(1e-6));

  CHECK_THROWS_AS(fairmetric::project_to_region(simplex2, {1.0, 1.0, 1.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("projection always lands inside the region") {
  const FeasibleRegion region = demo_region();
  Sampler rng(71);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x{rng.uniform(-5.0, 15.0), rng.uniform(-5.0, 5.0)};
    const auto p = fairmetric::project_to_region(region, x, 0.0);
    CHECK(region.contains(p, 1e-7));
  }
}
