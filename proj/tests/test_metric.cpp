#include <cmath>

#include "doctest.h"
#include "pcost/errors.hpp"
#include "pcost/metric.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pcost;

namespace {

FiniteMetricSpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return point_cloud_space(rows);
}

FiniteMetricSpace unit_square() { return point_cloud_space({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("validate_metric accepts the unit square") {
    double r = std::sqrt(2.0);
    auto x = validate_metric({{0, 1, r, 1}, {1, 0, 1, r}, {r, 1, 0, 1}, {1, r, 1, 0}});
    CHECK(x.size() == 4);
    CHECK(x.diameter() == r);
  }

  TEST_CASE("validate_metric rejects non-metrics with the offending indices") {
    CHECK_THROWS_AS(validate_metric({{0, -1}, {-1, 0}}), NegativeDistanceError);
    CHECK_THROWS_AS(validate_metric({{0, 1}, {2, 0}}), AsymmetryError);
    CHECK_THROWS_AS(validate_metric({{1, 1}, {1, 0}}), NonzeroDiagonal);
    CHECK_THROWS_AS(validate_metric({}), EmptyInput);
    CHECK_THROWS_AS(validate_metric({{0, 1}}), InvalidMatrix);
    try {
      validate_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
      FAIL("expected TriangleViolation");
    } catch (const TriangleViolation& e) {
      CHECK(e.i == 0);
      CHECK(e.j == 2);
      CHECK(e.k == 1);
    }
  }

  TEST_CASE("point_cloud_space norms and errors") {
    auto sq = unit_square();
    CHECK(sq(0, 2) == std::sqrt(2.0));
    CHECK(sq.has_coords());
    CHECK(point_cloud_space({{0, 0}, {1, 1}}, Norm::L1)(0, 1) == 2.0);
    CHECK(point_cloud_space({{0, 0}, {1, 3}}, Norm::Linf)(0, 1) == 3.0);
    auto one = point_cloud_space({{0}});
    CHECK(one.size() == 1);
    CHECK(one(0, 0) == 0.0);
    CHECK_THROWS_AS(point_cloud_space({{0, 0}, {1}}), ArityMismatch);
    CHECK_THROWS_AS(point_cloud_space({}), EmptyInput);
  }

  TEST_CASE("map distortion and quasi-Lipschitz defect") {
    auto sq = unit_square();
    auto pt = line({0});
    CHECK(map_distortion(identity_map(sq)) == 0.0);
    CHECK(map_distortion(MetricMap(sq, pt, {0, 0, 0, 0})) == std::sqrt(2.0));
    CHECK(map_distortion(MetricMap(line({0, 1}), pt, {0, 0})) == 1.0);
    CHECK(quasi_lipschitz_defect(MetricMap(line({0, 1}), line({0, 2}), {0, 1})) == 1.0);
    CHECK(quasi_lipschitz_defect(MetricMap(sq, pt, {0, 0, 0, 0})) == 0.0);
    CHECK(quasi_lipschitz_defect(identity_map(sq)) == 0.0);
    CHECK_THROWS_AS(MetricMap(sq, pt, {0, 0, 0}), InvalidMap);
    CHECK_THROWS_AS(MetricMap(sq, pt, {0, 0, 0, 1}), InvalidMap);
  }

  TEST_CASE("hausdorff_to_space") {
    CHECK(hausdorff_to_space({0, 1}, line({0, 1})) == 0.0);
    CHECK(hausdorff_to_space({0}, line({0, 1})) == 1.0);
    CHECK(hausdorff_to_space({0, 2}, line({0, 1, 2})) == 1.0);
    CHECK_THROWS_AS(hausdorff_to_space({}, line({0, 1})), EmptySubset);
  }

  TEST_CASE("correspondences") {
    auto two = line({0, 2});
    auto pt = line({0});
    CHECK(correspondence_distortion(Correspondence(2, 1, {{0, 0}, {1, 0}}), two, pt) == 2.0);
    CHECK(correspondence_distortion(Correspondence(2, 2, {{0, 0}, {1, 1}}), two, two) == 0.0);
    CHECK_THROWS_AS(Correspondence(2, 2, {{0, 0}}), InvalidCorrespondence);

    auto c = correspondence_from_map(MetricMap(pt, line({0, 1}), {0}));
    CHECK(c.pairs() == std::set<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}});
    CHECK(correspondence_distortion(c, pt, line({0, 1})) == 1.0);
    auto sq = unit_square();
    CHECK(correspondence_distortion(correspondence_from_map(identity_map(sq)), sq, sq) == 0.0);
  }

  TEST_CASE("gh_bruteforce") {
    CHECK(gh_bruteforce(line({0, 2}), line({0})) == 1.0);
    CHECK(gh_bruteforce(line({0, 1, 3}), line({5, 6, 8})) == 0.0);
    CHECK(gh_bruteforce(unit_square(), unit_square()) == 0.0);
    CHECK_THROWS_AS(gh_bruteforce(line({0, 1, 2, 3, 4, 5}), line({0, 1, 2, 3, 4})), TooLarge);
  }

  TEST_CASE("gh_map_bruteforce") {
    auto sq = unit_square();
    auto f = MetricMap(line({0, 1, 3}), line({0, 1}), {0, 1, 1});
    CHECK(gh_map_bruteforce(f, f) == 0.0);
    // Reflections of source and target relabel the map without changing it.
    auto g = MetricMap(line({3, 2, 0}), line({1, 0}), {0, 1, 1});
    CHECK(gh_map_bruteforce(f, g) == 0.0);
    auto c1 = MetricMap(line({0, 1}), line({0}), {0, 0});
    auto c2 = MetricMap(line({0, 2}), line({0}), {0, 0});
    CHECK(gh_map_bruteforce(c1, c2) == testing::gh_map_quadruple_oracle(c1, c2));
    CHECK(gh_map_bruteforce(c1, c2) == 1.0);
    CHECK_THROWS_AS(gh_map_bruteforce(MetricMap(line({0, 1, 2, 3, 4}), sq, {0, 0, 0, 0, 0}), f), TooLarge);
  }

  TEST_CASE("gh_bruteforce matches the subset-enumeration oracle") {
    testing::Rng rng(7);
    for (int k = 0; k < 60; ++k) {
      auto x = testing::random_cloud(rng, 1 + rng() % 3);
      auto y = testing::random_cloud(rng, 1 + rng() % 4);
      CHECK(gh_bruteforce(x, y) == testing::gh_subset_oracle(x, y));
    }
  }

  TEST_CASE("gh_map_bruteforce matches the quadruple oracle") {
    testing::Rng rng(11);
    for (int k = 0; k < 25; ++k) {
      auto x1 = testing::random_cloud(rng, 1 + rng() % 3), y1 = testing::random_cloud(rng, 1 + rng() % 2);
      auto x2 = testing::random_cloud(rng, 1 + rng() % 3), y2 = testing::random_cloud(rng, 1 + rng() % 2);
      MetricMap f1(x1, y1, testing::random_assignment(rng, x1.size(), y1.size()));
      MetricMap f2(x2, y2, testing::random_assignment(rng, x2.size(), y2.size()));
      CHECK(gh_map_bruteforce(f1, f2) == testing::gh_map_quadruple_oracle(f1, f2));
    }
  }
}
