#include <cmath>

#include "doctest.h"
#include "pcost/bottleneck.hpp"
#include "pcost/errors.hpp"
#include "support/generators.hpp"

using namespace pcost;

namespace {

PersistenceDiagram diag(std::vector<Bar> bars) { return PersistenceDiagram(0, std::move(bars)); }

}  // namespace

TEST_SUITE("bottleneck") {
  TEST_CASE("small examples") {
    CHECK(bottleneck(diag({}), diag({})) == 0.0);
    CHECK(bottleneck(diag({{0, 2, 1}}), diag({})) == 1.0);
    CHECK(bottleneck(diag({{0, 2, 1}}), diag({{0, 2, 1}})) == 0.0);
    CHECK(bottleneck(diag({{0, 2, 1}}), diag({{0.5, 2, 1}})) == 0.5);
    // Matching costs 1 and sending both bars to the diagonal costs max(1, 0.5).
    CHECK(bottleneck(diag({{0, 2, 1}}), diag({{1, 2, 1}})) == 1.0);
    CHECK(bottleneck(diag({{0, 1, 2}}), diag({{0, 1, 1}})) == 0.5);
    CHECK(bottleneck(diag({{0, kInfinity, 1}}), diag({{1, kInfinity, 1}})) == 1.0);
    CHECK(bottleneck(diag({{0, kInfinity, 2}}), diag({{0, kInfinity, 1}})) == kInfinity);
    CHECK(bottleneck(diag({{0, kInfinity, 1}, {0, 4, 1}}), diag({{3, kInfinity, 1}})) == 3.0);
  }

  TEST_CASE("agrees with brute force") {
    testing::Rng rng(5);
    for (int k = 0; k < 300; ++k) {
      auto a = testing::random_diagram(rng, rng() % 5);
      auto b = testing::random_diagram(rng, rng() % 4);
      CHECK(bottleneck(a, b) == bottleneck_bruteforce(a, b));
    }
  }

  TEST_CASE("brute force refuses large inputs") {
    testing::Rng rng(6);
    auto a = testing::random_diagram(rng, 6), b = testing::random_diagram(rng, 6);
    CHECK_THROWS_AS(bottleneck_bruteforce(a, b), TooLarge);
  }

  TEST_CASE("metric properties") {
    testing::Rng rng(7);
    for (int k = 0; k < 200; ++k) {
      auto a = testing::random_diagram(rng, rng() % 8, false);
      auto b = testing::random_diagram(rng, rng() % 8, false);
      auto c = testing::random_diagram(rng, rng() % 8, false);
      CHECK(bottleneck(a, a) == 0.0);
      CHECK(bottleneck(a, b) == bottleneck(b, a));
      CHECK(bottleneck(a, c) <= bottleneck(a, b) + bottleneck(b, c) + 1e-12);
    }
  }
}
