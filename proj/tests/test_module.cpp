#include <cmath>

#include "doctest.h"
#include "pcost/errors.hpp"
#include "pcost/module.hpp"
#include "support/generators.hpp"

using namespace pcost;

namespace {

const double kR2 = std::sqrt(2.0);

FiniteMetricSpace unit_square() { return point_cloud_space({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

FiniteMetricSpace line(std::vector<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return point_cloud_space(rows);
}

bool overlap_ok(const Matching& m) {
  for (const auto& p : m.pairs) {
    double a = p.source.birth, b = p.source.death, c = p.target.birth, d = p.target.death;
    if (!(c <= a && a < d && d <= b)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("module") {
  TEST_CASE("modules of filtrations") {
    auto sq = unit_square();
    auto f = build_filtration(sq, 2);
    auto g = CriticalGrid{{0.0, 1.0, kR2}};
    CHECK(module_of_filtration(f, 1, g).dims == std::vector<std::size_t>{0, 1, 0});
    CHECK(module_of_filtration(f, 0, g).dims == std::vector<std::size_t>{4, 1, 1});
    auto p = module_of_filtration(build_filtration(line({0}), 0), 0, CriticalGrid{{0.0}});
    CHECK(p.dims == std::vector<std::size_t>{1});
  }

  TEST_CASE("barcode examples") {
    GridModule a{{0.0, 1.0, kR2}, {0, 1, 0}, {f2::Matrix(1, 0), f2::Matrix(0, 1)}};
    CHECK(barcode(a, 1) == PersistenceDiagram(1, {{1.0, kR2, 1}}));
    GridModule b{{0.0, 5.0}, {1, 1}, {f2::Matrix::identity(1)}};
    CHECK(barcode(b) == PersistenceDiagram(0, {{0.0, kInfinity, 1}}));
    f2::Matrix t(1, 2);
    t.set(0, 0, true);
    t.set(0, 1, true);
    GridModule c{{0.0, 1.0}, {2, 1}, {t}};
    CHECK(barcode(c) == PersistenceDiagram(0, {{0.0, 1.0, 1}, {0.0, kInfinity, 1}}));
    CHECK(barcode(GridModule::trivial({0.0, 1.0})).empty());
  }

  TEST_CASE("negative multiplicity signals a corrupted module") {
    // dims (1,1,1) with a zero then an identity map is fine; a map that
    // claims rank 1 from index 0 to 2 through a zero middle space is not a
    // module, so corrupt the rank table by a shape-consistent lie instead.
    GridModule m{{0.0, 1.0}, {1, 1}, {f2::Matrix::identity(1)}};
    m.transitions[0] = f2::Matrix(1, 1);
    CHECK_NOTHROW(barcode(m));
    GridModule bad{{0.0, 1.0}, {1, 2}, {f2::Matrix(1, 1)}};
    CHECK_THROWS(barcode(bad));
  }

  TEST_CASE("cost to trivial") {
    CHECK(cost_to_trivial(GridModule::trivial({0.0, 1.0})) == 0.0);
    CHECK(cost_to_trivial(PersistenceDiagram(1, {{1.0, kR2, 1}})) == doctest::Approx((kR2 - 1) / 2).epsilon(1e-12));
    CHECK(cost_to_trivial(PersistenceDiagram(0, {{0.0, kInfinity, 1}})) == kInfinity);
  }

  TEST_CASE("homomorphisms of maps") {
    auto sq = unit_square();
    auto id = hom_of_map(identity_map(sq), 1);
    CHECK(id.commutation_failures().empty());
    for (std::size_t i = 0; i < id.maps.size(); ++i) CHECK(id.maps[i] == f2::Matrix::identity(id.source.dims[i]));

    auto collapse = hom_of_map(MetricMap(sq, line({0}), {0, 0, 0, 0}), 1);
    CHECK(collapse.source.dims == std::vector<std::size_t>{0, 1, 0});
    for (const auto& m : collapse.maps) CHECK(m.is_zero());

    auto incl = hom_of_map(MetricMap(line({0}), line({0, 1}), {0}), 0);
    for (const auto& m : incl.maps) CHECK(m.rank() == m.cols());
    CHECK_THROWS_AS(hom_of_map(MetricMap(line({0, 1}), line({0, 2}), {0, 1}), 0), ShiftTooSmall);
  }

  TEST_CASE("kernel, image and cokernel modules") {
    auto sq = unit_square();
    auto id = hom_of_map(identity_map(sq), 0);
    CHECK(barcode(kernel_module(id)).empty());
    CHECK(barcode(cokernel_module(id)).empty());

    auto collapse = hom_of_map(MetricMap(sq, line({0}), {0, 0, 0, 0}), 1);
    CHECK(kernel_module(collapse).dims == std::vector<std::size_t>{0, 1, 0});
    CHECK(barcode(kernel_module(collapse)) == PersistenceDiagram(0, {{1.0, kR2, 1}}));

    auto incl = hom_of_map(MetricMap(line({0}), line({0, 1}), {0}), 0);
    CHECK(barcode(cokernel_module(incl)) == PersistenceDiagram(0, {{0.0, 1.0, 1}}));
  }

  TEST_CASE("rank-nullity at every index") {
    testing::Rng rng(13);
    for (int k = 0; k < 100; ++k) {
      auto h = testing::random_grid_hom(rng, 2 + rng() % 5, rng() % 5, rng() % 5);
      REQUIRE(h.commutation_failures().empty());
      auto ker = kernel_module(h), im = image_module(h), cok = cokernel_module(h);
      for (std::size_t i = 0; i < h.maps.size(); ++i) {
        CHECK(ker.dims[i] + im.dims[i] == h.source.dims[i]);
        CHECK(cok.dims[i] + im.dims[i] == h.target.dims[i]);
      }
      CHECK_NOTHROW(barcode(ker));
      CHECK_NOTHROW(barcode(im));
      CHECK_NOTHROW(barcode(cok));
    }
  }

  TEST_CASE("induced matching examples") {
    auto sq = unit_square();
    auto id = induced_matching(hom_of_map(identity_map(sq), 0));
    CHECK(id.pairs.size() == 4);
    CHECK(id.unmatched_source.empty());
    CHECK(id.unmatched_target.empty());
    auto [k0, c0] = matching_to_kernel_cokernel(id);
    CHECK(k0.empty());
    CHECK(c0.empty());

    auto m1 = induced_matching(hom_of_map(MetricMap(sq, line({0}), {0, 0, 0, 0}), 1));
    CHECK(m1.pairs.empty());
    CHECK(m1.unmatched_source.same_bars(PersistenceDiagram(1, {{1.0, kR2, 1}})));
    CHECK(matching_to_kernel_cokernel(m1).first.same_bars(PersistenceDiagram(1, {{1.0, kR2, 1}})));

    auto m0 = induced_matching(hom_of_map(MetricMap(sq, line({0}), {0, 0, 0, 0}), 0));
    REQUIRE(m0.pairs.size() == 1);
    CHECK(m0.pairs[0].source == Bar{0.0, kInfinity, 1});
    CHECK(m0.pairs[0].target == Bar{0.0, kInfinity, 1});
    CHECK(m0.unmatched_source.same_bars(PersistenceDiagram(0, {{0.0, 1.0, 3}})));
    auto [k, c] = matching_to_kernel_cokernel(m0);
    CHECK(k.same_bars(PersistenceDiagram(0, {{0.0, 1.0, 3}})));
    CHECK(c.empty());

    auto mi = induced_matching(hom_of_map(MetricMap(line({0}), line({0, 1}), {0}), 0));
    REQUIRE(mi.pairs.size() == 1);
    CHECK(mi.unmatched_target.same_bars(PersistenceDiagram(0, {{0.0, 1.0, 1}})));
    auto [ki, ci] = matching_to_kernel_cokernel(mi);
    CHECK(ki.empty());
    CHECK(ci.same_bars(PersistenceDiagram(0, {{0.0, 1.0, 1}})));
  }

  TEST_CASE("matched pairs satisfy c <= a < d <= b") {
    testing::Rng rng(17);
    for (int k = 0; k < 200; ++k) {
      auto h = testing::random_grid_hom(rng, 2 + rng() % 5, rng() % 5, rng() % 5);
      auto m = induced_matching(h);
      CHECK(overlap_ok(m));
      // Every bar is used exactly once.
      CHECK(m.pairs.size() + m.unmatched_source.count() == barcode(h.source).count());
      CHECK(m.pairs.size() + m.unmatched_target.count() == barcode(h.target).count());
    }
  }

  TEST_CASE("matching determines kernel and cokernel of isomorphisms") {
    testing::Rng rng(19);
    for (int k = 0; k < 40; ++k) {
      auto h = testing::random_grid_hom(rng, 2 + rng() % 5, rng() % 5, 0);
      auto iso = identity_hom(h.source);
      auto m = induced_matching(iso);
      CHECK(m.unmatched_source.empty());
      auto [ker, cok] = matching_to_kernel_cokernel(m);
      CHECK(ker.empty());
      CHECK(cok.empty());
    }
  }

  TEST_CASE("interleaving verification") {
    testing::Rng rng(23);
    auto h = testing::random_grid_hom(rng, 5, 4, 0);
    const auto& v = h.source;
    auto id = shift_map(v, 0.0);
    CHECK(verify_interleaving(v, v, id, id).ok);

    // A zero map back cannot interleave a module with a bar longer than 2 delta.
    GridModule m{{0.0, 1.0, 2.0, 3.0}, {1, 1, 1, 1}, {f2::Matrix::identity(1), f2::Matrix::identity(1), f2::Matrix::identity(1)}};
    auto f = shift_map(m, 1.0);
    ShiftedHom zero{1.0, f.target, {}};
    for (std::size_t i = 0; i < m.length(); ++i) zero.maps.emplace_back(1, 1);
    auto rep = verify_interleaving(m, m, f, zero);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first_failure);
    CHECK(*rep.first_failure == 0.0);
    CHECK_THROWS_AS(verify_interleaving(m, v, f, zero), GridMismatch);
    ShiftedHom other = zero;
    other.degree = 2.0;
    CHECK_THROWS_AS(verify_interleaving(m, m, f, other), GridMismatch);
  }
}
