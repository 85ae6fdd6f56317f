#pragma once

// Random inputs shared by the property tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pcost/f2.hpp"
#include "pcost/homology.hpp"
#include "pcost/metric.hpp"
#include "pcost/module.hpp"

namespace pcost::testing {

using Rng = std::mt19937_64;

inline FiniteMetricSpace random_cloud(Rng& rng, std::size_t n, std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (auto& r : rows)
    for (auto& c : r) c = u(rng);
  return point_cloud_space(rows);
}

/// Points on a small integer lattice: many ties among distances.
inline FiniteMetricSpace random_lattice(Rng& rng, std::size_t n, int side = 3) {
  std::uniform_int_distribution<int> u(0, side);
  std::vector<std::vector<double>> rows;
  while (rows.size() < n) {
    std::vector<double> p{static_cast<double>(u(rng)), static_cast<double>(u(rng))};
    if (std::find(rows.begin(), rows.end(), p) == rows.end()) rows.push_back(p);
  }
  return point_cloud_space(rows);
}

inline std::vector<std::size_t> random_assignment(Rng& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<std::size_t> u(0, m - 1);
  std::vector<std::size_t> a(n);
  for (auto& x : a) x = u(rng);
  return a;
}

/// Diagram with `count` bars on a coarse value set so that ties occur.
inline PersistenceDiagram random_diagram(Rng& rng, std::size_t count, bool allow_infinite = true) {
  std::uniform_int_distribution<int> v(0, 8);
  std::bernoulli_distribution inf(0.15);
  PersistenceDiagram d(0);
  while (d.count() < count) {
    double b = v(rng) * 0.5;
    if (allow_infinite && inf(rng)) {
      d.add(b, kInfinity);
      continue;
    }
    double e = v(rng) * 0.5;
    if (e > b) d.add(b, e);
  }
  return d;
}

struct IntervalSpec {
  std::size_t first, last;  // inclusive grid indices
};

/// Direct sum of interval modules on a grid of length r.
inline GridModule interval_module(const std::vector<IntervalSpec>& bars, std::size_t r) {
  GridModule m;
  for (std::size_t i = 0; i < r; ++i) m.scales.push_back(static_cast<double>(i));
  // Basis at index i: the bars alive at i, in list order.
  std::vector<std::vector<std::size_t>> alive(r);
  for (std::size_t k = 0; k < bars.size(); ++k)
    for (std::size_t i = bars[k].first; i <= bars[k].last; ++i) alive[i].push_back(k);
  for (std::size_t i = 0; i < r; ++i) m.dims.push_back(alive[i].size());
  for (std::size_t i = 0; i + 1 < r; ++i) {
    f2::Matrix t(alive[i + 1].size(), alive[i].size());
    for (std::size_t a = 0; a < alive[i].size(); ++a)
      for (std::size_t b = 0; b < alive[i + 1].size(); ++b)
        if (alive[i][a] == alive[i + 1][b]) t.set(b, a, true);
    m.transitions.push_back(t);
  }
  return m;
}

inline std::vector<IntervalSpec> random_intervals(Rng& rng, std::size_t count, std::size_t r) {
  std::uniform_int_distribution<std::size_t> u(0, r - 1);
  std::vector<IntervalSpec> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t a = u(rng), b = u(rng);
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

/// Random invertible matrix with its inverse, built from elementary moves.
inline std::pair<f2::Matrix, f2::Matrix> random_invertible(Rng& rng, std::size_t n) {
  f2::Matrix p = f2::Matrix::identity(n), q = f2::Matrix::identity(n);
  if (n < 2) return {p, q};
  std::uniform_int_distribution<std::size_t> u(0, n - 1);
  for (std::size_t step = 0; step < 3 * n; ++step) {
    std::size_t a = u(rng), b = u(rng);
    if (a == b) continue;
    // p <- E p with E adding row b to row a; q <- q E^{-1} = q E.
    for (std::size_t j = 0; j < n; ++j)
      if (p.get(b, j)) p.set(a, j, !p.get(a, j));
    for (std::size_t i = 0; i < n; ++i)
      if (q.get(i, a)) q.set(i, b, !q.get(i, b));
  }
  return {p, q};
}

/// Random homomorphism between random interval sums: a random combination
/// of the canonical interval morphisms [a,b] -> [c,d] (those with
/// c <= a <= d <= b), followed by random pointwise changes of basis.
inline GridHom random_grid_hom(Rng& rng, std::size_t r, std::size_t nv, std::size_t nw) {
  auto vb = random_intervals(rng, nv, r);
  auto wb = random_intervals(rng, nw, r);
  GridModule v = interval_module(vb, r), w = interval_module(wb, r);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<bool>> use(nv, std::vector<bool>(nw, false));
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t c = 0; c < nw; ++c)
      use[a][c] = wb[c].first <= vb[a].first && vb[a].first <= wb[c].last && wb[c].last <= vb[a].last && coin(rng);
  GridHom h{v, w, {}, 0.0};
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::size_t> va, wa;
    for (std::size_t k = 0; k < nv; ++k)
      if (vb[k].first <= i && i <= vb[k].last) va.push_back(k);
    for (std::size_t k = 0; k < nw; ++k)
      if (wb[k].first <= i && i <= wb[k].last) wa.push_back(k);
    f2::Matrix m(wa.size(), va.size());
    for (std::size_t x = 0; x < va.size(); ++x)
      for (std::size_t y = 0; y < wa.size(); ++y)
        if (use[va[x]][wa[y]]) m.set(y, x, true);
    h.maps.push_back(m);
  }
  // Change of basis: V'_i = P_i V_i, W'_i = Q_i W_i.
  std::vector<std::pair<f2::Matrix, f2::Matrix>> pv, pw;
  for (std::size_t i = 0; i < r; ++i) {
    pv.push_back(random_invertible(rng, v.dims[i]));
    pw.push_back(random_invertible(rng, w.dims[i]));
  }
  for (std::size_t i = 0; i + 1 < r; ++i) {
    h.source.transitions[i] = pv[i + 1].first * h.source.transitions[i] * pv[i].second;
    h.target.transitions[i] = pw[i + 1].first * h.target.transitions[i] * pw[i].second;
  }
  for (std::size_t i = 0; i < r; ++i) h.maps[i] = pw[i].first * h.maps[i] * pv[i].second;
  return h;
}

}  // namespace pcost::testing
