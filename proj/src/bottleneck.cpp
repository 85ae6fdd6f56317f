#include "pcost/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "pcost/errors.hpp"

namespace pcost {

namespace {

double pair_cost(const Bar& a, const Bar& b) {
  if (a.infinite() != b.infinite()) return kInfinity;
  if (a.infinite()) return std::abs(a.birth - b.birth);
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const Bar& a) { return a.infinite() ? kInfinity : (a.death - a.birth) / 2.0; }

// Kuhn's augmenting paths on a dense bipartite graph.
bool has_perfect_matching(const std::vector<std::vector<bool>>& adj) {
  const std::size_t n = adj.size();
  std::vector<long> match_right(n, -1);
  std::vector<bool> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!adj[u][v] || seen[v]) continue;
      seen[v] = true;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
        match_right[v] = static_cast<long>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    seen.assign(n, false);
    if (!augment(u)) return false;
  }
  return true;
}

// Left: bars of A then diagonal copies of B. Right: bars of B then diagonal
// copies of A.
bool feasible(const std::vector<Bar>& a, const std::vector<Bar>& b, double t) {
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) adj[i][j] = pair_cost(a[i], b[j]) <= t;
    adj[i][nb + i] = diagonal_cost(a[i]) <= t;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    adj[na + j][j] = diagonal_cost(b[j]) <= t;
    for (std::size_t i = 0; i < na; ++i) adj[na + j][nb + i] = true;
  }
  return has_perfect_matching(adj);
}

void split(const PersistenceDiagram& d, std::vector<Bar>& finite, std::vector<double>& infinite_births) {
  for (const auto& b : d.expanded()) {
    if (b.infinite())
      infinite_births.push_back(b.birth);
    else
      finite.push_back(b);
  }
}

}  // namespace

double bottleneck(const PersistenceDiagram& da, const PersistenceDiagram& db) {
  std::vector<Bar> a, b;
  std::vector<double> ia, ib;
  split(da, a, ia);
  split(db, b, ib);
  if (ia.size() != ib.size()) return kInfinity;
  // On the line, the sorted pairing minimizes the largest gap.
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  double inf_part = 0.0;
  for (std::size_t k = 0; k < ia.size(); ++k) inf_part = std::max(inf_part, std::abs(ia[k] - ib[k]));

  std::vector<double> cand{0.0};
  for (const auto& x : a) {
    cand.push_back(diagonal_cost(x));
    for (const auto& y : b) cand.push_back(pair_cost(x, y));
  }
  for (const auto& y : b) cand.push_back(diagonal_cost(y));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(inf_part, cand[lo]);
}

double bottleneck_bruteforce(const PersistenceDiagram& da, const PersistenceDiagram& db, std::size_t max_bars) {
  auto a = da.expanded();
  auto b = db.expanded();
  if (a.size() + b.size() > max_bars) throw TooLarge("bottleneck_bruteforce: too many bars");
  std::vector<bool> used(b.size(), false);
  double best = kInfinity;
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double worst) {
    if (worst >= best) return;
    if (i == a.size()) {
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) worst = std::max(worst, diagonal_cost(b[j]));
      best = std::min(best, worst);
      return;
    }
    rec(i + 1, std::max(worst, diagonal_cost(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      rec(i + 1, std::max(worst, pair_cost(a[i], b[j])));
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace pcost
