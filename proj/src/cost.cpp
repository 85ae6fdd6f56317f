#include "pcost/cost.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "pcost/bottleneck.hpp"
#include "pcost/vr.hpp"

namespace pcost {

namespace {

void require_lipschitz(const MetricMap& f) {
  double defect = quasi_lipschitz_defect(f);
  if (defect > 0.0) throw NotOneLipschitz("map increases some distance by " + std::to_string(defect));
}

DimCost cost_of_hom(const GridHom& h) {
  DimCost c;
  c.kernel = cost_to_trivial(kernel_module(h));
  c.cokernel = cost_to_trivial(cokernel_module(h));
  c.cost = std::max(c.kernel, c.cokernel);
  return c;
}

}  // namespace

DimCost dim_cost(const MetricMap& f, int d) {
  require_lipschitz(f);
  return cost_of_hom(hom_of_map(f, d, 0.0));
}

double persistent_cost(const MetricMap& f, int d) { return dim_cost(f, d).cost; }

double metric_bound(const MetricMap& f) {
  return map_distortion(f) + 2.0 * hausdorff_to_space(f.image(), f.target());
}

bool CostReport::ok() const {
  return std::all_of(per_dim.begin(), per_dim.end(), [](const ChainEntry& e) { return e.lower_ok && e.upper_ok; });
}

namespace {

std::string describe(const CostReport& r) {
  for (const auto& e : r.per_dim) {
    if (e.lower_ok && e.upper_ok) continue;
    return "inequality chain violated in dimension " + std::to_string(e.dim) + ": bottleneck " +
           std::to_string(e.bottleneck) + ", cost " + std::to_string(e.cost.cost) + ", bound " +
           std::to_string(r.bound);
  }
  return "inequality chain violated";
}

}  // namespace

ChainViolation::ChainViolation(CostReport r) : Error(describe(r)), report(std::move(r)) {}

CostReport evaluate_chain(const MetricMap& f, const std::vector<int>& dims, double tol) {
  require_lipschitz(f);
  CostReport r;
  r.distortion = map_distortion(f);
  r.hausdorff = hausdorff_to_space(f.image(), f.target());
  r.bound = r.distortion + 2.0 * r.hausdorff;
  for (int d : dims) {
    ChainEntry e;
    e.dim = d;
    auto dx = persistence_diagram(homology_filtration(f.source(), d), d);
    auto dy = persistence_diagram(homology_filtration(f.target(), d), d);
    e.bottleneck = bottleneck(dx, dy);
    e.cost = cost_of_hom(hom_of_map(f, d, 0.0));
    e.lower_ok = e.bottleneck <= e.cost.cost + tol;
    e.upper_ok = e.cost.cost <= r.bound + tol;
    r.per_dim.push_back(e);
  }
  return r;
}

CostReport check_inequality_chain(const MetricMap& f, const std::vector<int>& dims, double tol) {
  auto r = evaluate_chain(f, dims, tol);
  if (!r.ok()) throw ChainViolation(r);
  return r;
}

bool StabilityReport::ok() const {
  return std::all_of(per_dim.begin(), per_dim.end(), [](const StabilityEntry& e) { return e.ok; });
}

StabilityReport stability_check(const MetricMap& f, const MetricMap& g, const std::vector<int>& dims, double tol) {
  StabilityReport r;
  r.gh = gh_map_bruteforce(f, g);
  for (int d : dims) {
    StabilityEntry e;
    e.dim = d;
    e.cost_f = persistent_cost(f, d);
    e.cost_g = persistent_cost(g, d);
    e.comparable = std::isfinite(e.cost_f) && std::isfinite(e.cost_g);
    e.ok = !e.comparable || std::abs(e.cost_f - e.cost_g) <= 2.0 * r.gh + tol;
    r.per_dim.push_back(e);
  }
  return r;
}

namespace {

// Single-linkage merge heights: least possible largest step on a path.
std::vector<std::vector<double>> merge_heights(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> h(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = x(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h[i][j] = std::min(h[i][j], std::max(h[i][k], h[k][j]));
  return h;
}

class LipschitzSearch {
 public:
  LipschitzSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const std::vector<int>& dims,
                  std::uint64_t budget)
      : x_(x), y_(y), dims_(dims), budget_(budget) {
    int top = *std::max_element(dims.begin(), dims.end());
    fx_ = std::make_unique<Filtration>(homology_filtration(x, top));
    fy_ = std::make_unique<Filtration>(homology_filtration(y, top));
    auto grid = critical_grid(x, y).scales;
    for (int d : dims) {
      tx_.emplace_back(*fx_, d, grid);
      ty_.emplace_back(*fy_, d, grid);
    }
    use_merge_bound_ = std::find(dims.begin(), dims.end(), 0) != dims.end();
    merge_ = merge_heights(x);
    // Points of Y with identical distance rows are interchangeable.
    orbit_.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      orbit_[j] = j;
      for (std::size_t k = 0; k < j; ++k) {
        bool same = true;
        for (std::size_t l = 0; l < y.size() && same; ++l) same = y(j, l) == y(k, l);
        if (same) {
          orbit_[j] = orbit_[k];
          break;
        }
      }
    }
  }

  SearchResult run() {
    const std::size_t n = x_.size(), m = y_.size();
    assignment_.assign(n, 0);
    used_.assign(m, 0);
    std::vector<std::vector<char>> domains(n, std::vector<char>(m, 1));
    dfs(0, domains, 0.0);
    return result_;
  }

 private:
  bool canonical(std::size_t y) const {
    for (std::size_t k = orbit_[y]; k < y; ++k)
      if (orbit_[k] == orbit_[y] && used_[k] == 0) return false;
    return true;
  }

  void dfs(std::size_t i, const std::vector<std::vector<char>>& domains, double lb) {
    if (++result_.nodes > budget_)
      throw SearchBudgetExceeded("search exceeded its budget of " + std::to_string(budget_) + " nodes");
    if (i == x_.size()) {
      evaluate();
      return;
    }
    const std::size_t n = x_.size(), m = y_.size();
    for (std::size_t y = 0; y < m; ++y) {
      if (!domains[i][y] || !canonical(y)) continue;
      double child_lb = lb;
      if (use_merge_bound_)
        for (std::size_t j = 0; j < i; ++j)
          if (assignment_[j] == y) child_lb = std::max(child_lb, merge_[i][j] / 2.0);
      if (child_lb >= result_.cost) continue;
      // Forward checking: keep only targets within the allowed distance.
      auto next = domains;
      bool empty = false;
      for (std::size_t j = i + 1; j < n && !empty; ++j) {
        bool any = false;
        for (std::size_t t = 0; t < m; ++t) {
          if (next[j][t] && y_(y, t) > x_(i, j)) next[j][t] = 0;
          any = any || next[j][t];
        }
        empty = !any;
      }
      if (empty) continue;
      assignment_[i] = y;
      ++used_[y];
      dfs(i + 1, next, child_lb);
      --used_[y];
    }
  }

  void evaluate() {
    ++result_.evaluated;
    MetricMap f(x_, y_, assignment_);
    auto smap = induced_simplicial_map(f, 0.0, *fx_, *fy_);
    std::vector<DimCost> per_dim;
    double worst = 0.0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      auto c = cost_of_hom(hom_between(smap, tx_[k], ty_[k]));
      per_dim.push_back(c);
      worst = std::max(worst, c.cost);
      if (!result_.assignment.empty() && worst >= result_.cost) return;
    }
    result_.cost = worst;
    result_.assignment = assignment_;
    result_.per_dim = per_dim;
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::vector<int> dims_;
  std::uint64_t budget_;
  std::unique_ptr<Filtration> fx_, fy_;
  std::vector<HomologyTower> tx_, ty_;
  bool use_merge_bound_ = false;
  std::vector<std::vector<double>> merge_;
  std::vector<std::size_t> orbit_;
  std::vector<std::size_t> assignment_;
  std::vector<int> used_;
  SearchResult result_;
};

}  // namespace

SearchResult min_cost_lipschitz_search(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                       const std::vector<int>& dims, std::uint64_t budget) {
  if (dims.empty()) throw Error("search needs at least one homology dimension");
  LipschitzSearch s(x, y, dims, budget);
  return s.run();
}

RandomInstance random_instance(std::uint64_t seed, std::size_t nx, std::size_t ny, std::size_t ambient_dim) {
  if (nx == 0 || ny == 0) throw EmptyInput("random_instance needs non-empty spaces");
  if (ambient_dim == 0) throw EmptyInput("random_instance needs a positive ambient dimension");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto cloud = [&](std::size_t n) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(ambient_dim));
    for (auto& r : rows)
      for (auto& c : r) c = unit(rng);
    return point_cloud_space(rows);
  };
  auto x = cloud(nx);
  auto y = cloud(ny);
  std::uniform_int_distribution<std::size_t> pick(0, ny - 1);
  std::vector<std::size_t> assignment(nx);
  for (auto& a : assignment) a = pick(rng);

  double lambda = 1.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = i + 1; j < nx; ++j) {
      double dy = y(assignment[i], assignment[j]);
      if (dy > 0.0) lambda = std::min(lambda, x(i, j) / dy);
    }
  // Rounding in the rescaled distances can leave a tiny defect.
  while (true) {
    MetricMap f(x, y.scaled(lambda), assignment);
    if (quasi_lipschitz_defect(f) == 0.0) return {x, f.target(), f};
    lambda = std::nextafter(lambda, 0.0);
  }
}

}  // namespace pcost
