#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcost/errors.hpp"
#include "pcost/homology.hpp"
#include "pcost/metric.hpp"
#include "pcost/module.hpp"

namespace pcost {

struct DimCost {
  double kernel = 0.0;    // d_I(Ker f_*, 0)
  double cokernel = 0.0;  // d_I(Coker f_*, 0)
  double cost = 0.0;      // max of the two
};

/// Kernel and cokernel costs of f_* in degree-d homology. Throws
/// NotOneLipschitz.
DimCost dim_cost(const MetricMap& f, int d);

/// C_d(f). Throws NotOneLipschitz.
double persistent_cost(const MetricMap& f, int d);

/// map_distortion(f) + 2 * hausdorff_to_space(image(f), Y).
double metric_bound(const MetricMap& f);

struct ChainEntry {
  int dim = 0;
  double bottleneck = 0.0;  // d_B(diagram of X, diagram of Y)
  DimCost cost;
  bool lower_ok = true;  // bottleneck <= cost + tol
  bool upper_ok = true;  // cost <= bound + tol
};

struct CostReport {
  std::vector<ChainEntry> per_dim;
  double distortion = 0.0;
  double hausdorff = 0.0;
  double bound = 0.0;
  bool ok() const;
};

class ChainViolation : public Error {
 public:
  explicit ChainViolation(CostReport r);
  CostReport report;
};

/// Computes every member of d_B <= C_d(f) <= bound. Throws NotOneLipschitz.
CostReport evaluate_chain(const MetricMap& f, const std::vector<int>& dims, double tol = 1e-9);

/// evaluate_chain, throwing ChainViolation when an inequality fails.
CostReport check_inequality_chain(const MetricMap& f, const std::vector<int>& dims, double tol = 1e-9);

struct StabilityEntry {
  int dim = 0;
  double cost_f = 0.0;
  double cost_g = 0.0;
  bool comparable = true;  // both costs finite
  bool ok = true;
};

struct StabilityReport {
  double gh = 0.0;  // gh_map_bruteforce(f, g)
  std::vector<StabilityEntry> per_dim;
  bool ok() const;
};

/// |C_d(f) - C_d(g)| <= 2 * gh_map_bruteforce(f, g). Throws TooLarge or
/// NotOneLipschitz.
StabilityReport stability_check(const MetricMap& f, const MetricMap& g, const std::vector<int>& dims,
                                double tol = 1e-9);

struct SearchResult {
  std::vector<std::size_t> assignment;
  double cost = kInfinity;  // max over the requested dims
  std::vector<DimCost> per_dim;
  std::uint64_t nodes = 0;      // partial assignments visited
  std::uint64_t evaluated = 0;  // complete maps whose cost was computed
};

/// Least max_d C_d(f) over all 1-Lipschitz f: X -> Y, with the
/// lexicographically smallest minimizer. Throws SearchBudgetExceeded after
/// `budget` nodes.
SearchResult min_cost_lipschitz_search(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                       const std::vector<int>& dims, std::uint64_t budget = 50'000'000);

struct RandomInstance {
  FiniteMetricSpace x;
  FiniteMetricSpace y;
  MetricMap f;
};

/// Uniform point clouds in the unit cube, a uniform random assignment, and Y
/// scaled by the largest factor at most 1 that makes f 1-Lipschitz.
RandomInstance random_instance(std::uint64_t seed, std::size_t nx, std::size_t ny, std::size_t ambient_dim);

}  // namespace pcost
