#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcost {

enum class Norm { L2, L1, Linf };

/// Finite metric space stored as a dense distance matrix. Construction
/// validates the metric axioms with exact comparisons; instances are
/// immutable afterwards.
class FiniteMetricSpace {
 public:
  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double diameter() const { return diameter_; }

  /// All d(i, j) with i < j, in row order.
  std::vector<double> pairwise() const;
  std::vector<std::vector<double>> matrix() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& coords() const { return coords_; }
  bool has_coords() const { return !coords_.empty(); }

  /// Same distances multiplied by a non-negative factor; coordinates scale too.
  FiniteMetricSpace scaled(double factor) const;
  FiniteMetricSpace with_labels(std::vector<std::string> labels) const;

  friend FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix);
  friend FiniteMetricSpace point_cloud_space(const std::vector<std::vector<double>>& rows,
                                             Norm norm);

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
  double diameter_ = 0.0;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> coords_;
};

/// Throws InvalidMatrix, NonzeroDiagonal, NegativeDistanceError,
/// AsymmetryError or TriangleViolation.
FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix);

FiniteMetricSpace point_cloud_space(const std::vector<std::vector<double>>& rows,
                                    Norm norm = Norm::L2);

/// A function between finite metric spaces, given by one target index per
/// source point. Being 1-Lipschitz is a property checked separately.
class MetricMap {
 public:
  MetricMap(FiniteMetricSpace source, FiniteMetricSpace target,
            std::vector<std::size_t> assignment);

  const FiniteMetricSpace& source() const { return source_; }
  const FiniteMetricSpace& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t operator()(std::size_t x) const { return assignment_[x]; }

  /// Sorted distinct target indices hit by the map.
  std::vector<std::size_t> image() const;

 private:
  FiniteMetricSpace source_;
  FiniteMetricSpace target_;
  std::vector<std::size_t> assignment_;
};

MetricMap identity_map(const FiniteMetricSpace& space);

/// Relation between index sets {0..nx-1} and {0..ny-1}, surjective onto both.
class Correspondence {
 public:
  Correspondence(std::size_t nx, std::size_t ny, std::set<std::pair<std::size_t, std::size_t>> pairs);

  const std::set<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t source_size() const { return nx_; }
  std::size_t target_size() const { return ny_; }

 private:
  std::size_t nx_, ny_;
  std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

/// sup |d_Y(f x, f x') - d_X(x, x')|.
double map_distortion(const MetricMap& f);

/// max(0, sup d_Y(f x, f x') - d_X(x, x')); zero exactly when f is 1-Lipschitz.
double quasi_lipschitz_defect(const MetricMap& f);

/// Hausdorff distance from the subset A to the whole space Y.
double hausdorff_to_space(const std::vector<std::size_t>& subset, const FiniteMetricSpace& space);

double correspondence_distortion(const Correspondence& c, const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y);

/// Graph of f enlarged by pairing every y with the lowest-index x whose image
/// is nearest to y.
Correspondence correspondence_from_map(const MetricMap& f);

/// Exact Gromov-Hausdorff distance: half the least distortion over all
/// correspondences. Throws TooLarge when |X|*|Y| exceeds the cap.
double gh_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                     std::size_t max_pairs = 25);

/// Gromov-Hausdorff type distance between maps f1: X1 -> Y1 and
/// f2: X2 -> Y2, minimizing over all functions S, S', T, T' between the
/// (co)domains. Throws TooLarge when some space exceeds max_points.
double gh_map_bruteforce(const MetricMap& f1, const MetricMap& f2, std::size_t max_points = 4);

}  // namespace pcost
