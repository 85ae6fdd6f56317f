#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pcost/f2.hpp"
#include "pcost/metric.hpp"

namespace pcost {

using Simplex = std::vector<std::size_t>;  // sorted vertex indices

/// Vietoris-Rips filtration: every simplex of dimension <= max_dim and
/// diameter <= max_scale, sorted by (value, dimension, vertices).
class Filtration {
 public:
  const FiniteMetricSpace& space() const { return space_; }
  int max_dim() const { return max_dim_; }
  double max_scale() const { return max_scale_; }

  std::size_t size() const { return simplices_.size(); }
  const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
  int dim(std::size_t i) const { return static_cast<int>(simplices_[i].size()) - 1; }
  double value(std::size_t i) const { return values_[i]; }
  /// Indices of the codimension-one faces of simplex i.
  const std::vector<std::size_t>& boundary(std::size_t i) const { return boundary_[i]; }

  std::optional<std::size_t> index_of(const Simplex& s) const;
  /// Number of simplices with value <= scale; they form a prefix.
  std::size_t prefix_size(double scale) const;

  /// True when every simplex of dimension `dim` present in the full complex
  /// is listed (max_dim reaches it or the complex has no simplices that big).
  bool covers_dimension(int dim) const;

  friend Filtration build_filtration(const FiniteMetricSpace& space, int max_dim,
                                     std::optional<double> max_scale);

 private:
  FiniteMetricSpace space_;
  int max_dim_ = 0;
  double max_scale_ = 0.0;
  std::vector<Simplex> simplices_;
  std::vector<double> values_;
  std::vector<std::vector<std::size_t>> boundary_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Throws DimensionTooLarge when max_dim >= number of points, TooLarge past
/// 64 points.
Filtration build_filtration(const FiniteMetricSpace& space, int max_dim,
                            std::optional<double> max_scale = std::nullopt);

/// Filtration sufficient for homology up to `top_dim`: simplices through
/// dimension top_dim + 1, capped by what the point count allows.
Filtration homology_filtration(const FiniteMetricSpace& space, int top_dim);

/// Sorted, exactly deduplicated union of 0 and all pairwise distances.
struct CriticalGrid {
  std::vector<double> scales;

  std::size_t size() const { return scales.size(); }
  double operator[](std::size_t i) const { return scales[i]; }
  /// Index of a scale equal to v up to a relative tolerance.
  std::optional<std::size_t> find(double v, double rel_tol = 1e-9) const;
};

CriticalGrid critical_grid(const FiniteMetricSpace& x);
CriticalGrid critical_grid(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// Adds s + shift and s + 2 * shift (and so on, `steps` times) for every
/// scale s, merging values within the tolerance, so degree-`shift` maps can
/// be read on the grid without rounding.
CriticalGrid closed_grid(const CriticalGrid& base, double shift, int steps = 2,
                         double rel_tol = 1e-9);

/// Chain map induced by a vertex map. Non-owning: the filtrations must
/// outlive it.
class SimplicialMap {
 public:
  const Filtration& source() const { return *source_; }
  const Filtration& target() const { return *target_; }
  const std::vector<std::size_t>& vertex_map() const { return vertex_map_; }
  double shift() const { return shift_; }

  /// Image index of simplex i, or nullopt when its image is degenerate.
  std::optional<std::size_t> image(std::size_t i) const;
  /// Pushes a chain of the source filtration to the target.
  f2::Vector apply(const f2::Vector& chain) const;

  friend SimplicialMap induced_simplicial_map(const MetricMap& f, double shift,
                                              const Filtration& source, const Filtration& target);

 private:
  const Filtration* source_ = nullptr;
  const Filtration* target_ = nullptr;
  std::vector<std::size_t> vertex_map_;
  double shift_ = 0.0;
  std::vector<long> image_;
};

/// Throws ShiftTooSmall if some simplex image has diameter beyond its value
/// plus `shift`, InsufficientMaxDim if the target filtration lacks an image.
SimplicialMap induced_simplicial_map(const MetricMap& f, double shift, const Filtration& source,
                                     const Filtration& target);

}  // namespace pcost
