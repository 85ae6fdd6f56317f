#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "pcost/f2.hpp"
#include "pcost/vr.hpp"

namespace pcost {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Half-open interval [birth, death) with multiplicity; death may be infinite.
struct Bar {
  double birth = 0.0;
  double death = kInfinity;
  std::size_t mult = 1;

  bool infinite() const { return death == kInfinity; }
  double length() const { return death - birth; }
  bool operator==(const Bar&) const = default;
};

/// Multiset of bars. Kept normalized: sorted by (birth, death), equal
/// intervals merged, no empty intervals.
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;
  explicit PersistenceDiagram(int dim) : dim_(dim) {}
  PersistenceDiagram(int dim, std::vector<Bar> bars);

  int dim() const { return dim_; }
  const std::vector<Bar>& bars() const { return bars_; }
  /// Bars with birth < death are recorded; empty intervals are dropped.
  void add(double birth, double death, std::size_t mult = 1);
  void add(const PersistenceDiagram& other);

  std::size_t count() const;
  bool empty() const { return bars_.empty(); }
  /// One entry per bar, multiplicities expanded.
  std::vector<Bar> expanded() const;

  /// Multiset equality (dimension is not compared).
  bool same_bars(const PersistenceDiagram& other) const { return bars_ == other.bars_; }
  bool operator==(const PersistenceDiagram& other) const = default;

 private:
  int dim_ = 0;
  std::vector<Bar> bars_;
};

/// Barcode of H_d by column reduction of the boundary matrix. Throws
/// InsufficientMaxDim unless the filtration lists all (d+1)-simplices.
PersistenceDiagram persistence_diagram(const Filtration& filt, int d);

/// Cycle representatives of a basis of H_d(VR_scale), together with the
/// echelon data needed to express any cycle alive at that scale in it.
class HomologyBasis {
 public:
  double scale() const { return scale_; }
  int dim() const { return dim_; }
  std::size_t size() const { return quotient_.size(); }
  const std::vector<f2::Vector>& cycles() const { return quotient_.basis(); }
  /// Simplex indices of the k-th representative.
  std::vector<std::size_t> cycle_simplices(std::size_t k) const { return cycles()[k].support(); }
  /// Number of simplices alive at the scale.
  std::size_t alive() const { return alive_; }

  /// Coordinates of a d-cycle of VR_scale modulo boundaries; nullopt when
  /// the chain is not such a cycle.
  std::optional<f2::Vector> coordinates(const f2::Vector& cycle) const {
    return quotient_.coordinates(cycle);
  }

  friend HomologyBasis homology_basis(const Filtration& filt, int d, double scale);

 private:
  HomologyBasis(double scale, int dim, std::size_t alive, f2::QuotientBasis q)
      : scale_(scale), dim_(dim), alive_(alive), quotient_(std::move(q)) {}

  double scale_;
  int dim_;
  std::size_t alive_;
  f2::QuotientBasis quotient_;
};

/// Throws InsufficientMaxDim, or ScaleOrder when the scale lies beyond a
/// truncated filtration.
HomologyBasis homology_basis(const Filtration& filt, int d, double scale);

/// Matrix of the inclusion-induced map H_d(VR_s) -> H_d(VR_t).
f2::Matrix transition_matrix(const Filtration& filt, int d, double s, double t);
f2::Matrix transition_matrix(const HomologyBasis& from, const HomologyBasis& to);

/// Matrix of f_*: H_d(VR_scale(X)) -> H_d(VR_{scale+shift}(Y)).
f2::Matrix induced_map_matrix(const SimplicialMap& smap, int d, double scale);
f2::Matrix induced_map_matrix(const SimplicialMap& smap, const HomologyBasis& source,
                              const HomologyBasis& target);

}  // namespace pcost
