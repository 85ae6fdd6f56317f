#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcost/f2.hpp"
#include "pcost/homology.hpp"
#include "pcost/metric.hpp"
#include "pcost/vr.hpp"

namespace pcost {

/// Persistence module sampled on a finite increasing grid of scales:
/// V_0 -> V_1 -> ... -> V_{r-1}, constant from each scale up to the next and
/// from the last scale on.
struct GridModule {
  std::vector<double> scales;
  std::vector<std::size_t> dims;
  std::vector<f2::Matrix> transitions;  // transitions[i]: V_i -> V_{i+1}

  std::size_t length() const { return scales.size(); }
  /// Composite V_i -> V_j for i <= j.
  f2::Matrix composite(std::size_t i, std::size_t j) const;
  /// Throws Error when matrix shapes disagree with the dimensions.
  void validate() const;

  static GridModule trivial(std::vector<double> scales);
};

/// Homomorphism V -> W sampled at matching grid indices: maps[i] sends
/// V at source.scales[i] to W at target.scales[i]. A degree-shift
/// homomorphism has target scales equal to the source scales plus `shift`.
struct GridHom {
  GridModule source;
  GridModule target;
  std::vector<f2::Matrix> maps;
  double shift = 0.0;

  /// Indices i where maps[i+1] * T^V_i != T^W_i * maps[i].
  std::vector<std::size_t> commutation_failures() const;
};

GridHom identity_hom(const GridModule& m);

/// Degree-`degree` homomorphism between two modules on one shared grid:
/// maps[i] sends V_i to W_{target[i]}, where the grid scale at target[i]
/// is scale i plus the degree. Entries past the grid have target = nullopt.
struct ShiftedHom {
  double degree = 0.0;
  std::vector<std::optional<std::size_t>> target;
  std::vector<f2::Matrix> maps;
};

/// H_d bases for a filtration at every scale of a grid, and the module
/// they span. Non-owning: the filtration must outlive it.
class HomologyTower {
 public:
  HomologyTower(const Filtration& filt, int d, std::vector<double> scales);

  const Filtration& filtration() const { return *filt_; }
  int dim() const { return dim_; }
  const HomologyBasis& basis(std::size_t i) const { return bases_[i]; }
  const GridModule& module() const { return module_; }

 private:
  const Filtration* filt_;
  int dim_;
  std::vector<HomologyBasis> bases_;
  GridModule module_;
};

GridModule module_of_filtration(const Filtration& filt, int d, const CriticalGrid& grid);

/// f_* between towers whose i-th scales differ by the map's shift.
GridHom hom_between(const SimplicialMap& smap, const HomologyTower& source, const HomologyTower& target);

/// f_*: H_d(VR(X)) -> H_d(VR(Y) shifted by `shift`) on the union grid of
/// both spaces (augmented by the shifted critical values of Y when shift > 0).
/// Throws ShiftTooSmall when shift < quasi_lipschitz_defect(f).
GridHom hom_of_map(const MetricMap& f, int d, double shift = 0.0);

GridModule kernel_module(const GridHom& f);
GridModule image_module(const GridHom& f);
GridModule cokernel_module(const GridHom& f);

/// Restriction of a: V1 -> V2 to Ker f1 -> Ker f2. Throws Error when a does
/// not carry kernel into kernel.
ShiftedHom restrict_to_kernels(const GridHom& f1, const GridHom& f2, const ShiftedHom& a);
/// Restriction of b: W1 -> W2 to Im f1 -> Im f2.
ShiftedHom restrict_to_images(const GridHom& f1, const GridHom& f2, const ShiftedHom& b);
/// Map Coker f1 -> Coker f2 induced by b: W1 -> W2.
ShiftedHom induced_on_cokernels(const GridHom& f1, const GridHom& f2, const ShiftedHom& b);

/// Barcode by inclusion-exclusion on the rank invariant. Grid index
/// interval [i, j] becomes [scale_i, scale_{j+1}), or [scale_i, inf) when j
/// is the last index. Throws NegativeMultiplicity on inconsistent input.
PersistenceDiagram barcode(const GridModule& m, int dim = 0);

/// Interleaving distance to the zero module: half the longest bar.
double cost_to_trivial(const PersistenceDiagram& d);
double cost_to_trivial(const GridModule& m);

struct MatchedPair {
  Bar source;  // [a, b)
  Bar target;  // [c, d)
};

struct Matching {
  std::vector<MatchedPair> pairs;
  PersistenceDiagram unmatched_source;
  PersistenceDiagram unmatched_target;
};

/// Matching induced by f through its image: V ->> Im pairs bars with a
/// common birth, Im >-> W pairs bars with a common death, longest bars first
/// within each group. Every pair satisfies c <= a < d <= b.
Matching induced_matching(const GridHom& f);

/// Kernel bars {[d, b)} plus unmatched source bars; cokernel bars {[c, a)}
/// plus unmatched target bars.
std::pair<PersistenceDiagram, PersistenceDiagram> matching_to_kernel_cokernel(const Matching& m);

struct InterleavingReport {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<double> first_failure;  // grid scale where a triangle fails
};

/// Checks G o F = phi^V_{2 delta} and F o G = phi^W_{2 delta} at every grid
/// index where both composites are representable. Throws GridMismatch when
/// the modules' grids or the degrees differ.
InterleavingReport verify_interleaving(const GridModule& v, const GridModule& w, const ShiftedHom& f,
                                       const ShiftedHom& g);

/// phi_{degree} of a module as a ShiftedHom on its own grid.
ShiftedHom shift_map(const GridModule& m, double degree, double rel_tol = 1e-9);

}  // namespace pcost
