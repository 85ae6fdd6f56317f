#include "pcost/homology.hpp"

#include <algorithm>
#include <string>

#include "pcost/errors.hpp"

namespace pcost {

PersistenceDiagram::PersistenceDiagram(int dim, std::vector<Bar> bars) : dim_(dim) {
  for (const auto& b : bars) add(b.birth, b.death, b.mult);
}

void PersistenceDiagram::add(double birth, double death, std::size_t mult) {
  if (!(birth < death) || mult == 0) return;
  Bar key{birth, death, mult};
  auto it = std::lower_bound(bars_.begin(), bars_.end(), key, [](const Bar& a, const Bar& b) {
    return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
  });
  if (it != bars_.end() && it->birth == birth && it->death == death)
    it->mult += mult;
  else
    bars_.insert(it, key);
}

void PersistenceDiagram::add(const PersistenceDiagram& other) {
  for (const auto& b : other.bars()) add(b.birth, b.death, b.mult);
}

std::size_t PersistenceDiagram::count() const {
  std::size_t c = 0;
  for (const auto& b : bars_) c += b.mult;
  return c;
}

std::vector<Bar> PersistenceDiagram::expanded() const {
  std::vector<Bar> out;
  for (const auto& b : bars_)
    for (std::size_t k = 0; k < b.mult; ++k) out.push_back({b.birth, b.death, 1});
  return out;
}

namespace {

void require_dims(const Filtration& filt, int d) {
  if (d < 0) throw InsufficientMaxDim("homology dimension must be non-negative");
  if (!filt.covers_dimension(d + 1))
    throw InsufficientMaxDim("H_" + std::to_string(d) + " needs simplices of dimension " +
                             std::to_string(d + 1) + " but the filtration stops at " +
                             std::to_string(filt.max_dim()));
}

f2::Vector boundary_vector(const Filtration& filt, std::size_t i) {
  f2::Vector v(filt.size());
  for (auto f : filt.boundary(i)) v.set(f);
  return v;
}

}  // namespace

PersistenceDiagram persistence_diagram(const Filtration& filt, int d) {
  require_dims(filt, d);
  const std::size_t n = filt.size();
  // Standard reduction: low(j) = youngest face; pivots must be unique.
  std::vector<long> owner(n, -1);  // row -> column whose low it is
  std::vector<bool> positive(n, false);
  PersistenceDiagram diag(d);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<f2::Vector> reduced(n);
  for (std::size_t j = 0; j < n; ++j) {
    int dj = filt.dim(j);
    if (dj != d && dj != d + 1) continue;
    f2::Vector col = boundary_vector(filt, j);
    long low = col.highest();
    while (low >= 0 && owner[static_cast<std::size_t>(low)] >= 0) {
      col ^= reduced[static_cast<std::size_t>(owner[static_cast<std::size_t>(low)])];
      low = col.highest();
    }
    if (low < 0) {
      positive[j] = true;
    } else {
      owner[static_cast<std::size_t>(low)] = static_cast<long>(j);
      if (dj == d + 1) pairs.emplace_back(static_cast<std::size_t>(low), j);
    }
    reduced[j] = std::move(col);
  }
  for (auto [b, k] : pairs) diag.add(filt.value(b), filt.value(k));
  for (std::size_t i = 0; i < n; ++i)
    if (filt.dim(i) == d && positive[i] && owner[i] < 0) diag.add(filt.value(i), kInfinity);
  return diag;
}

HomologyBasis homology_basis(const Filtration& filt, int d, double scale) {
  require_dims(filt, d);
  if (scale > filt.max_scale() && filt.max_scale() < filt.space().diameter())
    throw ScaleOrder("scale beyond the filtration's maximum scale");
  const std::size_t n = filt.size();
  const std::size_t alive = filt.prefix_size(scale);

  // Cycle space Z_d of the alive d-simplices.
  std::vector<std::size_t> dsimp;
  for (std::size_t i = 0; i < alive; ++i)
    if (filt.dim(i) == d) dsimp.push_back(i);
  std::vector<f2::Vector> cycles;
  if (d == 0) {
    for (auto i : dsimp) cycles.push_back(f2::Vector::unit(n, i));
  } else {
    f2::Reducer kr(n, dsimp.size());
    for (std::size_t k = 0; k < dsimp.size(); ++k) {
      f2::Vector v = boundary_vector(filt, dsimp[k]);
      f2::Vector tag = f2::Vector::unit(dsimp.size(), k);
      kr.reduce(v, tag);
      if (v.none()) {
        f2::Vector z(n);
        for (auto c : tag.support()) z.set(dsimp[c]);
        cycles.push_back(std::move(z));
      } else {
        kr.insert(std::move(v), std::move(tag));
      }
    }
  }

  std::vector<f2::Vector> boundaries;
  for (std::size_t i = 0; i < alive; ++i)
    if (filt.dim(i) == d + 1) boundaries.push_back(boundary_vector(filt, i));
  return HomologyBasis(scale, d, alive, f2::QuotientBasis(n, boundaries, cycles));
}

f2::Matrix transition_matrix(const HomologyBasis& from, const HomologyBasis& to) {
  if (from.scale() > to.scale()) throw ScaleOrder("transition requires s <= t");
  std::vector<f2::Vector> cols;
  for (const auto& z : from.cycles()) {
    auto c = to.coordinates(z);
    if (!c) throw Error("cycle alive at the earlier scale is not a cycle at the later one");
    cols.push_back(std::move(*c));
  }
  return f2::Matrix::from_columns(to.size(), std::move(cols));
}

f2::Matrix transition_matrix(const Filtration& filt, int d, double s, double t) {
  if (s > t) throw ScaleOrder("transition requires s <= t");
  return transition_matrix(homology_basis(filt, d, s), homology_basis(filt, d, t));
}

f2::Matrix induced_map_matrix(const SimplicialMap& smap, const HomologyBasis& source,
                              const HomologyBasis& target) {
  std::vector<f2::Vector> cols;
  for (const auto& z : source.cycles()) {
    auto pushed = smap.apply(z);
    auto c = target.coordinates(pushed);
    if (!c)
      throw ShiftTooSmall("image of a cycle at scale " + std::to_string(source.scale()) +
                          " is not alive at scale " + std::to_string(target.scale()));
    cols.push_back(std::move(*c));
  }
  return f2::Matrix::from_columns(target.size(), std::move(cols));
}

f2::Matrix induced_map_matrix(const SimplicialMap& smap, int d, double scale) {
  return induced_map_matrix(smap, homology_basis(smap.source(), d, scale),
                            homology_basis(smap.target(), d, scale + smap.shift()));
}

}  // namespace pcost
