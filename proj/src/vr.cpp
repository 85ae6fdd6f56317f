#include "pcost/vr.hpp"

#include <algorithm>
#include <cmath>

#include "pcost/errors.hpp"

namespace pcost {

namespace {

std::uint64_t mask_of(const Simplex& s) {
  std::uint64_t m = 0;
  for (auto v : s) m |= std::uint64_t{1} << v;
  return m;
}

double diameter_of(const FiniteMetricSpace& x, const Simplex& s) {
  double d = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) d = std::max(d, x(s[a], s[b]));
  return d;
}

bool within_tol(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

std::optional<std::size_t> Filtration::index_of(const Simplex& s) const {
  auto it = index_.find(mask_of(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Filtration::prefix_size(double scale) const {
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), scale) - values_.begin());
}

bool Filtration::covers_dimension(int dim) const {
  return dim <= max_dim_ || dim > static_cast<int>(space_.size()) - 1;
}

Filtration build_filtration(const FiniteMetricSpace& space, int max_dim, std::optional<double> max_scale) {
  const std::size_t n = space.size();
  if (max_dim < 0) throw DimensionTooLarge("maximum dimension must be non-negative");
  if (static_cast<std::size_t>(max_dim) >= n)
    throw DimensionTooLarge("maximum dimension " + std::to_string(max_dim) + " needs more than " +
                            std::to_string(n) + " points");
  if (n > 64) throw TooLarge("Vietoris-Rips filtrations are limited to 64 points");

  Filtration f;
  f.space_ = space;
  f.max_dim_ = max_dim;
  f.max_scale_ = max_scale.value_or(space.diameter());

  struct Entry {
    Simplex s;
    double value;
  };
  std::vector<Entry> entries;
  // Grow cliques vertex by vertex in increasing order.
  Simplex current;
  auto grow = [&](auto&& self, std::size_t next, double diam) -> void {
    entries.push_back({current, diam});
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t v = next; v < n; ++v) {
      double d = diam;
      for (auto u : current) d = std::max(d, space(u, v));
      if (d > f.max_scale_) continue;
      current.push_back(v);
      self(self, v + 1, d);
      current.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    current = {v};
    grow(grow, v + 1, 0.0);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
    return a.s < b.s;
  });

  f.simplices_.reserve(entries.size());
  f.values_.reserve(entries.size());
  for (auto& e : entries) {
    f.index_.emplace(mask_of(e.s), f.simplices_.size());
    f.simplices_.push_back(std::move(e.s));
    f.values_.push_back(e.value);
  }
  f.boundary_.resize(f.simplices_.size());
  for (std::size_t i = 0; i < f.simplices_.size(); ++i) {
    const auto& s = f.simplices_[i];
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != drop) face.push_back(s[k]);
      f.boundary_[i].push_back(f.index_.at(mask_of(face)));
    }
    std::sort(f.boundary_[i].begin(), f.boundary_[i].end());
  }
  return f;
}

Filtration homology_filtration(const FiniteMetricSpace& space, int top_dim) {
  int cap = static_cast<int>(space.size()) - 1;
  return build_filtration(space, std::min(top_dim + 1, cap));
}

std::optional<std::size_t> CriticalGrid::find(double v, double rel_tol) const {
  auto it = std::lower_bound(scales.begin(), scales.end(), v);
  if (it != scales.end() && within_tol(*it, v, rel_tol)) return static_cast<std::size_t>(it - scales.begin());
  if (it != scales.begin() && within_tol(*std::prev(it), v, rel_tol))
    return static_cast<std::size_t>(std::prev(it) - scales.begin());
  return std::nullopt;
}

namespace {

CriticalGrid grid_from(std::vector<double> values) {
  values.push_back(0.0);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return CriticalGrid{std::move(values)};
}

}  // namespace

CriticalGrid critical_grid(const FiniteMetricSpace& x) { return grid_from(x.pairwise()); }

CriticalGrid critical_grid(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  auto v = x.pairwise();
  auto w = y.pairwise();
  v.insert(v.end(), w.begin(), w.end());
  return grid_from(std::move(v));
}

CriticalGrid closed_grid(const CriticalGrid& base, double shift, int steps, double rel_tol) {
  struct Cand {
    double v;
    bool base;
  };
  std::vector<Cand> cands;
  for (double s : base.scales) {
    cands.push_back({s, true});
    double t = s;
    for (int k = 0; k < steps; ++k) {
      t = t + shift;
      cands.push_back({t, false});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });
  std::vector<Cand> merged;
  for (const auto& c : cands) {
    if (!merged.empty() && within_tol(merged.back().v, c.v, rel_tol)) {
      if (c.base && !merged.back().base) merged.back() = c;
      continue;
    }
    merged.push_back(c);
  }
  CriticalGrid g;
  for (const auto& c : merged) g.scales.push_back(c.v);
  return g;
}

std::optional<std::size_t> SimplicialMap::image(std::size_t i) const {
  if (image_[i] < 0) return std::nullopt;
  return static_cast<std::size_t>(image_[i]);
}

f2::Vector SimplicialMap::apply(const f2::Vector& chain) const {
  f2::Vector out(target_->size());
  for (auto i : chain.support())
    if (image_[i] >= 0) out.flip(static_cast<std::size_t>(image_[i]));
  return out;
}

SimplicialMap induced_simplicial_map(const MetricMap& f, double shift, const Filtration& source,
                                     const Filtration& target) {
  if (f.source().size() != source.space().size() || f.target().size() != target.space().size())
    throw InvalidMap("map does not match the filtrations' spaces");
  SimplicialMap m;
  m.source_ = &source;
  m.target_ = &target;
  m.vertex_map_ = f.assignment();
  m.shift_ = shift;
  m.image_.assign(source.size(), -1);
  for (std::size_t i = 0; i < source.size(); ++i) {
    Simplex img;
    for (auto v : source.simplex(i)) img.push_back(f(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    double diam = diameter_of(target.space(), img);
    if (diam > source.value(i) + shift)
      throw ShiftTooSmall("simplex " + std::to_string(i) + " of value " + std::to_string(source.value(i)) +
                          " maps to diameter " + std::to_string(diam) + " beyond shift " +
                          std::to_string(shift));
    if (img.size() != source.simplex(i).size()) continue;  // degenerate: zero chain
    auto idx = target.index_of(img);
    if (!idx) throw InsufficientMaxDim("target filtration lacks the image of simplex " + std::to_string(i));
    m.image_[i] = static_cast<long>(*idx);
  }
  return m;
}

}  // namespace pcost
