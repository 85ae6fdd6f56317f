#include "pcost/module.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "pcost/errors.hpp"

namespace pcost {

using f2::Matrix;
using f2::QuotientBasis;
using f2::Vector;

f2::Matrix GridModule::composite(std::size_t i, std::size_t j) const {
  if (i > j) throw ScaleOrder("composite requires i <= j");
  Matrix m = Matrix::identity(dims[i]);
  for (std::size_t k = i; k < j; ++k) m = transitions[k] * m;
  return m;
}

void GridModule::validate() const {
  if (dims.size() != scales.size()) throw Error("module: dims and scales differ in length");
  if (transitions.size() + 1 != std::max<std::size_t>(scales.size(), 1))
    throw Error("module: wrong number of transitions");
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].cols() != dims[i] || transitions[i].rows() != dims[i + 1])
      throw Error("module: transition " + std::to_string(i) + " has the wrong shape");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i - 1] < scales[i])) throw Error("module: scales must increase strictly");
}

GridModule GridModule::trivial(std::vector<double> scales) {
  GridModule m;
  m.dims.assign(scales.size(), 0);
  for (std::size_t i = 0; i + 1 < scales.size(); ++i) m.transitions.emplace_back(0, 0);
  m.scales = std::move(scales);
  return m;
}

std::vector<std::size_t> GridHom::commutation_failures() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!(maps[i + 1] * source.transitions[i] == target.transitions[i] * maps[i])) out.push_back(i);
  return out;
}

GridHom identity_hom(const GridModule& m) {
  GridHom h{m, m, {}, 0.0};
  for (auto d : m.dims) h.maps.push_back(Matrix::identity(d));
  return h;
}

HomologyTower::HomologyTower(const Filtration& filt, int d, std::vector<double> scales)
    : filt_(&filt), dim_(d) {
  for (double s : scales) bases_.push_back(homology_basis(filt, d, s));
  for (const auto& b : bases_) module_.dims.push_back(b.size());
  for (std::size_t i = 0; i + 1 < bases_.size(); ++i)
    module_.transitions.push_back(transition_matrix(bases_[i], bases_[i + 1]));
  module_.scales = std::move(scales);
}

GridModule module_of_filtration(const Filtration& filt, int d, const CriticalGrid& grid) {
  return HomologyTower(filt, d, grid.scales).module();
}

GridHom hom_between(const SimplicialMap& smap, const HomologyTower& source, const HomologyTower& target) {
  const auto& vs = source.module().scales;
  if (vs.size() != target.module().scales.size())
    throw GridMismatch("source and target towers have different lengths");
  GridHom h{source.module(), target.module(), {}, smap.shift()};
  for (std::size_t i = 0; i < vs.size(); ++i)
    h.maps.push_back(induced_map_matrix(smap, source.basis(i), target.basis(i)));
  return h;
}

GridHom hom_of_map(const MetricMap& f, int d, double shift) {
  const double defect = quasi_lipschitz_defect(f);
  if (shift < defect)
    throw ShiftTooSmall("shift " + std::to_string(shift) + " below the defect " + std::to_string(defect));
  const auto& x = f.source();
  const auto& y = f.target();
  auto fx = homology_filtration(x, d);
  auto fy = homology_filtration(y, d);
  auto smap = induced_simplicial_map(f, shift, fx, fy);

  std::vector<double> src_scales, tgt_scales;
  if (shift == 0.0) {
    src_scales = critical_grid(x, y).scales;
    tgt_scales = src_scales;
  } else {
    // Source grid: critical values of X plus those of Y pulled back by the
    // shift; target scales are shifted and snapped onto Y's critical values.
    auto cy = critical_grid(y);
    std::vector<double> cand = critical_grid(x).scales;
    for (double c : cy.scales)
      if (c - shift > 0.0) cand.push_back(c - shift);
    std::sort(cand.begin(), cand.end());
    CriticalGrid base;
    for (double c : cand)
      if (base.scales.empty() || !base.find(c)) base.scales.push_back(c);
    src_scales = base.scales;
    for (double s : src_scales) {
      double t = s + shift;
      if (auto k = cy.find(t)) t = cy[*k];
      tgt_scales.push_back(t);
    }
  }
  HomologyTower tx(fx, d, src_scales);
  HomologyTower ty(fy, d, tgt_scales);
  return hom_between(smap, tx, ty);
}

namespace {

// Per-index bases shared by the module constructors and the restrictions.

QuotientBasis kernel_basis(const GridHom& f, std::size_t i) {
  return QuotientBasis(f.source.dims[i], {}, f.maps[i].kernel());
}

std::vector<Vector> columns(const Matrix& m) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

QuotientBasis image_basis(const GridHom& f, std::size_t i) {
  return QuotientBasis(f.target.dims[i], {}, columns(f.maps[i]));
}

QuotientBasis cokernel_basis(const GridHom& f, std::size_t i) {
  std::vector<Vector> units;
  for (std::size_t k = 0; k < f.target.dims[i]; ++k) units.push_back(Vector::unit(f.target.dims[i], k));
  return QuotientBasis(f.target.dims[i], columns(f.maps[i]), units);
}

// Matrix of `apply` on the basis of `from`, expressed in `to`.
template <class Apply>
Matrix express(const QuotientBasis& from, const QuotientBasis& to, Apply apply, const char* what) {
  std::vector<Vector> cols;
  for (const auto& v : from.basis()) {
    auto c = to.coordinates(apply(v));
    if (!c) throw Error(std::string(what) + ": image leaves the target subspace");
    cols.push_back(std::move(*c));
  }
  return Matrix::from_columns(to.size(), std::move(cols));
}

template <class BasisFn>
GridModule sub_module(const GridHom& f, BasisFn basis, const Matrix* (*transition)(const GridHom&, std::size_t),
                      const char* what) {
  f.source.validate();
  f.target.validate();
  GridModule m;
  m.scales = f.source.scales;
  std::vector<QuotientBasis> bases;
  for (std::size_t i = 0; i < m.scales.size(); ++i) bases.push_back(basis(f, i));
  for (const auto& b : bases) m.dims.push_back(b.size());
  for (std::size_t i = 0; i + 1 < bases.size(); ++i) {
    const Matrix& t = *transition(f, i);
    m.transitions.push_back(express(bases[i], bases[i + 1], [&](const Vector& v) { return t.apply(v); }, what));
  }
  return m;
}

const Matrix* source_transition(const GridHom& f, std::size_t i) { return &f.source.transitions[i]; }
const Matrix* target_transition(const GridHom& f, std::size_t i) { return &f.target.transitions[i]; }

void require_shared_grid(const GridHom& f1, const GridHom& f2, const ShiftedHom& a) {
  if (f1.source.scales != f2.source.scales) throw GridMismatch("homomorphisms live on different grids");
  if (a.maps.size() != f1.source.length() || a.target.size() != f1.source.length())
    throw GridMismatch("comparison map does not match the grid length");
}

template <class BasisFn>
ShiftedHom restrict_between(const GridHom& f1, const GridHom& f2, const ShiftedHom& a, BasisFn basis,
                            const char* what) {
  require_shared_grid(f1, f2, a);
  ShiftedHom out{a.degree, a.target, {}};
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    auto from = basis(f1, i);
    if (!a.target[i]) {
      out.maps.emplace_back(0, from.size());
      continue;
    }
    auto to = basis(f2, *a.target[i]);
    const Matrix& m = a.maps[i];
    out.maps.push_back(express(from, to, [&](const Vector& v) { return m.apply(v); }, what));
  }
  return out;
}

}  // namespace

GridModule kernel_module(const GridHom& f) {
  return sub_module(f, kernel_basis, source_transition, "kernel transition");
}

GridModule image_module(const GridHom& f) {
  return sub_module(f, image_basis, target_transition, "image transition");
}

GridModule cokernel_module(const GridHom& f) {
  return sub_module(f, cokernel_basis, target_transition, "cokernel transition");
}

ShiftedHom restrict_to_kernels(const GridHom& f1, const GridHom& f2, const ShiftedHom& a) {
  return restrict_between(f1, f2, a, kernel_basis, "kernel restriction");
}

ShiftedHom restrict_to_images(const GridHom& f1, const GridHom& f2, const ShiftedHom& b) {
  return restrict_between(f1, f2, b, image_basis, "image restriction");
}

ShiftedHom induced_on_cokernels(const GridHom& f1, const GridHom& f2, const ShiftedHom& b) {
  return restrict_between(f1, f2, b, cokernel_basis, "cokernel map");
}

namespace {

struct IndexBar {
  std::size_t birth;
  std::size_t last;  // last grid index where the bar is alive
  std::size_t mult;
};

std::vector<IndexBar> index_barcode(const GridModule& m) {
  m.validate();
  const std::size_t r = m.length();
  // rk[i][j] for i <= j, computed row by row from running composites.
  std::vector<std::vector<long>> rk(r, std::vector<long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    Matrix c = Matrix::identity(m.dims[i]);
    rk[i][i] = static_cast<long>(m.dims[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      c = m.transitions[j - 1] * c;
      rk[i][j] = static_cast<long>(c.rank());
    }
  }
  auto at = [&](long i, long j) -> long {
    if (i < 0 || j >= static_cast<long>(r) || i > j) return 0;
    return rk[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  std::vector<IndexBar> out;
  for (long i = 0; i < static_cast<long>(r); ++i)
    for (long j = i; j < static_cast<long>(r); ++j) {
      long mult = at(i, j) - at(i - 1, j) - at(i, j + 1) + at(i - 1, j + 1);
      if (mult < 0)
        throw NegativeMultiplicity("negative multiplicity for grid interval [" + std::to_string(i) + ", " +
                                   std::to_string(j) + "]");
      if (mult > 0)
        out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(mult)});
    }
  return out;
}

double death_of(const std::vector<double>& scales, std::size_t last) {
  return last + 1 < scales.size() ? scales[last + 1] : kInfinity;
}

Bar to_bar(const std::vector<double>& scales, std::size_t birth, std::size_t last) {
  return {scales[birth], death_of(scales, last), 1};
}

}  // namespace

PersistenceDiagram barcode(const GridModule& m, int dim) {
  PersistenceDiagram d(dim);
  for (const auto& b : index_barcode(m)) d.add(m.scales[b.birth], death_of(m.scales, b.last), b.mult);
  return d;
}

double cost_to_trivial(const PersistenceDiagram& d) {
  double best = 0.0;
  for (const auto& b : d.bars()) best = std::max(best, b.infinite() ? kInfinity : b.length() / 2.0);
  return best;
}

double cost_to_trivial(const GridModule& m) { return cost_to_trivial(barcode(m)); }

Matching induced_matching(const GridHom& f) {
  // All three barcodes on the source grid; W is read as W shifted down.
  auto expand = [](const std::vector<IndexBar>& bars) {
    std::vector<IndexBar> out;
    for (const auto& b : bars)
      for (std::size_t k = 0; k < b.mult; ++k) out.push_back({b.birth, b.last, 1});
    return out;
  };
  GridModule w = f.target;
  w.scales = f.source.scales;
  auto vb = expand(index_barcode(f.source));
  auto ib = expand(index_barcode(image_module(f)));
  auto wb = expand(index_barcode(w));

  // V ->> Im: common birth, longest first on both sides.
  std::map<std::size_t, std::vector<std::size_t>> v_by_birth, i_by_birth;
  for (std::size_t k = 0; k < vb.size(); ++k) v_by_birth[vb[k].birth].push_back(k);
  for (std::size_t k = 0; k < ib.size(); ++k) i_by_birth[ib[k].birth].push_back(k);
  std::vector<long> image_to_source(ib.size(), -1);
  for (auto& [birth, ims] : i_by_birth) {
    auto& vs = v_by_birth[birth];
    auto by_death_desc = [](const std::vector<IndexBar>& bars) {
      return [&bars](std::size_t a, std::size_t b) {
        return bars[a].last > bars[b].last || (bars[a].last == bars[b].last && a < b);
      };
    };
    std::sort(vs.begin(), vs.end(), by_death_desc(vb));
    std::sort(ims.begin(), ims.end(), by_death_desc(ib));
    if (ims.size() > vs.size()) throw Error("induced matching: image bar without a source bar");
    for (std::size_t k = 0; k < ims.size(); ++k) image_to_source[ims[k]] = static_cast<long>(vs[k]);
  }

  // Im >-> W: common death, longest first on both sides.
  std::map<std::size_t, std::vector<std::size_t>> w_by_last, i_by_last;
  for (std::size_t k = 0; k < wb.size(); ++k) w_by_last[wb[k].last].push_back(k);
  for (std::size_t k = 0; k < ib.size(); ++k) i_by_last[ib[k].last].push_back(k);
  std::vector<long> image_to_target(ib.size(), -1);
  for (auto& [last, ims] : i_by_last) {
    auto& ws = w_by_last[last];
    auto by_birth_asc = [](const std::vector<IndexBar>& bars) {
      return [&bars](std::size_t a, std::size_t b) {
        return bars[a].birth < bars[b].birth || (bars[a].birth == bars[b].birth && a < b);
      };
    };
    std::sort(ws.begin(), ws.end(), by_birth_asc(wb));
    std::sort(ims.begin(), ims.end(), by_birth_asc(ib));
    if (ims.size() > ws.size()) throw Error("induced matching: image bar without a target bar");
    for (std::size_t k = 0; k < ims.size(); ++k) image_to_target[ims[k]] = static_cast<long>(ws[k]);
  }

  const auto& s = f.source.scales;
  Matching m;
  m.unmatched_source = PersistenceDiagram(0);
  m.unmatched_target = PersistenceDiagram(0);
  std::vector<bool> v_used(vb.size(), false), w_used(wb.size(), false);
  for (std::size_t k = 0; k < ib.size(); ++k) {
    auto vi = static_cast<std::size_t>(image_to_source[k]);
    auto wi = static_cast<std::size_t>(image_to_target[k]);
    v_used[vi] = w_used[wi] = true;
    m.pairs.push_back({to_bar(s, vb[vi].birth, vb[vi].last), to_bar(s, wb[wi].birth, wb[wi].last)});
  }
  std::sort(m.pairs.begin(), m.pairs.end(), [](const MatchedPair& a, const MatchedPair& b) {
    auto key = [](const MatchedPair& p) {
      return std::tuple(p.source.birth, p.source.death, p.target.birth, p.target.death);
    };
    return key(a) < key(b);
  });
  for (std::size_t k = 0; k < vb.size(); ++k)
    if (!v_used[k]) m.unmatched_source.add(s[vb[k].birth], death_of(s, vb[k].last));
  for (std::size_t k = 0; k < wb.size(); ++k)
    if (!w_used[k]) m.unmatched_target.add(s[wb[k].birth], death_of(s, wb[k].last));
  return m;
}

std::pair<PersistenceDiagram, PersistenceDiagram> matching_to_kernel_cokernel(const Matching& m) {
  PersistenceDiagram ker(m.unmatched_source.dim()), coker(m.unmatched_target.dim());
  for (const auto& p : m.pairs) {
    ker.add(p.target.death, p.source.death);
    coker.add(p.target.birth, p.source.birth);
  }
  ker.add(m.unmatched_source);
  coker.add(m.unmatched_target);
  return {ker, coker};
}

ShiftedHom shift_map(const GridModule& m, double degree, double rel_tol) {
  CriticalGrid g{m.scales};
  ShiftedHom h{degree, {}, {}};
  for (std::size_t i = 0; i < m.length(); ++i) {
    auto t = g.find(m.scales[i] + degree, rel_tol);
    h.target.push_back(t);
    h.maps.push_back(t ? m.composite(i, *t) : Matrix(0, m.dims[i]));
  }
  return h;
}

InterleavingReport verify_interleaving(const GridModule& v, const GridModule& w, const ShiftedHom& f,
                                       const ShiftedHom& g) {
  if (v.scales != w.scales) throw GridMismatch("interleaved modules must share a grid");
  if (f.degree != g.degree) throw GridMismatch("interleaving maps must have equal degrees");
  const std::size_t r = v.length();
  if (f.maps.size() != r || g.maps.size() != r || f.target.size() != r || g.target.size() != r)
    throw GridMismatch("interleaving maps do not match the grid length");
  InterleavingReport rep;
  auto fail = [&](std::size_t i) {
    if (!rep.first_failure || v.scales[i] < *rep.first_failure) rep.first_failure = v.scales[i];
    rep.ok = false;
  };
  // Naturality of each map, then the two triangles.
  auto natural = [&](const GridModule& a, const GridModule& b, const ShiftedHom& h) {
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (!h.target[i] || !h.target[i + 1]) continue;
      ++rep.checked;
      if (!(h.maps[i + 1] * a.transitions[i] == b.composite(*h.target[i], *h.target[i + 1]) * h.maps[i])) fail(i);
    }
  };
  auto triangle = [&](const GridModule& a, const ShiftedHom& h1, const ShiftedHom& h2) {
    for (std::size_t i = 0; i < r; ++i) {
      if (!h1.target[i] || !h2.target[*h1.target[i]]) continue;
      std::size_t u = *h2.target[*h1.target[i]];
      ++rep.checked;
      if (!(h2.maps[*h1.target[i]] * h1.maps[i] == a.composite(i, u))) fail(i);
    }
  };
  natural(v, w, f);
  natural(w, v, g);
  triangle(v, f, g);
  triangle(w, g, f);
  return rep;
}

}  // namespace pcost
