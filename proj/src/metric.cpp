#include "pcost/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "pcost/errors.hpp"

namespace pcost {

std::vector<double> FiniteMetricSpace::pairwise() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> m(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw InvalidMatrix("scale factor must be finite and non-negative");
  FiniteMetricSpace out = *this;
  for (auto& v : out.d_) v *= factor;
  out.diameter_ = diameter_ * factor;
  for (auto& row : out.coords_)
    for (auto& c : row) c *= factor;
  return out;
}

FiniteMetricSpace FiniteMetricSpace::with_labels(std::vector<std::string> labels) const {
  if (labels.size() != n_) throw ArityMismatch("label count differs from point count");
  FiniteMetricSpace out = *this;
  out.labels_ = std::move(labels);
  return out;
}

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw EmptyInput("distance matrix is empty");
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidMatrix("distance matrix is not square");
    for (double v : row)
      if (!std::isfinite(v)) throw InvalidMatrix("distance matrix has a non-finite entry");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (m[i][i] != 0.0) throw NonzeroDiagonal(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] < 0.0) throw NegativeDistanceError(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i][j] != m[j][i]) throw AsymmetryError(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][j] > m[i][k] + m[k][j]) throw TriangleViolation(i, j, k);

  FiniteMetricSpace s;
  s.n_ = n;
  s.d_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s.d_[i * n + j] = m[i][j];
      s.diameter_ = std::max(s.diameter_, m[i][j]);
    }
  return s;
}

FiniteMetricSpace point_cloud_space(const std::vector<std::vector<double>>& rows, Norm norm) {
  if (rows.empty()) throw EmptyInput("point cloud is empty");
  const std::size_t dim = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dim) throw ArityMismatch("point cloud rows have different arity");
    for (double v : r)
      if (!std::isfinite(v)) throw InvalidMatrix("point cloud has a non-finite coordinate");
  }
  const std::size_t n = rows.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double diff = std::abs(rows[i][k] - rows[j][k]);
        switch (norm) {
          case Norm::L2: acc += diff * diff; break;
          case Norm::L1: acc += diff; break;
          case Norm::Linf: acc = std::max(acc, diff); break;
        }
      }
      m[i][j] = m[j][i] = (norm == Norm::L2) ? std::sqrt(acc) : acc;
    }
  FiniteMetricSpace s = validate_metric(m);
  s.coords_ = rows;
  return s;
}

MetricMap::MetricMap(FiniteMetricSpace source, FiniteMetricSpace target,
                     std::vector<std::size_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size())
    throw InvalidMap("map assigns " + std::to_string(assignment_.size()) + " points, source has " +
                     std::to_string(source_.size()));
  for (auto t : assignment_)
    if (t >= target_.size()) throw InvalidMap("target index " + std::to_string(t) + " out of range");
}

std::vector<std::size_t> MetricMap::image() const {
  std::vector<std::size_t> out = assignment_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MetricMap identity_map(const FiniteMetricSpace& space) {
  std::vector<std::size_t> a(space.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
  return MetricMap(space, space, std::move(a));
}

Correspondence::Correspondence(std::size_t nx, std::size_t ny,
                               std::set<std::pair<std::size_t, std::size_t>> pairs)
    : nx_(nx), ny_(ny), pairs_(std::move(pairs)) {
  std::vector<bool> hx(nx, false), hy(ny, false);
  for (auto [x, y] : pairs_) {
    if (x >= nx || y >= ny) throw InvalidCorrespondence("pair index out of range");
    hx[x] = true;
    hy[y] = true;
  }
  if (std::find(hx.begin(), hx.end(), false) != hx.end())
    throw InvalidCorrespondence("relation does not cover the source");
  if (std::find(hy.begin(), hy.end(), false) != hy.end())
    throw InvalidCorrespondence("relation does not cover the target");
}

double map_distortion(const MetricMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      worst = std::max(worst, std::abs(y(f(i), f(j)) - x(i, j)));
  return worst;
}

double quasi_lipschitz_defect(const MetricMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) worst = std::max(worst, y(f(i), f(j)) - x(i, j));
  return worst;
}

double hausdorff_to_space(const std::vector<std::size_t>& subset, const FiniteMetricSpace& space) {
  if (subset.empty()) throw EmptySubset("Hausdorff distance of an empty subset");
  for (auto a : subset)
    if (a >= space.size()) throw InvalidMap("subset index out of range");
  double worst = 0.0;
  for (std::size_t y = 0; y < space.size(); ++y) {
    double nearest = std::numeric_limits<double>::infinity();
    for (auto a : subset) nearest = std::min(nearest, space(a, y));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double correspondence_distortion(const Correspondence& c, const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y) {
  if (c.source_size() != x.size() || c.target_size() != y.size())
    throw InvalidCorrespondence("correspondence sizes do not match the spaces");
  std::vector<std::pair<std::size_t, std::size_t>> p(c.pairs().begin(), c.pairs().end());
  double worst = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      worst = std::max(worst, std::abs(x(p[a].first, p[b].first) - y(p[a].second, p[b].second)));
  return worst;
}

Correspondence correspondence_from_map(const MetricMap& f) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < f.source().size(); ++x) pairs.emplace(x, f(x));
  const auto& y = f.target();
  for (std::size_t t = 0; t < y.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < f.source().size(); ++x)
      if (y(f(x), t) < y(f(best), t)) best = x;
    pairs.emplace(best, t);
  }
  return Correspondence(f.source().size(), y.size(), std::move(pairs));
}

namespace {

// Is there a correspondence whose pairs are pairwise within `threshold`?
// Extends a partial relation by covering the first uncovered element; any
// feasible correspondence contains a pair covering it that is compatible
// with everything already chosen, so this search is exhaustive.
class CoverSearch {
 public:
  CoverSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double threshold)
      : x_(x), y_(y), t_(threshold), cx_(x.size(), 0), cy_(y.size(), 0) {}

  bool run() { return step(); }

 private:
  bool compatible(std::size_t a, std::size_t b) const {
    for (auto [p, q] : chosen_)
      if (std::abs(x_(a, p) - y_(b, q)) > t_) return false;
    return true;
  }

  bool step() {
    auto ux = std::find(cx_.begin(), cx_.end(), 0);
    if (ux != cx_.end()) {
      std::size_t a = static_cast<std::size_t>(ux - cx_.begin());
      for (std::size_t b = 0; b < y_.size(); ++b)
        if (try_pair(a, b)) return true;
      return false;
    }
    auto uy = std::find(cy_.begin(), cy_.end(), 0);
    if (uy == cy_.end()) return true;
    std::size_t b = static_cast<std::size_t>(uy - cy_.begin());
    for (std::size_t a = 0; a < x_.size(); ++a)
      if (try_pair(a, b)) return true;
    return false;
  }

  bool try_pair(std::size_t a, std::size_t b) {
    if (!compatible(a, b)) return false;
    chosen_.emplace_back(a, b);
    ++cx_[a];
    ++cy_[b];
    bool ok = step();
    --cx_[a];
    --cy_[b];
    chosen_.pop_back();
    return ok;
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  double t_;
  std::vector<int> cx_, cy_;
  std::vector<std::pair<std::size_t, std::size_t>> chosen_;
};

}  // namespace

double gh_bruteforce(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::size_t max_pairs) {
  if (x.size() * y.size() > max_pairs)
    throw TooLarge("Gromov-Hausdorff enumeration over " + std::to_string(x.size() * y.size()) +
                   " pairs exceeds cap " + std::to_string(max_pairs));
  // The optimum distortion is one of the |d_X - d_Y| values.
  std::vector<double> cand{0.0};
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t a2 = 0; a2 < x.size(); ++a2)
      for (std::size_t b = 0; b < y.size(); ++b)
        for (std::size_t b2 = 0; b2 < y.size(); ++b2) cand.push_back(std::abs(x(a, a2) - y(b, b2)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::size_t lo = 0, hi = cand.size() - 1;  // the largest candidate is always feasible
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (CoverSearch(x, y, cand[mid]).run())
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo] / 2.0;
}

namespace {

// Calls visit(assignment) for every function {0..n-1} -> {0..m-1}.
void for_each_function(std::size_t n, std::size_t m,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> a(n, 0);
  while (true) {
    visit(a);
    std::size_t i = 0;
    while (i < n && ++a[i] == m) a[i++] = 0;
    if (i == n) return;
  }
}

double assignment_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             const std::vector<std::size_t>& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      worst = std::max(worst, std::abs(y(a[i], a[j]) - x(i, j)));
  return worst;
}

// min over S: X1 -> X2, T: Y1 -> Y2 of max{ d_inf(f2 S, T f1), dist S, dist T }.
double one_sided_map_distance(const MetricMap& f1, const MetricMap& f2) {
  const auto& x1 = f1.source();
  const auto& x2 = f2.source();
  const auto& y1 = f1.target();
  const auto& y2 = f2.target();

  std::vector<std::vector<std::size_t>> ts;
  std::vector<double> tdist;
  for_each_function(y1.size(), y2.size(), [&](const std::vector<std::size_t>& t) {
    ts.push_back(t);
    tdist.push_back(assignment_distortion(y1, y2, t));
  });

  double best = std::numeric_limits<double>::infinity();
  for_each_function(x1.size(), x2.size(), [&](const std::vector<std::size_t>& s) {
    double sd = assignment_distortion(x1, x2, s);
    if (sd >= best) return;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      double v = std::max(sd, tdist[k]);
      if (v >= best) continue;
      for (std::size_t p = 0; p < x1.size() && v < best; ++p)
        v = std::max(v, y2(f2(s[p]), ts[k][f1(p)]));
      best = std::min(best, v);
    }
  });
  return best;
}

}  // namespace

double gh_map_bruteforce(const MetricMap& f1, const MetricMap& f2, std::size_t max_points) {
  for (const auto* s : {&f1.source(), &f1.target(), &f2.source(), &f2.target()})
    if (s->size() > max_points)
      throw TooLarge("map distance enumeration needs spaces of at most " +
                     std::to_string(max_points) + " points");
  // The objective separates into the (S, T) terms and the (S', T') terms.
  return std::max(one_sided_map_distance(f1, f2), one_sided_map_distance(f2, f1));
}

}  // namespace pcost
