#pragma once

// Functional summaries of persistence diagrams sampled on a shared grid:
// tent functions, landscapes and lifetime-weighted silhouettes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "topoclass/persistence.hpp"

namespace topoclass {

class DegenerateDiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `resolution` evenly spaced samples over [t_min, t_max], endpoints included.
struct Grid {
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t resolution = 1000;

  Grid() = default;
  Grid(double lo, double hi, std::size_t res) : t_min(lo), t_max(hi), resolution(res) {
    if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("Grid: need t_max > t_min >= 0");
    if (res < 2) throw std::invalid_argument("Grid: resolution must be >= 2");
  }

  double spacing() const { return (t_max - t_min) / static_cast<double>(resolution - 1); }

  double sample(std::size_t i) const {
    if (i + 1 == resolution) return t_max;
    return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(resolution - 1);
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

struct SummaryVector {
  Grid grid;
  std::vector<double> values;
};

inline double tent(double birth, double death, double t) {
  if (death < birth) throw std::invalid_argument("tent: death precedes birth");
  return std::max(0.0, std::min(t - birth, death - t));
}

namespace detail {

/// Index range [first, last) of grid samples strictly inside (birth, death),
/// the only samples where the tent can be positive.
inline std::pair<std::size_t, std::size_t> support(const Grid& g, double birth, double death) {
  if (!(death > birth) || death <= g.t_min || birth >= g.t_max) return {0, 0};
  const double h = g.spacing();
  auto clamp = [&](double x) {
    if (x <= 0.0) return std::size_t{0};
    return std::min(g.resolution, static_cast<std::size_t>(x));
  };
  // One sample of slack either side; tent() is exact and zero outside.
  std::size_t first = clamp(std::floor((birth - g.t_min) / h));
  std::size_t last = clamp(std::ceil((death - g.t_min) / h) + 2.0);
  return {first, last};
}

}  // namespace detail

/// k-th largest tent value (k >= 1) at every grid sample, zero where fewer
/// than k tents exist.
inline SummaryVector landscape(const PersistenceDiagram& diag, std::size_t k, const Grid& grid) {
  if (k == 0) throw std::invalid_argument("landscape: k must be >= 1");
  SummaryVector out{grid, std::vector<double>(grid.resolution, 0.0)};
  if (k > diag.pairs.size()) return out;
  std::vector<double> top;  // kept sorted descending, at most k values
  for (std::size_t i = 0; i < grid.resolution; ++i) {
    const double t = grid.sample(i);
    top.clear();
    for (const auto& p : diag.pairs) {
      const double v = tent(p.birth, p.death, t);
      if (top.size() < k) {
        top.insert(std::upper_bound(top.begin(), top.end(), v, std::greater<>()), v);
      } else if (v > top.back()) {
        top.pop_back();
        top.insert(std::upper_bound(top.begin(), top.end(), v, std::greater<>()), v);
      }
    }
    out.values[i] = top.size() == k ? top.back() : 0.0;
  }
  return out;
}

/// Lifetime-weighted average of the tents of the finite pairs. Essential
/// classes are ignored. Weights are normalised before summation, in sorted
/// pair order, so zero-lifetime pairs change nothing and a single pair
/// reproduces its tent exactly.
inline SummaryVector silhouette(const PersistenceDiagram& diag, const Grid& grid) {
  std::vector<PersistencePair> pairs = diag.pairs;
  std::sort(pairs.begin(), pairs.end());
  double total = 0.0;
  for (const auto& p : pairs) {
    if (p.death < p.birth) throw std::invalid_argument("silhouette: death precedes birth");
    total += p.lifetime();
  }
  if (pairs.empty() || !(total > 0.0))
    throw DegenerateDiagramError("silhouette: diagram has no finite pair with positive lifetime");

  SummaryVector out{grid, std::vector<double>(grid.resolution, 0.0)};
  for (const auto& p : pairs) {
    const double w = p.lifetime() / total;
    if (w == 0.0) continue;
    const auto [first, last] = detail::support(grid, p.birth, p.death);
    for (std::size_t i = first; i < last; ++i) out.values[i] += w * tent(p.birth, p.death, grid.sample(i));
  }
  return out;
}

/// Shared grid [0, 1.05 * largest finite death] over a set of diagrams.
inline Grid make_grid(const std::vector<PersistenceDiagram>& diagrams, std::size_t resolution = 1000) {
  double max_death = -1.0;
  bool any = false;
  for (const auto& d : diagrams)
    for (const auto& p : d.pairs) {
      max_death = std::max(max_death, p.death);
      any = true;
    }
  if (!any) throw DegenerateDiagramError("make_grid: no finite pairs in any diagram");
  if (!(max_death > 0.0)) throw DegenerateDiagramError("make_grid: every finite death is zero");
  return Grid(0.0, 1.05 * max_death, resolution);
}

inline double l2_distance(const SummaryVector& a, const SummaryVector& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size())
    throw std::invalid_argument("l2_distance: summaries live on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace topoclass
