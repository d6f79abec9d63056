#pragma once

// Dimension-0 persistence of Vietoris-Rips filtrations.
//
// A k-simplex enters the filtration at t when all of its pairwise distances
// are <= 2t, so an edge of length L appears at t = L / 2. In dimension 0
// every point is born at 0 and the deaths are the minimum spanning tree
// edge lengths halved.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topoclass/pointcloud.hpp"
#include "topoclass/union_find.hpp"

namespace topoclass {

struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;

  double lifetime() const { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

/// Finite pairs plus essential (never dying) classes of one homological dimension.
struct PersistenceDiagram {
  int dim = 0;
  std::vector<PersistencePair> pairs;
  std::vector<double> essential;

  std::size_t size() const { return pairs.size(); }

  /// Copy with pairs and essential births sorted, for multiset comparison.
  PersistenceDiagram canonical() const {
    PersistenceDiagram out = *this;
    std::sort(out.pairs.begin(), out.pairs.end());
    std::sort(out.essential.begin(), out.essential.end());
    return out;
  }

  double max_finite_death() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& p : pairs) m = std::max(m, p.death);
    return m;
  }
};

inline bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.dim != b.dim) return false;
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return ca.pairs == cb.pairs && ca.essential == cb.essential;
}

struct WeightedEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  double length = 0.0;
};

/// Orders edges by (length, smaller endpoint, larger endpoint).
inline bool edge_less(const WeightedEdge& a, const WeightedEdge& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

inline WeightedEdge make_edge(std::size_t a, std::size_t b, double length) {
  return a < b ? WeightedEdge{a, b, length} : WeightedEdge{b, a, length};
}

/// Minimum spanning tree of a cloud, kept so that one extra point can be
/// added without touching the full distance matrix again.
class H0State {
 public:
  H0State() = default;

  std::size_t points() const { return n_; }
  /// MST edges in merge order.
  const std::vector<WeightedEdge>& mst() const { return mst_; }

 private:
  friend std::pair<PersistenceDiagram, H0State> h0_diagram(const DistanceMatrix&);
  friend PersistenceDiagram h0_add_point(const H0State&, std::span<const double>);

  std::size_t n_ = 0;
  std::vector<WeightedEdge> mst_;
};

namespace detail {

/// Kruskal over an edge list already sorted by edge_less. Returns the
/// accepted edges; each one is a merge at length / 2.
inline std::vector<WeightedEdge> kruskal_sorted(std::size_t n, std::span<const WeightedEdge> sorted) {
  UnionFind uf(n);
  std::vector<WeightedEdge> tree;
  tree.reserve(n ? n - 1 : 0);
  for (const auto& e : sorted) {
    if (uf.unite(e.u, e.v)) {
      tree.push_back(e);
      if (tree.size() + 1 == n) break;
    }
  }
  return tree;
}

inline PersistenceDiagram diagram_from_merges(std::span<const WeightedEdge> merges) {
  PersistenceDiagram d;
  d.dim = 0;
  d.pairs.reserve(merges.size());
  for (const auto& e : merges) d.pairs.push_back({0.0, e.length / 2.0});
  d.essential.push_back(0.0);
  return d;
}

}  // namespace detail

/// Dimension-0 diagram of the Rips filtration of `dm`, with the MST state
/// needed by h0_add_point. Prim's algorithm on the dense matrix, O(n^2).
inline std::pair<PersistenceDiagram, H0State> h0_diagram(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  if (n == 0) throw std::invalid_argument("h0_diagram: empty distance matrix");

  std::vector<WeightedEdge> tree;
  tree.reserve(n - 1);
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = dm(current, j);
      if (d < best[j]) {
        best[j] = d;
        from[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    in_tree[next] = 1;
    tree.push_back(make_edge(from[next], next, best[next]));
    current = next;
  }
  std::sort(tree.begin(), tree.end(), edge_less);

  H0State state;
  state.n_ = n;
  state.mst_ = std::move(tree);
  return {detail::diagram_from_merges(state.mst_), std::move(state)};
}

/// Diagram of the cloud extended by one point, given that point's distances
/// to every existing point. The extended MST is contained in the old MST
/// plus the n new edges, so only those 2n - 1 edges are sorted.
inline PersistenceDiagram h0_add_point(const H0State& state, std::span<const double> dists_to_new) {
  const std::size_t n = state.n_;
  if (dists_to_new.size() != n)
    throw std::invalid_argument("h0_add_point: expected " + std::to_string(n) + " distances, got " +
                                std::to_string(dists_to_new.size()));
  std::vector<WeightedEdge> fresh;
  fresh.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(dists_to_new[i] >= 0.0)) throw std::invalid_argument("h0_add_point: negative or NaN distance");
    fresh.push_back({i, n, dists_to_new[i]});
  }
  std::sort(fresh.begin(), fresh.end(), edge_less);
  std::vector<WeightedEdge> edges;
  edges.reserve(state.mst_.size() + fresh.size());
  std::merge(state.mst_.begin(), state.mst_.end(), fresh.begin(), fresh.end(), std::back_inserter(edges),
             edge_less);
  const auto tree = detail::kruskal_sorted(n + 1, edges);
  return detail::diagram_from_merges(tree);
}

inline PersistenceDiagram h0_diagram_of(const PointCloud& cloud) { return h0_diagram(pairwise_distances(cloud)).first; }

}  // namespace topoclass
