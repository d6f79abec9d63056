#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "topoclass/persistence.hpp"

namespace topoclass {

inline double linf_distance(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

/// Cost of sending a point to its nearest diagonal point under the L-inf norm.
inline double diagonal_cost(const PersistencePair& a) { return (a.death - a.birth) / 2.0; }

namespace detail {

/// Kuhn's augmenting-path bipartite matching on an implicit graph of
/// size k x k. Returns true if a perfect matching exists.
template <class Adjacent>
bool has_perfect_matching(std::size_t k, Adjacent&& adjacent) {
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(k, kFree);
  std::vector<std::size_t> seen(k, kFree);

  // Recursion depth is bounded by k.
  auto augment = [&](auto&& self, std::size_t left, std::size_t stamp) -> bool {
    for (std::size_t right = 0; right < k; ++right) {
      if (seen[right] == stamp || !adjacent(left, right)) continue;
      seen[right] = stamp;
      if (match_right[right] == kFree || self(self, match_right[right], stamp)) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  };
  for (std::size_t left = 0; left < k; ++left)
    if (!augment(augment, left, left)) return false;
  return true;
}

}  // namespace detail

/// Exact bottleneck distance between the finite parts of two diagrams.
///
/// Each diagram is padded with diagonal copies of the other's points so that
/// partial matchings become perfect matchings of a (n1+n2) x (n1+n2)
/// bipartite graph. The optimum is one of the finitely many candidate costs,
/// found by binary search on matching feasibility.
inline double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  if (d1.dim != d2.dim) throw std::invalid_argument("bottleneck: homological dimensions differ");
  const auto& a = d1.pairs;
  const auto& b = d2.pairs;
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  if (n1 + n2 == 0) return 0.0;

  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(diagonal_cost(p));
  for (const auto& q : b) candidates.push_back(diagonal_cost(q));
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(linf_distance(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Left: a[0..n1) then diagonal slots for b. Right: b[0..n2) then diagonal slots for a.
  const std::size_t k = n1 + n2;
  auto feasible = [&](double eps) {
    return detail::has_perfect_matching(k, [&](std::size_t l, std::size_t r) {
      if (l < n1 && r < n2) return linf_distance(a[l], b[r]) <= eps;
      if (l < n1) return r - n2 == l && diagonal_cost(a[l]) <= eps;
      if (r < n2) return l - n1 == r && diagonal_cost(b[r]) <= eps;
      return true;
    });
  };

  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is always feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace topoclass
