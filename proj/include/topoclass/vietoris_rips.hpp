#pragma once

// Rips persistence in dimensions 0..2 by column reduction of the full
// boundary matrix over F_p. Quadratic-to-cubic in the simplex count, so it
// is capped at a few dozen points and serves as a cross-check for the
// dimension-0 fast path.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <limits>
#include <map>
#include <vector>

#include "topoclass/persistence.hpp"
#include "topoclass/pointcloud.hpp"

namespace topoclass {

struct RipsOptions {
  int max_dim = 1;
  double max_scale = std::numeric_limits<double>::infinity();
  std::uint32_t field_p = 11;
  std::size_t max_points = 64;
};

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace detail {

struct Simplex {
  std::vector<std::uint32_t> vertices;  // increasing
  double value = 0.0;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

inline bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

struct Entry {
  std::size_t row;
  std::uint32_t coeff;
};
using Column = std::vector<Entry>;  // sorted by row, nonzero coefficients

/// col += factor * other (mod p)
inline void axpy(Column& col, const Column& other, std::uint32_t factor, std::uint32_t p) {
  Column out;
  out.reserve(col.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < col.size() || j < other.size()) {
    if (j == other.size() || (i < col.size() && col[i].row < other[j].row)) {
      out.push_back(col[i++]);
    } else if (i == col.size() || other[j].row < col[i].row) {
      out.push_back({other[j].row, static_cast<std::uint32_t>(std::uint64_t(factor) * other[j].coeff % p)});
      ++j;
    } else {
      const auto c = static_cast<std::uint32_t>((col[i].coeff + std::uint64_t(factor) * other[j].coeff) % p);
      if (c) out.push_back({col[i].row, c});
      ++i;
      ++j;
    }
  }
  col = std::move(out);
}

}  // namespace detail

/// Diagrams for dimensions 0..opts.max_dim of the Rips filtration truncated
/// at opts.max_scale. Pairs with zero lifetime are kept in dimension 0 (they
/// are coincident points) and dropped in higher dimensions.
inline std::vector<PersistenceDiagram> vr_diagrams(const DistanceMatrix& dm, const RipsOptions& opts = {}) {
  const std::size_t n = dm.size();
  if (n == 0) throw std::invalid_argument("vr_diagrams: empty distance matrix");
  if (n > opts.max_points)
    throw std::invalid_argument("vr_diagrams: " + std::to_string(n) + " points exceeds the cap of " +
                                std::to_string(opts.max_points));
  if (opts.max_dim < 0 || opts.max_dim > 2) throw std::invalid_argument("vr_diagrams: max_dim must be in 0..2");
  if (!is_prime(opts.field_p)) throw std::invalid_argument("vr_diagrams: field characteristic must be prime");
  const std::uint32_t p = opts.field_p;

  // Enumerate simplices up to dimension max_dim + 1 that enter by max_scale.
  std::vector<detail::Simplex> simplices;
  for (std::uint32_t i = 0; i < n; ++i) simplices.push_back({{i}, 0.0});
  const int top = opts.max_dim + 1;
  std::vector<std::vector<std::uint32_t>> frontier;
  for (std::uint32_t i = 0; i < n; ++i) frontier.push_back({i});
  std::vector<double> frontier_value(frontier.size(), 0.0);
  for (int k = 1; k <= top; ++k) {
    std::vector<std::vector<std::uint32_t>> next;
    std::vector<double> next_value;
    for (std::size_t s = 0; s < frontier.size(); ++s) {
      const auto& verts = frontier[s];
      for (std::uint32_t w = verts.back() + 1; w < n; ++w) {
        double value = frontier_value[s];
        for (auto v : verts) value = std::max(value, dm(v, w) / 2.0);
        if (value > opts.max_scale) continue;
        auto grown = verts;
        grown.push_back(w);
        simplices.push_back({grown, value});
        next.push_back(std::move(grown));
        next_value.push_back(value);
      }
    }
    frontier = std::move(next);
    frontier_value = std::move(next_value);
  }
  std::sort(simplices.begin(), simplices.end(), detail::filtration_less);

  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < simplices.size(); ++i) index.emplace(simplices[i].vertices, i);

  const std::size_t m = simplices.size();
  std::vector<detail::Column> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& verts = simplices[j].vertices;
    if (verts.size() < 2) continue;
    auto& col = columns[j];
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      std::vector<std::uint32_t> face;
      face.reserve(verts.size() - 1);
      for (std::size_t q = 0; q < verts.size(); ++q)
        if (q != drop) face.push_back(verts[q]);
      const std::uint32_t sign = (drop % 2 == 0) ? 1 : p - 1;
      col.push_back({index.at(face), sign});
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  }

  // Reduce by decreasing dimension so that columns killed as pivots of
  // higher-dimensional columns can be cleared without reduction.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_owner(m, kNone);  // row -> column with that pivot
  std::vector<char> cleared(m, 0);
  for (int k = top; k >= 1; --k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (simplices[j].dim() != k) continue;
      if (cleared[j]) {
        columns[j].clear();
        continue;
      }
      auto& col = columns[j];
      while (!col.empty()) {
        const std::size_t low = col.back().row;
        const std::size_t owner = pivot_owner[low];
        if (owner == kNone) break;
        const auto& other = columns[owner];
        const std::uint32_t factor =
            static_cast<std::uint32_t>(std::uint64_t(p - col.back().coeff) * detail::mod_inverse(other.back().coeff, p) % p);
        detail::axpy(col, other, factor, p);
      }
      if (!col.empty()) {
        pivot_owner[col.back().row] = j;
        cleared[col.back().row] = 1;
      }
    }
  }

  std::vector<PersistenceDiagram> out(static_cast<std::size_t>(opts.max_dim) + 1);
  for (int k = 0; k <= opts.max_dim; ++k) out[static_cast<std::size_t>(k)].dim = k;
  for (std::size_t i = 0; i < m; ++i) {
    const int k = simplices[i].dim();
    if (k > opts.max_dim) continue;
    if (!columns[i].empty()) continue;  // negative simplex
    auto& diag = out[static_cast<std::size_t>(k)];
    const double birth = simplices[i].value;
    if (pivot_owner[i] == kNone) {
      diag.essential.push_back(birth);
    } else {
      const double death = simplices[pivot_owner[i]].value;
      if (k == 0 || death > birth) diag.pairs.push_back({birth, death});
    }
  }
  return out;
}

}  // namespace topoclass
