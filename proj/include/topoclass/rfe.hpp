#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "topoclass/logreg.hpp"
#include "topoclass/pointcloud.hpp"

namespace topoclass {

struct RfeResult {
  std::vector<std::size_t> kept;        // increasing original indices
  std::vector<std::size_t> ranking;     // per feature: 1 if kept, larger = eliminated earlier
  std::vector<std::size_t> eliminated;  // in elimination order
};

/// Standardises every column of X by its own mean and population std;
/// constant columns are only centred.
inline PointCloud standardize_columns(const PointCloud& X) {
  const std::size_t d = X.dim();
  std::vector<double> coords(X.coords());
  std::vector<double> column(X.size());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < X.size(); ++i) column[i] = X.point(i)[j];
    const auto [m, s] = mean_std(column);
    const double scale = s > 0.0 ? s : 1.0;
    for (std::size_t i = 0; i < X.size(); ++i) coords[i * d + j] = (coords[i * d + j] - m) / scale;
  }
  return PointCloud(d, std::move(coords), X.labels());
}

/// Recursive feature elimination, one feature per round. Each round fits a
/// logistic regression on the surviving (standardised) columns and drops
/// the column whose weight vector across classes has the smallest norm;
/// exact ties drop the lowest original index.
inline RfeResult rfe_select(const PointCloud& X, std::size_t n_keep, const LogRegOptions& opts = {}) {
  const std::size_t d = X.dim();
  if (n_keep < 1 || n_keep > d) throw std::invalid_argument("rfe_select: n_keep must be in [1, " + std::to_string(d) + "]");
  const PointCloud standardized = standardize_columns(X);

  std::vector<std::size_t> alive(d);
  for (std::size_t j = 0; j < d; ++j) alive[j] = j;
  RfeResult out;
  out.ranking.assign(d, 1);
  while (alive.size() > n_keep) {
    const auto model = logreg_fit(standardized.select_columns(alive), opts);
    std::size_t worst = 0;
    double worst_score = model.weights.col(0).norm();
    for (std::size_t c = 1; c < alive.size(); ++c) {
      const double score = model.weights.col(static_cast<Eigen::Index>(c)).norm();
      if (score < worst_score) {
        worst_score = score;
        worst = c;
      }
    }
    out.eliminated.push_back(alive[worst]);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  out.kept = alive;
  const std::size_t rounds = out.eliminated.size();
  for (std::size_t r = 0; r < rounds; ++r) out.ranking[out.eliminated[r]] = 1 + rounds - r;
  return out;
}

}  // namespace topoclass
