#pragma once

// Silhouette-perturbation classifier and the 1-nearest-neighbour baseline.
//
// A test point is appended to each class cloud in turn. The class whose
// dimension-0 silhouette moves least is the prediction.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "topoclass/persistence.hpp"
#include "topoclass/pointcloud.hpp"
#include "topoclass/summaries.hpp"

namespace topoclass {

struct ClassModel {
  std::string label;
  PointCloud cloud;
  H0State state;
  PersistenceDiagram diagram;
  SummaryVector reference;
};

struct TopoModel {
  std::vector<ClassModel> classes;  // declaration order
  Grid grid;
  std::size_t dim = 0;
};

struct Prediction {
  std::string label;
  std::vector<std::pair<std::string, double>> distances;  // class order

  double distance(const std::string& c) const {
    for (const auto& [k, v] : distances)
      if (k == c) return v;
    throw std::out_of_range("Prediction: unknown class '" + c + "'");
  }
};

struct TopoOptions {
  std::size_t resolution = 1000;
};

/// Splits labelled points by class, in order of first appearance.
inline std::vector<std::pair<std::string, PointCloud>> split_by_class(const PointCloud& data) {
  if (!data.has_labels()) throw std::invalid_argument("split_by_class: cloud has no labels");
  std::vector<std::pair<std::string, PointCloud>> out;
  for (const auto& c : data.classes()) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.label(i) == c) rows.push_back(i);
    out.emplace_back(c, data.select(rows));
  }
  return out;
}

inline TopoModel fit(const PointCloud& train, const TopoOptions& opts = {}) {
  auto parts = split_by_class(train);
  if (parts.size() < 2) throw std::invalid_argument("fit: need >= 2 classes, got " + std::to_string(parts.size()));
  TopoModel model;
  model.dim = train.dim();
  std::vector<PersistenceDiagram> diagrams;
  for (auto& [label, cloud] : parts) {
    if (cloud.size() < 2)
      throw std::invalid_argument("fit: class '" + label + "' has fewer than 2 points");
    auto [diagram, state] = h0_diagram(pairwise_distances(cloud));
    if (!(diagram.max_finite_death() > 0.0))
      throw DegenerateDiagramError("fit: class '" + label + "' has no positive-lifetime H0 pair");
    diagrams.push_back(diagram);
    model.classes.push_back({label, std::move(cloud), std::move(state), std::move(diagram), {}});
  }
  model.grid = make_grid(diagrams, opts.resolution);
  for (auto& c : model.classes) c.reference = silhouette(c.diagram, model.grid);
  return model;
}

/// Silhouette of class c's cloud with x appended, on the model grid.
inline SummaryVector perturbed_silhouette(const TopoModel& model, const ClassModel& c, std::span<const double> x) {
  const auto dists = distances_to(c.cloud, x);
  return silhouette(h0_add_point(c.state, dists), model.grid);
}

inline Prediction classify(const TopoModel& model, std::span<const double> x) {
  if (x.size() != model.dim)
    throw std::invalid_argument("classify: point has dimension " + std::to_string(x.size()) + ", model expects " +
                                std::to_string(model.dim));
  Prediction pred;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : model.classes) {
    const double d = l2_distance(c.reference, perturbed_silhouette(model, c, x));
    pred.distances.emplace_back(c.label, d);
    if (d < best) {
      best = d;
      pred.label = c.label;
    }
  }
  return pred;
}

/// Label of the nearest training point. Among exactly equidistant nearest
/// points the most frequent label wins; remaining ties go to the class that
/// appears first in `train`.
inline std::string nn1_classify(const PointCloud& train, std::span<const double> x) {
  if (train.empty()) throw std::invalid_argument("nn1_classify: empty training set");
  if (!train.has_labels()) throw std::invalid_argument("nn1_classify: training set has no labels");
  if (x.size() != train.dim()) throw std::invalid_argument("nn1_classify: dimension mismatch");
  const auto dists = distances_to(train, x);
  const double nearest = *std::min_element(dists.begin(), dists.end());
  std::map<std::string, std::size_t> votes;
  for (std::size_t i = 0; i < dists.size(); ++i)
    if (dists[i] == nearest) ++votes[train.label(i)];
  std::string winner;
  std::size_t most = 0;
  for (const auto& c : train.classes()) {
    auto it = votes.find(c);
    if (it != votes.end() && it->second > most) {
      most = it->second;
      winner = c;
    }
  }
  return winner;
}

}  // namespace topoclass
