#pragma once

// Synthetic labelled clouds standing in for the unavailable recordings.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "topoclass/harness/rng.hpp"
#include "topoclass/pointcloud.hpp"

namespace topoclass {

inline std::string class_name(std::size_t c) { return "c" + std::to_string(c); }

/// k points in R^(k-1), pairwise `separation` apart, centred at the origin.
/// Coordinates are the standard basis of R^k expressed in the Helmert basis
/// of the sum-zero hyperplane.
inline std::vector<std::vector<double>> simplex_vertices(std::size_t k, double separation) {
  if (k < 1) throw std::invalid_argument("simplex_vertices: need k >= 1");
  const double scale = separation / std::sqrt(2.0);
  std::vector<std::vector<double>> out(k, std::vector<double>(k > 1 ? k - 1 : 0, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 1; j < k; ++j) {
      // h_j = (1,...,1 [j times], -j, 0, ...) / sqrt(j (j + 1))
      const double denom = std::sqrt(static_cast<double>(j * (j + 1)));
      double coord = 0.0;
      if (i < j)
        coord = 1.0 / denom;
      else if (i == j)
        coord = -static_cast<double>(j) / denom;
      out[i][j - 1] = scale * coord;
    }
  }
  return out;
}

struct BlobSpec {
  std::size_t n_classes = 3;
  std::size_t n_per_class = 100;
  std::size_t dim = 5;
  double separation = 10.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Isotropic Gaussian clusters centred on the vertices of a regular simplex
/// with edge `separation`. Points are emitted class by class.
inline PointCloud synth_blobs(const BlobSpec& spec) {
  if (spec.n_classes < 2) throw std::invalid_argument("synth_blobs: need >= 2 classes");
  if (spec.dim < 1) throw std::invalid_argument("synth_blobs: dim must be >= 1");
  if (spec.sigma < 0.0) throw std::invalid_argument("synth_blobs: sigma must be nonnegative");
  if (spec.n_classes > spec.dim + 1)
    throw std::invalid_argument("synth_blobs: " + std::to_string(spec.n_classes) +
                                " equidistant class means need dim >= " + std::to_string(spec.n_classes - 1));
  const auto vertices = simplex_vertices(spec.n_classes, spec.separation);
  Rng rng(derive_seed(spec.seed, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointCloud out(spec.dim);
  std::vector<double> p(spec.dim);
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    for (std::size_t i = 0; i < spec.n_per_class; ++i) {
      for (std::size_t j = 0; j < spec.dim; ++j) {
        const double mean = j < vertices[c].size() ? vertices[c][j] : 0.0;
        p[j] = mean + spec.sigma * gauss(rng);
      }
      out.push_back(p, class_name(c));
    }
  }
  return out;
}

struct EmbeddedSpec {
  std::size_t intrinsic_dim = 3;
  std::size_t ambient_dim = 20;
  std::size_t n_classes = 3;
  std::size_t n_per_class = 100;
  double noise = 2.0;        // std of the first ambient noise direction
  double decay = 0.8;        // geometric decay of noise std per direction
  double separation = 10.0;  // distance between class means
  double sigma = 1.0;        // within-class spread around each mean
  double spread = 6.0;       // std of label-independent intrinsic directions
  bool shuffle_labels = false;
  std::uint64_t seed = 0;
};

/// Labelled clouds whose class structure lives in a random
/// `intrinsic_dim`-dimensional subspace of R^ambient_dim.
///
/// Inside the subspace, class means span the first n_classes - 1 directions
/// (regular simplex plus sigma noise) and the remaining intrinsic directions
/// carry a wide, label-independent spread. The other ambient directions
/// carry Gaussian noise whose std decays geometrically, so explained
/// variance keeps growing with more components while the class-relevant
/// shape does not.
inline PointCloud synth_embedded(const EmbeddedSpec& spec) {
  if (spec.n_classes < 2) throw std::invalid_argument("synth_embedded: need >= 2 classes");
  if (!(spec.intrinsic_dim < spec.ambient_dim))
    throw std::invalid_argument("synth_embedded: intrinsic_dim must be smaller than ambient_dim");
  if (spec.intrinsic_dim + 1 < spec.n_classes)
    throw std::invalid_argument("synth_embedded: intrinsic_dim must be >= n_classes - 1");
  if (spec.noise < 0.0 || spec.sigma < 0.0 || spec.spread < 0.0)
    throw std::invalid_argument("synth_embedded: negative spread parameter");

  Rng rng(derive_seed(spec.seed, 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto D = static_cast<Eigen::Index>(spec.ambient_dim);

  Eigen::MatrixXd g(D, D);
  for (Eigen::Index i = 0; i < D; ++i)
    for (Eigen::Index j = 0; j < D; ++j) g(i, j) = gauss(rng);
  const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();

  const auto vertices = simplex_vertices(spec.n_classes, spec.separation);
  const std::size_t class_dims = spec.n_classes - 1;
  const std::size_t total = spec.n_classes * spec.n_per_class;
  std::vector<double> coords;
  coords.reserve(total * spec.ambient_dim);
  std::vector<std::string> labels;
  labels.reserve(total);
  Eigen::VectorXd local(D);
  for (std::size_t c = 0; c < spec.n_classes; ++c) {
    for (std::size_t i = 0; i < spec.n_per_class; ++i) {
      for (std::size_t j = 0; j < spec.ambient_dim; ++j) {
        double v;
        if (j < class_dims)
          v = vertices[c][j] + spec.sigma * gauss(rng);
        else if (j < spec.intrinsic_dim)
          v = spec.spread * gauss(rng);
        else
          v = spec.noise * std::pow(spec.decay, static_cast<double>(j - spec.intrinsic_dim)) * gauss(rng);
        local(static_cast<Eigen::Index>(j)) = v;
      }
      const Eigen::VectorXd x = rotation * local;
      coords.insert(coords.end(), x.data(), x.data() + D);
      labels.push_back(class_name(c));
    }
  }
  if (spec.shuffle_labels) std::shuffle(labels.begin(), labels.end(), rng);
  return PointCloud(spec.ambient_dim, std::move(coords), std::move(labels));
}

}  // namespace topoclass
