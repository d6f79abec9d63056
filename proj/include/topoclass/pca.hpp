#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "topoclass/pointcloud.hpp"

namespace topoclass {

/// Principal directions of a training cloud.
///
/// `components` holds one unit direction per row, ordered by decreasing
/// variance; `explained_variance_ratio[i]` is eigenvalue i over the sum of
/// all eigenvalues, so the ratios of a truncated model sum to less than one.
struct PcaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;
  std::vector<double> explained_variance;
  std::vector<double> explained_variance_ratio;

  std::size_t input_dim() const { return static_cast<std::size_t>(mean.size()); }
  std::size_t n_components() const { return static_cast<std::size_t>(components.rows()); }
  double cumulative_ratio() const {
    return std::accumulate(explained_variance_ratio.begin(), explained_variance_ratio.end(), 0.0);
  }
};

inline Eigen::MatrixXd to_matrix(const PointCloud& X) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(X.size()), static_cast<Eigen::Index>(X.dim()));
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.dim(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = X.point(i)[j];
  return m;
}

inline PointCloud from_matrix(const Eigen::MatrixXd& m, std::vector<std::string> labels = {}) {
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) coords.push_back(m(i, j));
  return PointCloud(static_cast<std::size_t>(m.cols()), std::move(coords), std::move(labels));
}

/// Sample covariance (divide by n - 1).
inline Eigen::MatrixXd covariance(const Eigen::MatrixXd& data, const Eigen::VectorXd& mean) {
  const Eigen::MatrixXd centered = data.rowwise() - mean.transpose();
  return (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
}

inline PcaModel pca_fit(const PointCloud& X, std::size_t n_components) {
  if (X.size() < 2) throw std::invalid_argument("pca_fit: need at least 2 points");
  const std::size_t limit = std::min(X.size() - 1, X.dim());
  if (n_components < 1 || n_components > limit)
    throw std::invalid_argument("pca_fit: n_components must be in [1, " + std::to_string(limit) + "]");

  const Eigen::MatrixXd data = to_matrix(X);
  PcaModel model;
  model.mean = data.colwise().mean().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance(data, model.mean));
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca_fit: eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
  const double total = values.sum();
  const auto d = static_cast<Eigen::Index>(X.dim());
  model.components.resize(static_cast<Eigen::Index>(n_components), d);
  for (std::size_t r = 0; r < n_components; ++r) {
    const Eigen::Index src = d - 1 - static_cast<Eigen::Index>(r);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    model.components.row(static_cast<Eigen::Index>(r)) = v.transpose();
    model.explained_variance.push_back(values(src));
    model.explained_variance_ratio.push_back(total > 0 ? values(src) / total : 0.0);
  }
  return model;
}

inline PointCloud pca_transform(const PcaModel& model, const PointCloud& X) {
  if (X.dim() != model.input_dim()) throw std::invalid_argument("pca_transform: dimension mismatch");
  const Eigen::MatrixXd centered = to_matrix(X).rowwise() - model.mean.transpose();
  return from_matrix(centered * model.components.transpose(), X.labels());
}

/// Maps projected coordinates back to the input space.
inline PointCloud pca_inverse_transform(const PcaModel& model, const PointCloud& Y) {
  if (Y.dim() != model.n_components()) throw std::invalid_argument("pca_inverse_transform: dimension mismatch");
  const Eigen::MatrixXd back = (to_matrix(Y) * model.components).rowwise() + model.mean.transpose();
  return from_matrix(back, Y.labels());
}

}  // namespace topoclass
