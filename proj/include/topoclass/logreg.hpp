#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "topoclass/pca.hpp"
#include "topoclass/pointcloud.hpp"

namespace topoclass {

struct LogRegOptions {
  double l2 = 1e-4;
  std::size_t iters = 500;
  double lr = 0.1;
  bool record_loss = false;
};

/// Multinomial logistic regression: softmax over classes x features weights.
struct LogRegModel {
  std::vector<std::string> classes;
  Eigen::MatrixXd weights;  // classes x features
  Eigen::VectorXd bias;
  LogRegOptions options;
  std::vector<double> loss_history;  // filled when options.record_loss

  Eigen::VectorXd logits(std::span<const double> x) const {
    const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
    return weights * v + bias;
  }

  std::string predict(std::span<const double> x) const {
    Eigen::Index arg = 0;
    logits(x).maxCoeff(&arg);
    return classes[static_cast<std::size_t>(arg)];
  }
};

namespace detail {

/// Row-wise softmax, shifted by the row max for stability.
inline Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& z) {
  Eigen::MatrixXd p = z.colwise() - z.rowwise().maxCoeff();
  p = p.array().exp();
  return p.array().colwise() / p.rowwise().sum().array();
}

}  // namespace detail

/// Mean cross-entropy plus l2 * ||W||^2 / 2. Bias is not penalised.
inline double logreg_loss(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::MatrixXd& W,
                          const Eigen::VectorXd& b, double l2) {
  const Eigen::MatrixXd z = (X * W.transpose()).rowwise() + b.transpose();
  const Eigen::VectorXd zmax = z.rowwise().maxCoeff();
  const Eigen::VectorXd lse = ((z.colwise() - zmax).array().exp().rowwise().sum().log()).matrix() + zmax;
  const double ce = (lse - (z.cwiseProduct(Y)).rowwise().sum()).mean();
  return ce + 0.5 * l2 * W.squaredNorm();
}

/// Full-batch gradient descent from zero weights. Deterministic.
inline LogRegModel logreg_fit(const PointCloud& X, const LogRegOptions& opts = {}) {
  if (!X.has_labels()) throw std::invalid_argument("logreg_fit: labels required");
  LogRegModel model;
  model.classes = X.classes();
  model.options = opts;
  if (model.classes.size() < 2) throw std::invalid_argument("logreg_fit: need >= 2 classes");

  const Eigen::MatrixXd data = to_matrix(X);
  const auto n = data.rows();
  const auto k = static_cast<Eigen::Index>(model.classes.size());
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& l = X.label(static_cast<std::size_t>(i));
    for (Eigen::Index c = 0; c < k; ++c)
      if (model.classes[static_cast<std::size_t>(c)] == l) Y(i, c) = 1.0;
  }

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(k, data.cols());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t it = 0; it < opts.iters; ++it) {
    if (opts.record_loss) model.loss_history.push_back(logreg_loss(data, Y, W, b, opts.l2));
    const Eigen::MatrixXd z = (data * W.transpose()).rowwise() + b.transpose();
    const Eigen::MatrixXd residual = detail::softmax_rows(z) - Y;  // n x k
    const Eigen::MatrixXd grad_w = inv_n * residual.transpose() * data + opts.l2 * W;
    const Eigen::VectorXd grad_b = inv_n * residual.colwise().sum().transpose();
    W -= opts.lr * grad_w;
    b -= opts.lr * grad_b;
  }
  if (opts.record_loss) model.loss_history.push_back(logreg_loss(data, Y, W, b, opts.l2));
  if (!W.allFinite() || !b.allFinite()) throw std::runtime_error("logreg_fit: training diverged");
  model.weights = std::move(W);
  model.bias = std::move(b);
  return model;
}

}  // namespace topoclass
