#pragma once

// Repeated stratified train/test evaluation and dimension sweeps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topoclass/classifier.hpp"
#include "topoclass/harness/rng.hpp"
#include "topoclass/pca.hpp"
#include "topoclass/pointcloud.hpp"
#include "topoclass/rfe.hpp"
#include "topoclass/signal.hpp"

namespace topoclass {

enum class ClassifierKind { Topo, NN1 };

inline std::string to_string(ClassifierKind k) { return k == ClassifierKind::Topo ? "topo" : "nn1"; }

inline ClassifierKind parse_classifier(const std::string& s) {
  if (s == "topo") return ClassifierKind::Topo;
  if (s == "nn1" || s == "1nn") return ClassifierKind::NN1;
  throw std::invalid_argument("unknown classifier '" + s + "' (expected topo or nn1)");
}

struct Reduction {
  enum class Kind { Raw, Pca, Rfe };
  Kind kind = Kind::Raw;
  std::size_t k = 0;

  static Reduction raw() { return {}; }
  static Reduction pca(std::size_t k) { return {Kind::Pca, k}; }
  static Reduction rfe(std::size_t k) { return {Kind::Rfe, k}; }

  std::string str() const {
    switch (kind) {
      case Kind::Pca: return "pca(" + std::to_string(k) + ")";
      case Kind::Rfe: return "rfe(" + std::to_string(k) + ")";
      default: return "raw";
    }
  }

  /// Accepts "raw", "pca(4)", "pca:4", "rfe(3)", "rfe:3".
  static Reduction parse(const std::string& s) {
    if (s == "raw" || s == "none") return raw();
    const auto open = s.find_first_of("(:");
    if (open == std::string::npos) throw std::invalid_argument("bad reduction '" + s + "'");
    const std::string name = s.substr(0, open);
    std::string arg = s.substr(open + 1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
    std::size_t used = 0;
    long long k = -1;
    try {
      k = std::stoll(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || arg.empty() || k < 1) throw std::invalid_argument("bad reduction size in '" + s + "'");
    if (name == "pca") return pca(static_cast<std::size_t>(k));
    if (name == "rfe") return rfe(static_cast<std::size_t>(k));
    throw std::invalid_argument("unknown reduction '" + name + "'");
  }
};

struct EvalConfig {
  ClassifierKind classifier = ClassifierKind::Topo;
  Reduction reduction;
  BandSpec band;
  double test_fraction = 0.2;
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
  std::size_t resolution = 1000;  // silhouette samples
  double outlier_k = 0.0;         // > 0 removes norm outliers before splitting
  bool zscore = false;            // standardise with training statistics

  void validate() const {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw std::invalid_argument("EvalConfig: test_fraction must be in (0, 1)");
    if (repetitions < 1) throw std::invalid_argument("EvalConfig: repetitions must be >= 1");
    if (resolution < 2) throw std::invalid_argument("EvalConfig: resolution must be >= 2");
    if (outlier_k < 0.0) throw std::invalid_argument("EvalConfig: outlier_k must be >= 0");
  }
};

struct EvalReport {
  EvalConfig config;
  std::vector<std::string> classes;
  std::vector<double> accuracies;
  double mean = 0.0;
  double std = 0.0;
  double chance = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted], summed over repetitions
  std::vector<double> explained_variance;           // cumulative ratio per repetition (pca)
  std::vector<std::vector<std::size_t>> kept_features;  // per repetition (rfe)
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle; round(test_fraction * n_c) points of each class go to
/// the test side. Indices are returned in increasing order.
inline Split stratified_split(const PointCloud& data, double test_fraction, Rng& rng) {
  Split s;
  for (const auto& c : data.classes()) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.label(i) == c) rows.push_back(i);
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    if (rows.size() < n_test + 2)
      throw std::invalid_argument("stratified_split: class '" + c + "' leaves fewer than 2 training points");
    s.test.insert(s.test.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.train.insert(s.train.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

inline EvalReport evaluate(const PointCloud& input, const EvalConfig& cfg) {
  cfg.validate();
  if (!input.has_labels()) throw std::invalid_argument("evaluate: data must be labelled");
  const PointCloud data = cfg.outlier_k > 0.0 ? remove_outliers(input, cfg.outlier_k) : input;

  EvalReport report;
  report.config = cfg;
  report.classes = data.classes();
  if (report.classes.size() < 2) throw std::invalid_argument("evaluate: need >= 2 classes");
  const std::size_t n_classes = report.classes.size();
  report.chance = 1.0 / static_cast<double>(n_classes);
  report.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
  auto class_index = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(report.classes.begin(), report.classes.end(), l) - report.classes.begin());
  };

  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    Rng rng(derive_seed(cfg.seed, 1000 + rep));
    const Split split = stratified_split(data, cfg.test_fraction, rng);
    PointCloud train = data.select(split.train);
    PointCloud test = data.select(split.test);
    if (cfg.zscore) {
      test = zscore(test, train);
      train = zscore(train, train);
    }
    switch (cfg.reduction.kind) {
      case Reduction::Kind::Pca: {
        const auto model = pca_fit(train, cfg.reduction.k);
        train = pca_transform(model, train);
        test = pca_transform(model, test);
        report.explained_variance.push_back(model.cumulative_ratio());
        break;
      }
      case Reduction::Kind::Rfe: {
        const auto sel = rfe_select(train, cfg.reduction.k);
        train = train.select_columns(sel.kept);
        test = test.select_columns(sel.kept);
        report.kept_features.push_back(sel.kept);
        break;
      }
      case Reduction::Kind::Raw: break;
    }

    std::size_t correct = 0;
    std::optional<TopoModel> model;
    if (cfg.classifier == ClassifierKind::Topo) model = fit(train, {cfg.resolution});
    for (std::size_t i = 0; i < test.size(); ++i) {
      const std::string predicted =
          model ? classify(*model, test.point(i)).label : nn1_classify(train, test.point(i));
      const std::size_t t = class_index(test.label(i));
      const std::size_t p = class_index(predicted);
      ++report.confusion[t][p];
      if (t == p) ++correct;
    }
    report.accuracies.push_back(test.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.size()));
  }
  const auto ms = mean_std(report.accuracies);
  report.mean = ms.mean;
  report.std = ms.std;
  return report;
}

struct SweepReport {
  EvalConfig config;  // reduction.k varies per entry
  std::vector<std::size_t> dims;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> cumulative_variance;  // pca: mean over repetitions
  std::vector<std::vector<std::vector<std::size_t>>> kept_features;  // rfe: per dim, per repetition
  double chance = 0.0;
};

inline std::vector<std::size_t> default_sweep_dims() { return {2, 3, 4, 5, 6, 7, 8, 9, 10}; }

/// Runs evaluate once per target dimension with the reduction kind of
/// `cfg` (pca or rfe). Every dimension reuses the same seed, hence the same
/// splits.
inline SweepReport sweep_dimensions(const PointCloud& data, const EvalConfig& cfg,
                                    const std::vector<std::size_t>& dims = default_sweep_dims()) {
  if (cfg.reduction.kind == Reduction::Kind::Raw)
    throw std::invalid_argument("sweep_dimensions: reduction must be pca or rfe");
  SweepReport out;
  out.config = cfg;
  out.dims = dims;
  for (std::size_t k : dims) {
    if (k < 1 || k > data.dim())
      throw std::invalid_argument("sweep_dimensions: dimension " + std::to_string(k) + " outside [1, " +
                                  std::to_string(data.dim()) + "]");
    EvalConfig c = cfg;
    c.reduction.k = k;
    const auto r = evaluate(data, c);
    out.mean.push_back(r.mean);
    out.std.push_back(r.std);
    out.chance = r.chance;
    if (cfg.reduction.kind == Reduction::Kind::Pca)
      out.cumulative_variance.push_back(mean_std(r.explained_variance).mean);
    else
      out.kept_features.push_back(r.kept_features);
  }
  return out;
}

/// Average ranks (1-based) with ties sharing their mean rank.
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t q = i; q <= j; ++q) ranks[order[q]] = r;
    i = j + 1;
  }
  return ranks;
}

/// Spearman rank correlation; 0 when either side is constant.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need two equal-length samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const auto mx = mean_std(rx), my = mean_std(ry);
  if (mx.std == 0.0 || my.std == 0.0) return 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) cov += (rx[i] - mx.mean) * (ry[i] - my.mean);
  cov /= static_cast<double>(rx.size());
  return cov / (mx.std * my.std);
}

}  // namespace topoclass
