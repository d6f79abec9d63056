#pragma once

// Point clouds in R^d, Euclidean distance matrices and the row-level
// cleaning steps applied before classification.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>
#include <span>

namespace topoclass {

/// Raised when CSV input cannot be turned into a cloud.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite set of points in R^d, stored row-major, with optional labels.
class PointCloud {
 public:
  PointCloud() = default;

  explicit PointCloud(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("PointCloud: dimension must be >= 1");
  }

  PointCloud(std::size_t dim, std::vector<double> coords, std::vector<std::string> labels = {})
      : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
    if (dim_ == 0) throw std::invalid_argument("PointCloud: dimension must be >= 1");
    if (coords_.size() % dim_ != 0)
      throw std::invalid_argument("PointCloud: coordinate count is not a multiple of the dimension");
    if (!labels_.empty() && labels_.size() != size())
      throw std::invalid_argument("PointCloud: one label per point required");
    for (double v : coords_)
      if (!std::isfinite(v)) throw std::invalid_argument("PointCloud: non-finite coordinate");
  }

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<std::string> labels = {}) {
    if (rows.empty()) throw std::invalid_argument("PointCloud: cannot infer dimension of empty row list");
    const std::size_t d = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * d);
    for (const auto& r : rows) {
      if (r.size() != d) throw std::invalid_argument("PointCloud: rows of unequal dimension");
      coords.insert(coords.end(), r.begin(), r.end());
    }
    return PointCloud(d, std::move(coords), std::move(labels));
  }

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return size() == 0; }
  bool has_labels() const { return !labels_.empty(); }

  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& coords() const { return coords_; }

  void push_back(std::span<const double> p, std::optional<std::string> label = std::nullopt) {
    if (p.size() != dim_) throw std::invalid_argument("PointCloud: point dimension mismatch");
    for (double v : p)
      if (!std::isfinite(v)) throw std::invalid_argument("PointCloud: non-finite coordinate");
    if (label.has_value() != has_labels() && !empty())
      throw std::invalid_argument("PointCloud: mixing labelled and unlabelled points");
    coords_.insert(coords_.end(), p.begin(), p.end());
    if (label) labels_.push_back(std::move(*label));
  }

  /// Subset by row indices, in the given order.
  PointCloud select(std::span<const std::size_t> rows) const {
    PointCloud out(dim_);
    out.coords_.reserve(rows.size() * dim_);
    for (std::size_t r : rows) {
      auto p = point(r);
      out.coords_.insert(out.coords_.end(), p.begin(), p.end());
      if (has_labels()) out.labels_.push_back(labels_[r]);
    }
    return out;
  }

  /// Keep only the listed coordinates, in the given order.
  PointCloud select_columns(std::span<const std::size_t> cols) const {
    if (cols.empty()) throw std::invalid_argument("select_columns: no columns");
    for (std::size_t c : cols)
      if (c >= dim_) throw std::out_of_range("select_columns: column index out of range");
    PointCloud out(cols.size());
    out.coords_.reserve(size() * cols.size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t c : cols) out.coords_.push_back(coords_[i * dim_ + c]);
    out.labels_ = labels_;
    return out;
  }

  /// Distinct labels in order of first appearance.
  std::vector<std::string> classes() const {
    std::vector<std::string> out;
    for (const auto& l : labels_)
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
  }

  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != size())
      throw std::invalid_argument("PointCloud: one label per point required");
    labels_ = std::move(labels);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::string> labels_;
};

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

inline double norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

/// Dense symmetric n x n matrix of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

inline DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("pairwise_distances: empty cloud");
  const std::size_t n = cloud.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dm.set(i, j, euclidean(cloud.point(i), cloud.point(j)));
  return dm;
}

/// Distances from x to every point of the cloud, computed exactly as
/// pairwise_distances would.
inline std::vector<double> distances_to(const PointCloud& cloud, std::span<const double> x) {
  if (x.size() != cloud.dim()) throw std::invalid_argument("distances_to: dimension mismatch");
  std::vector<double> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) out[i] = euclidean(cloud.point(i), x);
  return out;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Mean and population standard deviation.
inline MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) return {};
  double m = 0.0;
  for (double v : xs) m += v;
  m /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double v : xs) var += (v - m) * (v - m);
  var /= static_cast<double>(xs.size());
  return {m, std::sqrt(var)};
}

/// Drops points whose norm deviates from the mean norm by more than k
/// population standard deviations (two-sided).
inline PointCloud remove_outliers(const PointCloud& cloud, double k = 2.0) {
  if (cloud.empty()) throw std::invalid_argument("remove_outliers: empty cloud");
  if (!(k > 0.0)) throw std::invalid_argument("remove_outliers: k must be positive");
  std::vector<double> norms(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) norms[i] = norm(cloud.point(i));
  const auto [mean, sd] = mean_std(norms);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (std::abs(norms[i] - mean) <= k * sd) keep.push_back(i);
  return cloud.select(keep);
}

/// Per-coordinate standardisation of `cloud` with statistics from `reference`.
inline PointCloud zscore(const PointCloud& cloud, const PointCloud& reference) {
  if (reference.empty()) throw std::invalid_argument("zscore: empty reference");
  if (reference.dim() != cloud.dim()) throw std::invalid_argument("zscore: dimension mismatch");
  const std::size_t d = cloud.dim();
  std::vector<double> mean(d), sd(d);
  std::vector<double> column(reference.size());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < reference.size(); ++i) column[i] = reference.point(i)[j];
    const auto ms = mean_std(column);
    if (!(ms.std > 0.0))
      throw std::invalid_argument("zscore: reference coordinate " + std::to_string(j) + " has zero variance");
    mean[j] = ms.mean;
    sd[j] = ms.std;
  }
  std::vector<double> coords(cloud.coords());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = (coords[i * d + j] - mean[j]) / sd[j];
  return PointCloud(d, std::move(coords), cloud.labels());
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline double parse_real(const std::string& cell, std::size_t row, std::size_t col) {
  const std::string t = trim(cell);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v))
    throw ParseError("non-numeric cell at row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                     ": '" + t + "'");
  return v;
}

}  // namespace detail

/// Parses comma-separated text. Rows are numbered from 1 in error messages,
/// counting the header line.
inline PointCloud parse_csv(std::istream& in, bool has_header, std::optional<std::size_t> label_column) {
  std::string line;
  std::size_t row = 0;
  std::size_t width = 0;
  std::vector<double> coords;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (width == 0) {
      width = cells.size();
      if (label_column && *label_column >= width)
        throw ParseError("label column " + std::to_string(*label_column) + " out of range");
      if (label_column && width < 2) throw ParseError("label column leaves no coordinates");
    } else if (cells.size() != width) {
      throw ParseError("ragged row " + std::to_string(row));
    }
    if (has_header && row == 1) continue;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && c == *label_column)
        labels.push_back(detail::trim(cells[c]));
      else
        coords.push_back(detail::parse_real(cells[c], row, c));
    }
  }
  if (width == 0) throw ParseError("no data rows");
  const std::size_t dim = width - (label_column ? 1 : 0);
  return PointCloud(dim, std::move(coords), std::move(labels));
}

inline PointCloud load_csv(const std::string& path, bool has_header = false,
                           std::optional<std::size_t> label_column = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  return parse_csv(in, has_header, label_column);
}

inline void write_csv(std::ostream& out, const PointCloud& cloud, bool with_labels = true) {
  out.precision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << p[j];
    if (with_labels && cloud.has_labels()) out << ',' << cloud.label(i);
    out << '\n';
  }
}

}  // namespace topoclass
