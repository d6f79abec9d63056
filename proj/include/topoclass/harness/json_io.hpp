#pragma once

// JSON encodings of diagrams, summaries, predictions, models and reports,
// plus the flat key=value / JSON configuration reader.

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "topoclass/classifier.hpp"
#include "topoclass/harness/evaluate.hpp"
#include "topoclass/pca.hpp"
#include "topoclass/persistence.hpp"
#include "topoclass/rfe.hpp"
#include "topoclass/summaries.hpp"

namespace topoclass {

using json = nlohmann::json;

inline json to_json(const PersistenceDiagram& d) {
  json pairs = json::array();
  for (const auto& p : d.pairs) pairs.push_back({p.birth, p.death});
  return {{"dim", d.dim}, {"pairs", pairs}, {"essential", d.essential}};
}

inline PersistenceDiagram diagram_from_json(const json& j) {
  PersistenceDiagram d;
  d.dim = j.at("dim").get<int>();
  if (d.dim < 0) throw std::invalid_argument("diagram JSON: negative dimension");
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("diagram JSON: each pair must be [birth, death]");
    const PersistencePair pair{p[0].get<double>(), p[1].get<double>()};
    if (pair.death < pair.birth) throw std::invalid_argument("diagram JSON: death precedes birth");
    d.pairs.push_back(pair);
  }
  if (j.contains("essential")) d.essential = j.at("essential").get<std::vector<double>>();
  return d;
}

inline json to_json(const Grid& g) {
  return {{"t_min", g.t_min}, {"t_max", g.t_max}, {"resolution", g.resolution}};
}

inline json to_json(const SummaryVector& s) { return {{"grid", to_json(s.grid)}, {"values", s.values}}; }

inline SummaryVector summary_from_json(const json& j) {
  const auto& g = j.at("grid");
  SummaryVector s{Grid(g.at("t_min").get<double>(), g.at("t_max").get<double>(), g.at("resolution").get<std::size_t>()),
                  j.at("values").get<std::vector<double>>()};
  if (s.values.size() != s.grid.resolution) throw std::invalid_argument("silhouette JSON: value count != resolution");
  return s;
}

inline json to_json(const Prediction& p) {
  json d = json::object();
  for (const auto& [k, v] : p.distances) d[k] = v;
  return {{"label", p.label}, {"distances", d}};
}

inline json to_json(const PcaModel& m) {
  json comps = json::array();
  for (Eigen::Index r = 0; r < m.components.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.components.cols()));
    for (Eigen::Index c = 0; c < m.components.cols(); ++c) row[static_cast<std::size_t>(c)] = m.components(r, c);
    comps.push_back(row);
  }
  return {{"mean", std::vector<double>(m.mean.data(), m.mean.data() + m.mean.size())},
          {"components", comps},
          {"ratios", m.explained_variance_ratio}};
}

inline json to_json(const RfeResult& r) { return {{"kept", r.kept}, {"ranking", r.ranking}}; }

inline json to_json(const EvalConfig& c) {
  return {{"classifier", to_string(c.classifier)},
          {"reduction", c.reduction.str()},
          {"band", c.band.name},
          {"test_fraction", c.test_fraction},
          {"repetitions", c.repetitions},
          {"seed", c.seed},
          {"resolution", c.resolution},
          {"outlier_k", c.outlier_k},
          {"zscore", c.zscore}};
}

inline json to_json(const EvalReport& r) {
  json j = {{"config", to_json(r.config)},
            {"classes", r.classes},
            {"chance", r.chance},
            {"accuracies", r.accuracies},
            {"mean", r.mean},
            {"std", r.std},
            {"confusion", r.confusion}};
  if (!r.explained_variance.empty()) j["explained_variance"] = r.explained_variance;
  if (!r.kept_features.empty()) j["kept_features"] = r.kept_features;
  return j;
}

inline json to_json(const SweepReport& s) {
  json j = {{"config", to_json(s.config)}, {"dims", s.dims},  {"mean", s.mean},
            {"std", s.std},                {"chance", s.chance}};
  if (!s.cumulative_variance.empty()) j["cumulative_variance"] = s.cumulative_variance;
  if (!s.kept_features.empty()) j["kept_features"] = s.kept_features;
  return j;
}

namespace detail {

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: expected boolean, got '" + v + "'");
}

inline std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace detail

/// Applies one configuration key. Unknown keys are an error.
inline void set_config_key(EvalConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "classifier")
      cfg.classifier = parse_classifier(value);
    else if (key == "reduction")
      cfg.reduction = Reduction::parse(value);
    else if (key == "band")
      cfg.band = BandSpec::named(value);
    else if (key == "test_fraction")
      cfg.test_fraction = std::stod(value);
    else if (key == "repetitions")
      cfg.repetitions = std::stoul(value);
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "resolution")
      cfg.resolution = std::stoul(value);
    else if (key == "outlier_k")
      cfg.outlier_k = std::stod(value);
    else if (key == "zscore")
      cfg.zscore = detail::parse_bool(value);
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad value '" + value + "' for key '" + key + "'");
  }
}

/// Reads either a JSON object or `key = value` lines ('#' starts a comment).
inline EvalConfig parse_config(const std::string& text, EvalConfig cfg = {}) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '{') {
    const json j = json::parse(text);
    for (const auto& [k, v] : j.items()) set_config_key(cfg, k, detail::scalar_text(v));
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = topoclass::detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
      set_config_key(cfg, topoclass::detail::trim(line.substr(0, eq)), topoclass::detail::trim(line.substr(eq + 1)));
    }
  }
  cfg.validate();
  return cfg;
}

inline EvalConfig load_config(const std::string& path, EvalConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

}  // namespace topoclass
