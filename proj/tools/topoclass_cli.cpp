#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "topoclass/topoclass.hpp"

using namespace topoclass;

namespace {

struct Common {
  std::string output;  // empty writes to stdout
  std::uint64_t seed = 0;
  std::optional<std::size_t> label_column;
  bool header = false;
};

void add_common(CLI::App* app, Common& c, bool with_labels = true) {
  app->add_option("-o,--output", c.output, "output file (default stdout)");
  app->add_option("--seed", c.seed, "random seed");
  if (with_labels) {
    app->add_option("--label-column", c.label_column, "0-based column holding class labels");
    app->add_flag("--header", c.header, "skip the first CSV line");
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw std::runtime_error("cannot write '" + c.output + "'");
  out << text << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  return json::parse(in);
}

PersistenceDiagram pick_diagram(const json& j, int dim) {
  if (!j.contains("diagrams")) return diagram_from_json(j);
  for (const auto& d : j.at("diagrams"))
    if (d.at("dim").get<int>() == dim) return diagram_from_json(d);
  throw std::invalid_argument("no diagram of dimension " + std::to_string(dim));
}

EvalConfig build_config(const std::string& config_path, const std::vector<std::string>& sets,
                        std::optional<std::uint64_t> seed) {
  EvalConfig cfg = config_path.empty() ? EvalConfig{} : load_config(config_path);
  for (const auto& s : sets) cfg = parse_config(s, cfg);
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

std::vector<std::vector<double>> read_columns(const std::string& path, bool header) {
  const auto cloud = load_csv(path, header);
  std::vector<std::vector<double>> cols(cloud.dim());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = 0; j < cloud.dim(); ++j) cols[j].push_back(cloud.point(i)[j]);
  return cols;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topoclass: persistence-based point-cloud classification"};
  app.require_subcommand(1);

  // persist
  Common persist_c;
  std::string persist_in, persist_svg;
  int max_dim = 0;
  double max_scale = std::numeric_limits<double>::infinity();
  std::uint32_t field_p = 11;
  auto* persist = app.add_subcommand("persist", "persistence diagrams of a point cloud");
  persist->add_option("input", persist_in, "CSV point cloud")->required();
  persist->add_option("--max-dim", max_dim, "highest homology dimension (0..2)");
  persist->add_option("--max-scale", max_scale, "largest filtration value for dimensions >= 1");
  persist->add_option("--field", field_p, "prime field for the reduction");
  persist->add_option("--svg", persist_svg, "also write the dimension-0 diagram as SVG");
  add_common(persist, persist_c);

  // silhouette
  Common sil_c;
  std::string sil_in, sil_svg;
  int sil_dim = 0;
  std::size_t sil_res = 1000;
  auto* sil = app.add_subcommand("silhouette", "lifetime-weighted silhouette of a diagram");
  sil->add_option("input", sil_in, "diagram JSON")->required();
  sil->add_option("--dim", sil_dim, "diagram dimension to use");
  sil->add_option("--resolution", sil_res, "grid samples");
  sil->add_option("--svg", sil_svg, "also write the curve as SVG");
  add_common(sil, sil_c, false);

  // classify
  Common cls_c;
  std::string train_in, test_in, method = "topo";
  std::optional<std::size_t> test_label_column;
  std::size_t cls_res = 1000;
  auto* cls = app.add_subcommand("classify", "classify test points against labelled training data");
  cls->add_option("train", train_in, "labelled training CSV")->required();
  cls->add_option("test", test_in, "test CSV")->required();
  cls->add_option("--method", method, "topo or nn1")->check(CLI::IsMember({"topo", "nn1"}));
  cls->add_option("--test-label-column", test_label_column, "label column of the test CSV (default: same as training)");
  cls->add_option("--resolution", cls_res, "silhouette grid samples");
  add_common(cls, cls_c);

  // eval and sweep share config handling
  Common eval_c;
  std::string eval_in, eval_config;
  std::vector<std::string> eval_sets;
  auto* eval = app.add_subcommand("eval", "repeated stratified train/test evaluation");
  eval->add_option("input", eval_in, "labelled CSV")->required();
  eval->add_option("--config", eval_config, "JSON or key=value config file");
  eval->add_option("--set", eval_sets, "override a config key, key=value");
  add_common(eval, eval_c);

  Common sweep_c;
  std::string sweep_in, sweep_config, sweep_svg, sweep_reduction = "pca", sweep_classifier;
  std::vector<std::string> sweep_sets;
  std::vector<std::size_t> sweep_dims;
  auto* sweep = app.add_subcommand("sweep", "accuracy as a function of reduced dimension");
  sweep->add_option("input", sweep_in, "labelled CSV")->required();
  sweep->add_option("--reduction", sweep_reduction, "pca or rfe")->check(CLI::IsMember({"pca", "rfe"}));
  sweep->add_option("--classifier", sweep_classifier, "topo or nn1");
  sweep->add_option("--dims", sweep_dims, "dimensions to try (default 2..10)")->delimiter(',');
  sweep->add_option("--config", sweep_config, "JSON or key=value config file");
  sweep->add_option("--set", sweep_sets, "override a config key, key=value");
  sweep->add_option("--svg", sweep_svg, "also write the sweep plot as SVG");
  add_common(sweep, sweep_c);

  // synth
  Common synth_c;
  std::string kind = "blobs";
  BlobSpec blobs;
  EmbeddedSpec embedded;
  std::size_t classes = 3, per_class = 100, dim = 5, intrinsic = 3;
  double separation = 10, sigma = 1, noise = 2;
  auto* synth = app.add_subcommand("synth", "write a synthetic labelled data set as CSV");
  synth->add_option("--kind", kind, "blobs or embedded")->check(CLI::IsMember({"blobs", "embedded"}));
  synth->add_option("--classes", classes);
  synth->add_option("--per-class", per_class);
  synth->add_option("--dim", dim, "ambient dimension");
  synth->add_option("--intrinsic", intrinsic, "intrinsic dimension (embedded)");
  synth->add_option("--separation", separation);
  synth->add_option("--sigma", sigma);
  synth->add_option("--noise", noise, "ambient noise std (embedded)");
  add_common(synth, synth_c, false);

  // filter
  Common filt_c;
  std::string filt_in, band = "none";
  double fs = 0, notch_hz = 0;
  int order = 4;
  std::optional<double> lo, hi;
  bool mean_abs = false;
  auto* filt = app.add_subcommand("filter", "notch and band-pass filter time series columns");
  filt->add_option("input", filt_in, "CSV, one channel per column")->required();
  filt->add_option("--fs", fs, "sampling rate in Hz")->required();
  filt->add_option("--band", band, "none, alpha, beta or gamma");
  filt->add_option("--lo", lo, "custom lower band edge in Hz");
  filt->add_option("--hi", hi, "custom upper band edge in Hz");
  filt->add_option("--notch", notch_hz, "notch frequency in Hz (0 disables)");
  filt->add_option("--order", order, "Butterworth order");
  filt->add_flag("--mean-abs", mean_abs, "print the mean absolute value per channel as JSON");
  add_common(filt, filt_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*persist) {
      const auto cloud = load_csv(persist_in, persist_c.header, persist_c.label_column);
      const auto dm = pairwise_distances(cloud);
      std::vector<PersistenceDiagram> diagrams;
      if (max_dim == 0)
        diagrams.push_back(h0_diagram(dm).first);
      else
        diagrams = vr_diagrams(dm, {.max_dim = max_dim, .max_scale = max_scale, .field_p = field_p});
      json out = {{"diagrams", json::array()}};
      for (const auto& d : diagrams) out["diagrams"].push_back(to_json(d));
      emit(persist_c, out.dump(2));
      if (!persist_svg.empty()) plot_svg(diagrams.front(), persist_svg);
    } else if (*sil) {
      const auto d = pick_diagram(read_json(sil_in), sil_dim);
      const auto s = silhouette(d, make_grid({d}, sil_res));
      emit(sil_c, to_json(s).dump(2));
      if (!sil_svg.empty()) plot_svg(std::vector<std::pair<std::string, SummaryVector>>{{"diagram", s}}, sil_svg);
    } else if (*cls) {
      if (!cls_c.label_column) throw std::invalid_argument("classify: --label-column is required");
      const auto train = load_csv(train_in, cls_c.header, cls_c.label_column);
      const auto test = load_csv(test_in, cls_c.header, test_label_column ? test_label_column : cls_c.label_column);
      json preds = json::array();
      std::size_t correct = 0;
      std::optional<TopoModel> model;
      if (method == "topo") model = fit(train, {cls_res});
      for (std::size_t i = 0; i < test.size(); ++i) {
        json p = model ? to_json(classify(*model, test.point(i))) : json{{"label", nn1_classify(train, test.point(i))}};
        if (test.has_labels() && p.at("label") == test.label(i)) ++correct;
        preds.push_back(std::move(p));
      }
      json out = {{"method", method}, {"predictions", preds}};
      if (test.has_labels() && !test.empty())
        out["accuracy"] = static_cast<double>(correct) / static_cast<double>(test.size());
      emit(cls_c, out.dump(2));
    } else if (*eval) {
      const auto data = load_csv(eval_in, eval_c.header, eval_c.label_column);
      const auto seed = eval->count("--seed") ? std::optional(eval_c.seed) : std::nullopt;
      emit(eval_c, to_json(evaluate(data, build_config(eval_config, eval_sets, seed))).dump(2));
    } else if (*sweep) {
      const auto data = load_csv(sweep_in, sweep_c.header, sweep_c.label_column);
      const auto seed = sweep->count("--seed") ? std::optional(sweep_c.seed) : std::nullopt;
      auto cfg = build_config(sweep_config, sweep_sets, seed);
      cfg.reduction = Reduction::parse(sweep_reduction + "(1)");
      if (!sweep_classifier.empty()) cfg.classifier = parse_classifier(sweep_classifier);
      const auto report = sweep_dimensions(data, cfg, sweep_dims.empty() ? default_sweep_dims() : sweep_dims);
      emit(sweep_c, to_json(report).dump(2));
      if (!sweep_svg.empty()) plot_svg(report, sweep_svg);
    } else if (*synth) {
      PointCloud data(1);
      if (kind == "blobs")
        data = synth_blobs({.n_classes = classes, .n_per_class = per_class, .dim = dim, .separation = separation,
                            .sigma = sigma, .seed = synth_c.seed});
      else
        data = synth_embedded({.intrinsic_dim = intrinsic, .ambient_dim = dim, .n_classes = classes,
                               .n_per_class = per_class, .noise = noise, .separation = separation, .sigma = sigma,
                               .seed = synth_c.seed});
      std::ostringstream out;
      write_csv(out, data);
      std::string text = out.str();
      text.pop_back();
      emit(synth_c, text);
    } else if (*filt) {
      auto channels = read_columns(filt_in, filt_c.header);
      BandSpec spec = BandSpec::named(band);
      if (lo || hi) {
        if (!lo || !hi) throw std::invalid_argument("filter: --lo and --hi go together");
        spec = {"custom", *lo, *hi};
      }
      std::vector<TimeSeries> series;
      for (auto& c : channels) {
        TimeSeries x{std::move(c), fs};
        if (notch_hz > 0) x = notch(x, notch_hz, order);
        if (spec.name != "none") x = butterworth_bandpass(x, spec.lo, spec.hi, order);
        series.push_back(std::move(x));
      }
      if (mean_abs) {
        json out = json::array();
        for (const auto& s : series) out.push_back(mean_abs_feature(s));
        emit(filt_c, json{{"band", spec.name}, {"mean_abs", out}}.dump(2));
      } else {
        std::ostringstream out;
        out.precision(17);
        const std::size_t n = series.empty() ? 0 : series.front().samples.size();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t c = 0; c < series.size(); ++c) out << (c ? "," : "") << series[c].samples[i];
          if (i + 1 < n) out << '\n';
        }
        emit(filt_c, out.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
