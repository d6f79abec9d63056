#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "topoclass/harness/evaluate.hpp"
#include "topoclass/harness/json_io.hpp"
#include "topoclass/harness/svg.hpp"
#include "topoclass/harness/synth.hpp"

using namespace topoclass;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(SynthBlobs, MeansOnSimplex) {
  const auto v = simplex_vertices(3, 10.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(euclidean(v[i], v[j]), 10.0, 1e-9);
  const auto v6 = simplex_vertices(6, 2.5);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) EXPECT_NEAR(euclidean(v6[i], v6[j]), 2.5, 1e-9);
}

TEST(SynthBlobs, ZeroSigmaAndDeterminism) {
  const BlobSpec spec{.n_classes = 3, .n_per_class = 5, .dim = 5, .separation = 10, .sigma = 0, .seed = 1};
  const auto c = synth_blobs(spec);
  ASSERT_EQ(c.size(), 15u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(euclidean(c.point(0), c.point(i)), 0.0);
  EXPECT_NEAR(euclidean(c.point(0), c.point(5)), 10.0, 1e-9);

  const BlobSpec noisy{.n_classes = 3, .n_per_class = 20, .dim = 4, .separation = 3, .sigma = 1, .seed = 9};
  EXPECT_EQ(synth_blobs(noisy).coords(), synth_blobs(noisy).coords());
  EXPECT_THROW(synth_blobs({.n_classes = 4, .n_per_class = 5, .dim = 2}), std::invalid_argument);
}

TEST(SynthEmbedded, VarianceSpectrum) {
  const auto data = synth_embedded({.intrinsic_dim = 3, .ambient_dim = 20, .n_per_class = 150, .seed = 2});
  const auto m = pca_fit(data, 10);
  double cum = 0, prev = 0;
  for (std::size_t k = 0; k < 10; ++k) {
    cum += m.explained_variance_ratio[k];
    EXPECT_GT(cum, prev);
    prev = cum;
  }
  EXPECT_THROW(synth_embedded({.intrinsic_dim = 5, .ambient_dim = 5}), std::invalid_argument);
}

TEST(SynthEmbedded, NoNoiseStaysInSubspace) {
  const auto data = synth_embedded({.intrinsic_dim = 3, .ambient_dim = 8, .n_per_class = 50, .noise = 0.0, .seed = 4});
  EXPECT_NEAR(pca_fit(data, 3).cumulative_ratio(), 1.0, 1e-9);
}

TEST(StratifiedSplit, ExactPerClassCounts) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 100, .dim = 3, .seed = 1});
  Rng rng(5);
  const auto s = stratified_split(data, 0.2, rng);
  EXPECT_EQ(s.test.size(), 60u);
  EXPECT_EQ(s.train.size(), 240u);
  for (const auto& c : data.classes()) {
    std::size_t in_test = 0;
    for (auto i : s.test) in_test += data.label(i) == c;
    EXPECT_EQ(in_test, 20u);
  }
}

TEST(Evaluate, SeparatedBlobs) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 100, .dim = 5, .separation = 10, .sigma = 1, .seed = 7});
  EvalConfig cfg;
  const auto r = evaluate(data, cfg);
  EXPECT_GE(r.mean, 0.95);
  EXPECT_EQ(r.accuracies.size(), 5u);
  EXPECT_NEAR(r.chance, 1.0 / 3.0, 1e-15);
  std::size_t trace = 0, total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      row += r.confusion[i][j];
      total += r.confusion[i][j];
    }
    trace += r.confusion[i][i];
    EXPECT_EQ(row, 100u);  // 20 test points x 5 repetitions
  }
  EXPECT_NEAR(static_cast<double>(trace) / static_cast<double>(total), r.mean, 1e-12);
}

TEST(Evaluate, ReductionsRecordTheirSideData) {
  const auto data = synth_embedded({.intrinsic_dim = 3, .ambient_dim = 8, .n_per_class = 40, .seed = 3});
  EvalConfig cfg;
  cfg.repetitions = 2;
  cfg.reduction = Reduction::pca(3);
  const auto p = evaluate(data, cfg);
  EXPECT_EQ(p.explained_variance.size(), 2u);
  cfg.reduction = Reduction::rfe(3);
  cfg.classifier = ClassifierKind::NN1;
  const auto r = evaluate(data, cfg);
  ASSERT_EQ(r.kept_features.size(), 2u);
  EXPECT_EQ(r.kept_features[0].size(), 3u);
}

TEST(Evaluate, TooSmallClassRejected) {
  const auto data = synth_blobs({.n_classes = 2, .n_per_class = 2, .dim = 2, .seed = 1});
  EvalConfig cfg;
  cfg.test_fraction = 0.5;
  EXPECT_THROW(evaluate(data, cfg), std::invalid_argument);
}

TEST(Evaluate, ReproducibleJson) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 30, .dim = 3, .separation = 4, .sigma = 1, .seed = 2});
  EvalConfig cfg;
  cfg.seed = 11;
  EXPECT_EQ(to_json(evaluate(data, cfg)).dump(), to_json(evaluate(data, cfg)).dump());
}

TEST(Sweep, RecordsVariancePerDimension) {
  const auto data = synth_embedded({.intrinsic_dim = 3, .ambient_dim = 10, .n_per_class = 30, .seed = 5});
  EvalConfig cfg;
  cfg.repetitions = 2;
  cfg.reduction = Reduction::pca(2);
  const auto s = sweep_dimensions(data, cfg, {2, 3, 4});
  ASSERT_EQ(s.mean.size(), 3u);
  ASSERT_EQ(s.cumulative_variance.size(), 3u);
  EXPECT_LT(s.cumulative_variance[0], s.cumulative_variance[2]);
  EXPECT_THROW(sweep_dimensions(data, cfg, {11}), std::invalid_argument);
  cfg.reduction = Reduction::raw();
  EXPECT_THROW(sweep_dimensions(data, cfg, {2}), std::invalid_argument);
}

TEST(Spearman, RanksWithTies) {
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0, 1e-12);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0, 1e-12);
  EXPECT_EQ(average_ranks({5, 1, 5, 2}), (std::vector<double>{3.5, 1, 3.5, 2}));
  EXPECT_EQ(spearman({1, 2, 3}, {7, 7, 7}), 0.0);
}

TEST(Config, KeyValueAndJson) {
  const auto a = parse_config("classifier = nn1\nreduction = pca(4)  # comment\nband=gamma\nseed=9\nrepetitions=3\n"
                              "test_fraction=0.25\nresolution=500\noutlier_k=2\nzscore=true\n");
  EXPECT_EQ(a.classifier, ClassifierKind::NN1);
  EXPECT_EQ(a.reduction.kind, Reduction::Kind::Pca);
  EXPECT_EQ(a.reduction.k, 4u);
  EXPECT_EQ(a.band.name, "gamma");
  EXPECT_EQ(a.seed, 9u);
  EXPECT_EQ(a.repetitions, 3u);
  EXPECT_EQ(a.test_fraction, 0.25);
  EXPECT_EQ(a.resolution, 500u);
  EXPECT_EQ(a.outlier_k, 2.0);
  EXPECT_TRUE(a.zscore);

  const auto b = parse_config(R"({"classifier":"topo","reduction":"rfe:2","seed":4,"zscore":false})");
  EXPECT_EQ(b.reduction.kind, Reduction::Kind::Rfe);
  EXPECT_EQ(b.reduction.k, 2u);
  EXPECT_EQ(b.seed, 4u);

  EXPECT_THROW(parse_config("colour=red"), std::invalid_argument);
  EXPECT_THROW(parse_config("test_fraction=1.5"), std::invalid_argument);
  EXPECT_THROW(parse_config("reduction=pca(x)"), std::invalid_argument);
}

TEST(Json, DiagramRoundTripAndSchema) {
  PersistenceDiagram d;
  d.pairs = {{0, 0.1}, {0, 1.0 / 3.0}};
  d.essential = {0};
  const auto j = to_json(d);
  EXPECT_EQ(j.at("dim"), 0);
  EXPECT_EQ(j.at("pairs").size(), 2u);
  const auto back = diagram_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.pairs, d.pairs);
  EXPECT_EQ(back.essential, d.essential);
  EXPECT_THROW(diagram_from_json(json::parse(R"({"dim":0,"pairs":[[2,1]]})")), std::invalid_argument);
}

TEST(Json, PredictionAndRfeShapes) {
  Prediction p{"A", {{"A", 0.5}, {"B", 2.0}}};
  const auto j = to_json(p);
  EXPECT_EQ(j.at("label"), "A");
  EXPECT_EQ(j.at("distances").at("B"), 2.0);
  const auto r = to_json(RfeResult{{0, 2}, {1, 2, 1}, {1}});
  EXPECT_EQ(r.at("kept"), json::parse("[0,2]"));
  EXPECT_EQ(r.at("ranking"), json::parse("[1,2,1]"));
}

TEST(Svg, Structure) {
  PersistenceDiagram empty;
  const auto e = render_diagram_svg(empty);
  EXPECT_NE(e.find("<svg"), std::string::npos);
  EXPECT_EQ(count(e, "<circle"), 0u);
  EXPECT_EQ(count(e, "class=\"axis\""), 1u);

  const Grid g(0, 2, 50);
  std::vector<std::pair<std::string, SummaryVector>> curves;
  for (const char* name : {"c0", "c1", "c2"}) curves.emplace_back(name, SummaryVector{g, std::vector<double>(50, 0.5)});
  const auto s = render_silhouettes_svg(curves);
  EXPECT_EQ(count(s, "class=\"curve\""), 3u);
  EXPECT_EQ(count(s, "class=\"legend\""), 3u);

  SweepReport sweep;
  sweep.dims = {2, 3, 4};
  sweep.mean = {0.5, 0.6, 0.7};
  sweep.std = {0.1, 0.1, 0.1};
  sweep.cumulative_variance = {0.4, 0.6, 0.8};
  sweep.chance = 1.0 / 3;
  const auto w = render_sweep_svg(sweep);
  EXPECT_EQ(count(w, "axis-left"), 1u);
  EXPECT_EQ(count(w, "axis-right"), 1u);
  EXPECT_EQ(count(w, "class=\"variance\""), 1u);

  const auto path = std::filesystem::temp_directory_path() / "topoclass_test_plot.svg";
  plot_svg(sweep, path.string());
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
  EXPECT_THROW(plot_svg(sweep, "/nonexistent-dir/plot.svg"), std::runtime_error);
}
