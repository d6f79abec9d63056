#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "topoclass/classifier.hpp"
#include "topoclass/harness/synth.hpp"

using namespace topoclass;

namespace {

/// n points around `center` with spread `sigma`, labelled `label`.
void add_blob(PointCloud& cloud, std::mt19937_64& rng, std::vector<double> center, double sigma, int n,
              const std::string& label) {
  std::normal_distribution<double> g(0.0, sigma);
  for (int i = 0; i < n; ++i) {
    std::vector<double> p = center;
    for (auto& v : p) v += g(rng);
    cloud.push_back(p, label);
  }
}

PointCloud two_blobs(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointCloud c(2);
  add_blob(c, rng, {0, 0}, 0.1, 30, "A");
  add_blob(c, rng, {10, 0}, 0.1, 30, "B");
  return c;
}

void expect_label_is_argmin(const Prediction& p) {
  double best = p.distances.front().second;
  for (const auto& [_, d] : p.distances) best = std::min(best, d);
  EXPECT_EQ(p.distance(p.label), best);
}

}  // namespace

TEST(Fit, ThreeBlobsShareOneGrid) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 100, .dim = 2, .separation = 10, .sigma = 1, .seed = 3});
  const auto model = fit(data);
  ASSERT_EQ(model.classes.size(), 3u);
  double largest = 0;
  for (const auto& c : model.classes) {
    EXPECT_EQ(c.reference.grid, model.grid);
    EXPECT_EQ(c.reference.values.size(), 1000u);
    largest = std::max(largest, c.diagram.max_finite_death());
  }
  EXPECT_DOUBLE_EQ(model.grid.t_max, 1.05 * largest);
}

TEST(Fit, Preconditions) {
  PointCloud one(2);
  one.push_back(std::vector<double>{0, 0}, "A");
  one.push_back(std::vector<double>{1, 0}, "A");
  EXPECT_THROW(fit(one), std::invalid_argument);

  PointCloud small = one;
  small.push_back(std::vector<double>{5, 5}, "B");
  EXPECT_THROW(fit(small), std::invalid_argument);

  PointCloud coincident = one;
  coincident.push_back(std::vector<double>{5, 5}, "B");
  coincident.push_back(std::vector<double>{5, 5}, "B");
  EXPECT_THROW(fit(coincident), DegenerateDiagramError);
}

TEST(Classify, NearPointGoesToNearBlob) {
  const auto model = fit(two_blobs(1));
  const std::vector<double> x{0.1, 0.0};
  const auto p = classify(model, x);
  EXPECT_EQ(p.label, "A");
  EXPECT_LT(10 * p.distance("A"), p.distance("B"));
  expect_label_is_argmin(p);

  // Adding x to B creates a component that dies near |x - B| / 2.
  const auto& b = model.classes[1];
  const auto added = h0_add_point(b.state, distances_to(b.cloud, x));
  EXPECT_NEAR(added.max_finite_death(), 4.95, 0.3);
}

TEST(Classify, DuplicateTrainingPointHasZeroDistance) {
  const auto data = two_blobs(2);
  const auto model = fit(data);
  const auto p = classify(model, data.point(5));
  EXPECT_EQ(p.distance("A"), 0.0);
  EXPECT_EQ(p.label, "A");
}

TEST(Classify, TiesGoToFirstDeclaredClass) {
  std::mt19937_64 rng(6);
  PointCloud a(2);
  add_blob(a, rng, {0, 0}, 1.0, 20, "first");
  PointCloud data = a;
  for (std::size_t i = 0; i < a.size(); ++i) data.push_back(a.point(i), "second");
  const auto model = fit(data);
  const auto p = classify(model, std::vector<double>{0.3, -0.2});
  EXPECT_EQ(p.distance("first"), p.distance("second"));
  EXPECT_EQ(p.label, "first");
}

TEST(Classify, DimensionMismatch) {
  const auto model = fit(two_blobs(1));
  EXPECT_THROW(classify(model, std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST(Classify, DeterministicAndRigidMotionInvariant) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 40, .dim = 2, .separation = 6, .sigma = 1, .seed = 8});
  const auto model = fit(data);
  const double angle = 0.7, c = std::cos(angle), s = std::sin(angle);
  auto move = [&](std::span<const double> p) { return std::vector<double>{c * p[0] - s * p[1] + 3.0, s * p[0] + c * p[1] - 1.0}; };
  PointCloud moved(2);
  for (std::size_t i = 0; i < data.size(); ++i) moved.push_back(move(data.point(i)), data.label(i));
  const auto moved_model = fit(moved);

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> x{u(rng), u(rng)};
    const auto p = classify(model, x);
    const auto again = classify(model, x);
    EXPECT_EQ(p.distances, again.distances);
    expect_label_is_argmin(p);
    const auto q = classify(moved_model, move(x));
    for (std::size_t k = 0; k < p.distances.size(); ++k)
      EXPECT_NEAR(p.distances[k].second, q.distances[k].second, 1e-9);
  }
}

TEST(Classify, SeparatedTrueClassMovesLess) {
  // x drawn from A; B lies farther than twice A's largest merge value.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto data = two_blobs(seed);
    const auto model = fit(data);
    std::mt19937_64 rng(seed + 100);
    std::normal_distribution<double> g(0.0, 0.1);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<double> x{g(rng), g(rng)};
      const double max_merge = model.classes[0].diagram.max_finite_death();
      const auto dists = distances_to(model.classes[1].cloud, x);
      ASSERT_GT(*std::min_element(dists.begin(), dists.end()), 2 * max_merge);
      const auto p = classify(model, x);
      EXPECT_LE(p.distance("A"), p.distance("B"));
    }
  }
}

TEST(Classify, LeaveOneOutSelfConsistency) {
  const auto data = synth_blobs({.n_classes = 3, .n_per_class = 40, .dim = 3, .separation = 10, .sigma = 1, .seed = 21});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < data.size(); ++j)
      if (j != i) rest.push_back(j);
    const auto model = fit(data.select(rest));
    if (classify(model, data.point(i)).label == data.label(i)) ++correct;
  }
  EXPECT_GE(static_cast<double>(correct) / static_cast<double>(data.size()), 0.9);
}

TEST(Nn1, Examples) {
  PointCloud train(2);
  train.push_back(std::vector<double>{0, 0}, "A");
  train.push_back(std::vector<double>{10, 0}, "B");
  EXPECT_EQ(nn1_classify(train, std::vector<double>{1, 0}), "A");
  EXPECT_EQ(nn1_classify(train, std::vector<double>{10, 0}), "B");
  EXPECT_THROW(nn1_classify(train, std::vector<double>{1}), std::invalid_argument);
}

TEST(Nn1, EquidistantMajorityWins) {
  PointCloud train(2);
  train.push_back(std::vector<double>{1, 0}, "B");
  train.push_back(std::vector<double>{-1, 0}, "A");
  train.push_back(std::vector<double>{0, 1}, "A");
  train.push_back(std::vector<double>{5, 5}, "B");
  EXPECT_EQ(nn1_classify(train, std::vector<double>{0, 0}), "A");

  PointCloud tie(2);
  tie.push_back(std::vector<double>{1, 0}, "B");
  tie.push_back(std::vector<double>{-1, 0}, "A");
  EXPECT_EQ(nn1_classify(tie, std::vector<double>{0, 0}), "B");  // B declared first
}
