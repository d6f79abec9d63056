#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "topoclass/summaries.hpp"

using namespace topoclass;

namespace {

PersistenceDiagram diag(std::vector<PersistencePair> pairs) {
  PersistenceDiagram d;
  d.pairs = std::move(pairs);
  return d;
}

/// Grid whose samples include the given t exactly: [0, 4] with spacing 0.5.
Grid half_grid() { return Grid(0.0, 4.0, 9); }

PersistenceDiagram random_diagram(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  PersistenceDiagram d;
  for (int i = 0; i < n; ++i) {
    const double b = u(rng);
    d.pairs.push_back({b, b + u(rng)});
  }
  return d;
}

}  // namespace

TEST(Tent, Formula) {
  EXPECT_EQ(tent(0, 2, 1), 1.0);
  EXPECT_EQ(tent(1, 3, 0), 0.0);
  EXPECT_EQ(tent(0, 4, 3), 1.0);
  EXPECT_THROW(tent(2, 1, 0), std::invalid_argument);
}

TEST(Landscape, Levels) {
  const auto d = diag({{0, 2}, {1, 3}});
  const Grid g = half_grid();
  EXPECT_EQ(landscape(d, 1, g).values[2], 1.0);  // t = 1
  EXPECT_EQ(landscape(d, 2, g).values[3], 0.5);  // t = 1.5
  for (double v : landscape(d, 3, g).values) EXPECT_EQ(v, 0.0);
  for (double v : landscape(diag({}), 1, g).values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(landscape(d, 0, g), std::invalid_argument);
}

TEST(Landscape, MonotoneInLevel) {
  std::mt19937_64 rng(4);
  const Grid g(0.0, 6.0, 300);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = random_diagram(rng, 8);
    auto prev = landscape(d, 1, g);
    for (std::size_t k = 2; k <= 9; ++k) {
      const auto cur = landscape(d, k, g);
      for (std::size_t i = 0; i < g.resolution; ++i) ASSERT_LE(cur.values[i], prev.values[i]);
      prev = cur;
    }
  }
}

TEST(Silhouette, Examples) {
  const Grid g = half_grid();
  const auto one = silhouette(diag({{0, 2}}), g);
  for (std::size_t i = 0; i < g.resolution; ++i) EXPECT_EQ(one.values[i], tent(0, 2, g.sample(i)));

  const auto two = silhouette(diag({{0, 2}, {0, 4}}), g);
  EXPECT_DOUBLE_EQ(two.values[2], 1.0);        // t = 1
  EXPECT_DOUBLE_EQ(two.values[6], 2.0 / 3.0);  // t = 3
}

TEST(Silhouette, DegenerateDiagramsRejected) {
  const Grid g = half_grid();
  EXPECT_THROW(silhouette(diag({}), g), DegenerateDiagramError);
  EXPECT_THROW(silhouette(diag({{1, 1}, {0, 0}}), g), DegenerateDiagramError);
  PersistenceDiagram only_essential;
  only_essential.essential = {0.0};
  EXPECT_THROW(silhouette(only_essential, g), DegenerateDiagramError);
}

TEST(Silhouette, EssentialClassesIgnored) {
  const Grid g = half_grid();
  auto d = diag({{0, 2}});
  const auto base = silhouette(d, g);
  d.essential = {0.0};
  EXPECT_EQ(silhouette(d, g).values, base.values);
}

TEST(Silhouette, Properties) {
  std::mt19937_64 rng(8);
  const Grid g(0.0, 7.0, 500);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = random_diagram(rng, 1 + trial % 10);
    const auto s = silhouette(d, g);
    double half_life = 0;
    for (const auto& p : d.pairs) half_life = std::max(half_life, p.lifetime() / 2);
    for (std::size_t i = 0; i < g.resolution; ++i) {
      ASSERT_GE(s.values[i], 0.0);
      ASSERT_LE(s.values[i], half_life + 1e-12);
      if (i + 1 < g.resolution) ASSERT_LE(std::abs(s.values[i + 1] - s.values[i]), g.spacing() + 1e-12);
    }
    // zero-lifetime pairs carry no weight
    d.pairs.push_back({1.25, 1.25});
    d.pairs.push_back({0.0, 0.0});
    EXPECT_EQ(silhouette(d, g).values, s.values);
  }
}

TEST(Silhouette, OnePointEqualsFirstLandscape) {
  std::mt19937_64 rng(12);
  const Grid g(0.0, 7.0, 333);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = random_diagram(rng, 1);
    EXPECT_EQ(silhouette(d, g).values, landscape(d, 1, g).values);
  }
}

TEST(MakeGrid, RangeFromLargestDeath) {
  const auto g = make_grid({diag({{0, 2}})});
  EXPECT_EQ(g.t_min, 0.0);
  EXPECT_DOUBLE_EQ(g.t_max, 2.1);
  EXPECT_EQ(g.resolution, 1000u);
  EXPECT_DOUBLE_EQ(make_grid({diag({{0, 2}}), diag({{0, 10}, {1, 3}})}).t_max, 10.5);
  const auto two = make_grid({diag({{0, 2}})}, 2);
  EXPECT_EQ(two.sample(0), 0.0);
  EXPECT_EQ(two.sample(1), two.t_max);
  EXPECT_THROW(make_grid({diag({})}), DegenerateDiagramError);
  EXPECT_THROW(Grid(0.0, 1.0, 1), std::invalid_argument);
}

TEST(L2Distance, Examples) {
  const Grid g(0.0, 1.0, 4);
  const SummaryVector ones{g, {1, 1, 1, 1}};
  const SummaryVector twos{g, {2, 2, 2, 2}};
  EXPECT_EQ(l2_distance(ones, ones), 0.0);
  EXPECT_EQ(l2_distance(twos, ones), 2.0);
  SummaryVector bump = ones;
  bump.values[2] += 1.0;
  EXPECT_EQ(l2_distance(bump, ones), 1.0);
  const SummaryVector other{Grid(0.0, 2.0, 4), {1, 1, 1, 1}};
  EXPECT_THROW(l2_distance(ones, other), std::invalid_argument);
}
