#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topoclass/signal.hpp"

using namespace topoclass;

namespace {

constexpr double kFs = 1000.0;

double db(double gain) { return 20.0 * std::log10(gain); }

/// Steady-state gain of `f` for a unit sine at `freq`, measured after the
/// transient has decayed below 1e-9.
double measured_gain(const SosFilter& f, double freq) {
  const std::size_t settle = std::max<std::size_t>(f.settling_samples(), 100);
  const std::size_t n = settle + 20 * static_cast<std::size_t>(kFs);
  const auto y = f.apply(oracle::sine(freq, kFs, n));
  return oracle::sine_amplitude(y, freq, kFs, settle);
}

std::vector<double> white_noise(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

}  // namespace

TEST(Bandpass, BlocksDc) {
  const auto f = design_bandpass(8, 15, kFs);
  const std::size_t settle = f.settling_samples();
  const auto y = f.apply(std::vector<double>(settle + 1000, 1.0));
  for (std::size_t i = settle; i < y.size(); ++i) ASSERT_LT(std::abs(y[i]), 1e-3);
}

TEST(Bandpass, PassbandAndEdges) {
  for (const auto& [lo, hi] : {std::pair{8.0, 15.0}, {15.0, 32.0}, {32.0, 80.0}, {0.5, 100.0}}) {
    const auto f = design_bandpass(lo, hi, kFs);
    EXPECT_EQ(f.sections.size(), 4u);
    const double center = measured_gain(f, std::sqrt(lo * hi));
    EXPECT_GE(center, 0.9);
    EXPECT_LE(center, 1.0 + 1e-6);
    EXPECT_NEAR(db(measured_gain(f, lo)), -3.0103, 0.3) << lo << "-" << hi;
    EXPECT_NEAR(db(measured_gain(f, hi)), -3.0103, 0.3) << lo << "-" << hi;
  }
}

TEST(Bandpass, InvalidEdges) {
  EXPECT_THROW(design_bandpass(0, 10, kFs), std::invalid_argument);
  EXPECT_THROW(design_bandpass(20, 10, kFs), std::invalid_argument);
  EXPECT_THROW(design_bandpass(10, 600, kFs), std::invalid_argument);
}

TEST(Notch, RemovesCentrePassesRest) {
  for (double f0 : {50.0, 100.0, 150.0}) {
    const auto f = design_notch(f0, kFs);
    EXPECT_LE(db(measured_gain(f, f0)), -30.0) << f0;
    EXPECT_NEAR(measured_gain(f, f0 / 4), 1.0, 0.05) << f0;
    EXPECT_NEAR(f.gain(0.0, kFs), 1.0, 1e-12);
    const std::size_t settle = f.settling_samples();
    const auto y = f.apply(std::vector<double>(settle + 100, 1.0));
    EXPECT_NEAR(y.back(), 1.0, 1e-2);
  }
  EXPECT_THROW(design_notch(600, kFs), std::invalid_argument);
}

TEST(Filters, Linearity) {
  const auto f = design_bandpass(15, 32, kFs);
  const auto x = white_noise(1, 3000), y = white_noise(2, 3000);
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mix[i] = 2.5 * x[i] - 0.75 * y[i];
  const auto fx = f.apply(x), fy = f.apply(y), fm = f.apply(mix);
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(fm[i], 2.5 * fx[i] - 0.75 * fy[i], 1e-9);
}

TEST(Filters, TimeInvariance) {
  const auto f = design_notch(50, kFs);
  const auto x = white_noise(3, 4000);
  const std::size_t k = 37;
  std::vector<double> shifted(k, 0.0);
  shifted.insert(shifted.end(), x.begin(), x.end() - static_cast<std::ptrdiff_t>(k));
  const auto fx = f.apply(x), fs = f.apply(shifted);
  for (std::size_t i = k; i < x.size(); ++i) ASSERT_NEAR(fs[i], fx[i - k], 1e-9);
}

TEST(Filters, CascadeMatchesDirectForm) {
  const auto f = design_bandpass(32, 80, kFs);
  const auto [b, a] = f.transfer_function();
  ASSERT_EQ(b.size(), 9u);
  const auto x = white_noise(4, 5000);
  const auto cascade = f.apply(x);
  const auto direct = oracle::direct_form(b, a, x);
  double se = 0;
  for (std::size_t i = 0; i < x.size(); ++i) se += (cascade[i] - direct[i]) * (cascade[i] - direct[i]);
  EXPECT_LT(std::sqrt(se / static_cast<double>(x.size())), 1e-6);
}

TEST(MeanAbs, Examples) {
  EXPECT_EQ(mean_abs_feature({{1, -1, 1, -1}, kFs}), 1.0);
  EXPECT_EQ(mean_abs_feature({{0, 0, 0}, kFs}), 0.0);
  EXPECT_EQ(mean_abs_feature({{3, -4}, kFs}), 3.5);
  EXPECT_EQ(mean_abs_feature({{3, -4, 10}, kFs}, 0, 2), 3.5);
  EXPECT_THROW(mean_abs_feature({{3, -4}, kFs}, 1, 1), std::out_of_range);
  EXPECT_THROW(mean_abs_feature({{3, -4}, kFs}, 0, 3), std::out_of_range);
}

TEST(MeanAbs, SignFlipInvariant) {
  auto x = white_noise(5, 100);
  const double a = mean_abs_feature({x, kFs});
  for (auto& v : x) v = -v;
  EXPECT_EQ(mean_abs_feature({x, kFs}), a);
}

TEST(BandSpec, NamedBands) {
  EXPECT_EQ(BandSpec::named("alpha").lo, 8.0);
  EXPECT_EQ(BandSpec::named("gamma").hi, 80.0);
  EXPECT_THROW(BandSpec::named("delta"), std::invalid_argument);
}
