#pragma once

// IIR filtering of per-channel time series and window features.
//
// Filters are designed from an analog Butterworth prototype: frequency
// pre-warping, lowpass-to-bandpass (or bandstop) transformation, then the
// bilinear transform. The result is a cascade of biquads applied causally.

#include <cmath>
#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topoclass {

struct TimeSeries {
  std::vector<double> samples;
  double fs = 1.0;  // Hz
};

/// Passband for one of the analysed frequency bands.
struct BandSpec {
  std::string name = "none";
  double lo = 0.0;
  double hi = 0.0;

  static BandSpec named(const std::string& name) {
    if (name == "none") return {"none", 0.0, 0.0};
    if (name == "alpha") return {"alpha", 8.0, 15.0};
    if (name == "beta") return {"beta", 15.0, 32.0};
    if (name == "gamma") return {"gamma", 32.0, 80.0};
    throw std::invalid_argument("BandSpec: unknown band '" + name + "'");
  }
};

/// b0 + b1 z^-1 + b2 z^-2 over 1 + a1 z^-1 + a2 z^-2.
struct Biquad {
  double b0 = 1, b1 = 0, b2 = 0;
  double a1 = 0, a2 = 0;

  std::complex<double> response(std::complex<double> z) const {
    const auto zi = 1.0 / z;
    return (b0 + zi * (b1 + zi * b2)) / (1.0 + zi * (a1 + zi * a2));
  }
};

struct SosFilter {
  std::vector<Biquad> sections;

  std::complex<double> response(double freq_hz, double fs) const {
    const auto z = std::polar(1.0, 2.0 * std::numbers::pi * freq_hz / fs);
    std::complex<double> h = 1.0;
    for (const auto& s : sections) h *= s.response(z);
    return h;
  }

  double gain(double freq_hz, double fs) const { return std::abs(response(freq_hz, fs)); }

  /// Largest pole magnitude; governs how long transients last.
  double max_pole_radius() const {
    double r = 0.0;
    for (const auto& s : sections) {
      const std::complex<double> disc = std::sqrt(std::complex<double>(s.a1 * s.a1 - 4.0 * s.a2));
      r = std::max({r, std::abs((-s.a1 + disc) / 2.0), std::abs((-s.a1 - disc) / 2.0)});
    }
    return r;
  }

  /// Samples after which an impulse response has decayed below `tol`.
  std::size_t settling_samples(double tol = 1e-9) const {
    const double r = max_pole_radius();
    if (r <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(r))) + 1;
  }

  /// Causal cascade, transposed direct form II per section.
  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y = x;
    for (const auto& s : sections) {
      double z1 = 0.0, z2 = 0.0;
      for (double& v : y) {
        const double in = v;
        const double out = s.b0 * in + z1;
        z1 = s.b1 * in - s.a1 * out + z2;
        z2 = s.b2 * in - s.a2 * out;
        v = out;
      }
    }
    return y;
  }

  /// Expanded single transfer function (b, a), highest power of z^-1 last.
  std::pair<std::vector<double>, std::vector<double>> transfer_function() const {
    std::vector<double> b{1.0}, a{1.0};
    auto mul = [](const std::vector<double>& p, const std::array<double, 3>& q) {
      std::vector<double> r(p.size() + 2, 0.0);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) r[i + j] += p[i] * q[j];
      return r;
    };
    for (const auto& s : sections) {
      b = mul(b, {s.b0, s.b1, s.b2});
      a = mul(a, {1.0, s.a1, s.a2});
    }
    return {b, a};
  }
};

namespace detail {

using cplx = std::complex<double>;

/// Left-half-plane poles of the order-N analog Butterworth lowpass with unit cutoff.
inline std::vector<cplx> butterworth_prototype(int order) {
  std::vector<cplx> poles;
  for (int k = 1; k <= order; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + order - 1) / (2.0 * order);
    poles.push_back(std::polar(1.0, theta));
  }
  return poles;
}

inline double prewarp(double f, double fs) { return 2.0 * fs * std::tan(std::numbers::pi * f / fs); }

inline cplx bilinear(cplx s, double fs) { return (2.0 * fs + s) / (2.0 * fs - s); }

/// Groups digital poles into conjugate (or real) pairs, one biquad
/// denominator per pair.
inline std::vector<std::array<double, 2>> pair_poles(std::vector<cplx> poles) {
  constexpr double eps = 1e-12;
  std::vector<std::array<double, 2>> dens;
  std::vector<double> reals;
  for (const auto& p : poles) {
    if (p.imag() > eps)
      dens.push_back({-2.0 * p.real(), std::norm(p)});
    else if (std::abs(p.imag()) <= eps)
      reals.push_back(p.real());
  }
  if (reals.size() % 2 != 0) throw std::logic_error("pair_poles: odd number of real poles");
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i < reals.size(); i += 2) dens.push_back({-(reals[i] + reals[i + 1]), reals[i] * reals[i + 1]});
  return dens;
}

inline void normalize_gain(SosFilter& f, double freq_hz, double fs) {
  const double g = f.gain(freq_hz, fs);
  auto& s = f.sections.front();
  s.b0 /= g;
  s.b1 /= g;
  s.b2 /= g;
}

}  // namespace detail

/// Butterworth bandpass from an order-`order` prototype (2 * order poles).
inline SosFilter design_bandpass(double lo, double hi, double fs, int order = 4) {
  if (!(fs > 0.0)) throw std::invalid_argument("design_bandpass: sampling rate must be positive");
  if (!(lo > 0.0 && lo < hi && hi < fs / 2.0))
    throw std::invalid_argument("design_bandpass: need 0 < lo < hi < fs/2");
  if (order < 1) throw std::invalid_argument("design_bandpass: order must be >= 1");
  const double w1 = detail::prewarp(lo, fs);
  const double w2 = detail::prewarp(hi, fs);
  const double w0sq = w1 * w2;
  const double bw = w2 - w1;
  std::vector<detail::cplx> digital;
  for (const auto& p : detail::butterworth_prototype(order)) {
    // s^2 - p*bw*s + w0^2 = 0
    const detail::cplx half = p * bw / 2.0;
    const detail::cplx root = std::sqrt(half * half - w0sq);
    digital.push_back(detail::bilinear(half + root, fs));
    digital.push_back(detail::bilinear(half - root, fs));
  }
  SosFilter f;
  for (const auto& [a1, a2] : detail::pair_poles(digital)) f.sections.push_back({1.0, 0.0, -1.0, a1, a2});
  const double center = fs / std::numbers::pi * std::atan(std::sqrt(w0sq) / (2.0 * fs));
  detail::normalize_gain(f, center, fs);
  return f;
}

/// Butterworth band-stop centred on f0 with stop bandwidth f0 / q.
inline SosFilter design_notch(double f0, double fs, int order = 4, double q = 35.0) {
  if (!(fs > 0.0)) throw std::invalid_argument("design_notch: sampling rate must be positive");
  if (!(f0 > 0.0 && f0 < fs / 2.0)) throw std::invalid_argument("design_notch: need 0 < f0 < fs/2");
  if (order < 1) throw std::invalid_argument("design_notch: order must be >= 1");
  if (!(q > 0.0)) throw std::invalid_argument("design_notch: quality factor must be positive");
  // Centre pre-warped exactly to f0 so the zeros sit on f0 itself.
  const double w0 = detail::prewarp(f0, fs);
  const double w0sq = w0 * w0;
  const double bw = w0 / q;
  std::vector<detail::cplx> digital;
  for (const auto& p : detail::butterworth_prototype(order)) {
    // s^2 - (bw/p) s + w0^2 = 0
    const detail::cplx half = bw / (2.0 * p);
    const detail::cplx root = std::sqrt(half * half - w0sq);
    digital.push_back(detail::bilinear(half + root, fs));
    digital.push_back(detail::bilinear(half - root, fs));
  }
  // Zeros at s = +-j w0 map to e^{+-j omega0} on the unit circle.
  const double omega0 = 2.0 * std::numbers::pi * f0 / fs;
  const double c = -2.0 * std::cos(omega0);
  SosFilter f;
  for (const auto& [a1, a2] : detail::pair_poles(digital)) f.sections.push_back({1.0, c, 1.0, a1, a2});
  detail::normalize_gain(f, 0.0, fs);
  return f;
}

inline TimeSeries butterworth_bandpass(const TimeSeries& x, double lo, double hi, int order = 4) {
  return {design_bandpass(lo, hi, x.fs, order).apply(x.samples), x.fs};
}

inline TimeSeries notch(const TimeSeries& x, double f0, int order = 4, double q = 35.0) {
  return {design_notch(f0, x.fs, order, q).apply(x.samples), x.fs};
}

/// Mean of |x| over samples [begin, end).
inline double mean_abs_feature(const TimeSeries& x, std::size_t begin, std::size_t end) {
  if (begin >= end || end > x.samples.size())
    throw std::out_of_range("mean_abs_feature: window [" + std::to_string(begin) + ", " + std::to_string(end) +
                            ") is empty or out of range");
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += std::abs(x.samples[i]);
  return s / static_cast<double>(end - begin);
}

inline double mean_abs_feature(const TimeSeries& x) { return mean_abs_feature(x, 0, x.samples.size()); }

}  // namespace topoclass
