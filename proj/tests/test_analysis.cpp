/*
   Copyright 2026 The qudyne Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qudyne/analysis.hpp"
#include "qudyne/fit.hpp"

using namespace qudyne;

namespace {

std::vector<double> cosine(std::size_t m, double f, double t, double amplitude, double phase) {
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = amplitude * std::cos(kTwoPi * f * t * i + phase);
  return s;
}

double sum_squares(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

TEST_CASE("constant series has no correlation") {
  const auto c = autocorrelate(std::vector<double>(1000, 3.7), 100, 1e-6);
  for (double v : c.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("sinusoid correlates as A^2/2 cos") {
  const double t = 1e-6, f = 12345.0;
  const auto s = cosine(200000, f, t, 2.0, 0.4);
  const auto c = autocorrelate(s, 50, t);
  for (std::size_t n = 0; n < 50; ++n) {
    CHECK(c.values[n] == doctest::Approx(2.0 * std::cos(kTwoPi * f * t * n)).epsilon(1e-3));
  }
}

TEST_CASE("FFT correlation equals the double loop") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.3, 1.0);
  for (std::size_t m : {std::size_t{37}, std::size_t{1000}, std::size_t{10000}}) {
    std::vector<double> s(m);
    for (auto& v : s) v = g(rng);
    for (bool unbiased : {true, false}) {
      const auto norm = unbiased ? CorrelationNorm::unbiased : CorrelationNorm::raw;
      const std::size_t lags = m / 2;
      const auto fast = autocorrelate(s, lags, 1.0, norm);
      const auto slow = oracle::correlation(s, lags, unbiased);
      const auto own = autocorrelate_brute_force(s, lags, 1.0, norm);
      for (std::size_t n = 0; n < lags; ++n) {
        REQUIRE(std::abs(fast.values[n] - slow[n]) < 1e-9);
        REQUIRE(std::abs(own.values[n] - slow[n]) < 1e-9);
      }
    }
  }
}

TEST_CASE("raw normalisation scales by the pair count") {
  const auto s = cosine(500, 0.01, 1.0, 1.0, 0.0);
  const auto u = autocorrelate(s, 10, 1.0, CorrelationNorm::unbiased);
  const auto r = autocorrelate(s, 10, 1.0, CorrelationNorm::raw);
  for (std::size_t n = 0; n < 10; ++n) CHECK(r.values[n] == doctest::Approx(u.values[n] * (500.0 - n)));
}

TEST_CASE("correlation arguments") {
  const std::vector<double> s(100, 1.0);
  CHECK_THROWS_AS(autocorrelate(s, 100, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(autocorrelate(s, 0, 1.0), std::invalid_argument);
  const auto c = autocorrelate(cosine(100, 0.1, 1.0, 1.0, 0.0), 40, 1.0);
  CHECK(truncate(c, 10).values.size() == 10);
  CHECK(truncate(c, 10).values[9] == c.values[9]);
  CHECK_THROWS_AS(truncate(c, 41), std::invalid_argument);
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<double> s(20000);
  for (auto& v : s) v = g(rng);
  const auto c = autocorrelate(s, 3001, 1e-6);
  for (std::size_t pad : {std::size_t{1}, std::size_t{3}, std::size_t{8}}) {
    const auto spec = power_spectrum(c, Window::rectangular, pad);
    const double total = std::accumulate(spec.power.begin(), spec.power.end(), 0.0);
    CHECK(total == doctest::Approx(sum_squares(c.values)).epsilon(1e-6));
  }
}

TEST_CASE("spectrum axes") {
  const auto c = autocorrelate(cosine(4000, 0.1, 2e-6, 1.0, 0.0), 1000, 2e-6);
  const auto spec = power_spectrum(c, Window::rectangular, 4);
  CHECK(spec.resolution == 1.0 / (1000 * 2e-6));
  CHECK(spec.frequencies.front() == 0.0);
  CHECK(spec.frequencies.back() == doctest::Approx(0.5 / 2e-6));
  CHECK(spec.frequencies[1] == doctest::Approx(spec.bin_spacing));
  CHECK(fft_size(4001) >= 4001);
  for (std::size_t n : {1UL, 11UL, 13UL, 1021UL, 99991UL}) {
    std::size_t m = fft_size(n);
    CHECK(m >= n);
    for (std::size_t p : {2UL, 3UL, 5UL, 7UL}) while (m % p == 0) m /= p;
    CHECK(m == 1);
  }
  CHECK(fft_size(1024) == 1024);
  CHECK_THROWS_AS(power_spectrum(c, Window::rectangular, 0), std::invalid_argument);
}

TEST_CASE("cosine correlation gives one peak within a bin and a sinc main lobe") {
  const double t = 1e-6;
  const std::size_t n = 4096;
  for (double f : {31250.7, 123456.0, 400001.0}) {
    Correlation c;
    c.sampling_interval = t;
    c.values = cosine(n, f, t, 1.0, 0.0);
    const auto spec = power_spectrum(c);
    const auto peak = fit_peak(spec, f - 5e3, f + 5e3);
    REQUIRE(peak);
    CHECK(std::abs(peak->center - f) < spec.resolution / 10);
    CHECK(peak->fwhm == doctest::Approx(fourier_limited_fwhm(n, t)).epsilon(0.1));
    CHECK(peak->fit_residual < 0.05);
  }
  CHECK(fourier_limited_fwhm(1, 1.0) == doctest::Approx(0.885892).epsilon(1e-6));
}

TEST_CASE("Hann window widens the line") {
  Correlation c;
  c.sampling_interval = 1.0;
  c.values = cosine(2048, 0.1, 1.0, 1.0, 0.0);
  const auto rect = fit_peak(power_spectrum(c), 0.09, 0.11);
  const auto hann = fit_peak(power_spectrum(c, Window::hann), 0.09, 0.11);
  REQUIRE(rect);
  REQUIRE(hann);
  CHECK(hann->fwhm > 1.3 * rect->fwhm);
  CHECK(std::abs(hann->center - 0.1) < 1.0 / 2048 / 10);
}

TEST_CASE("no peak in pure noise or in an empty window") {
  Correlation c;
  c.sampling_interval = 1.0;
  c.values.assign(1000, 0.0);
  c.values[0] = 1.0;  // white noise
  const auto spec = power_spectrum(c);
  CHECK_FALSE(fit_peak(spec, 0.1, 0.2).has_value());
  CHECK_FALSE(fit_peak(spec, 0.2, 0.1).has_value());
}

TEST_CASE("fitted line is invariant under the signal phase") {
  const double t = 1e-6, f = 50000.0;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 0.5);
  std::vector<double> noise(60000);
  for (auto& v : noise) v = g(rng);
  std::optional<PeakFit> ref;
  double resolution = 0.0;
  for (double phase : {0.0, 1.0, 2.2, 4.0, 5.5}) {
    auto s = cosine(noise.size(), f, t, 0.2, phase);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += noise[i];
    const auto spec = power_spectrum(autocorrelate(s, 30000, t));
    resolution = spec.resolution;
    const auto peak = fit_peak(spec, f - 2e3, f + 2e3);
    REQUIRE(peak);
    if (!ref) ref = peak;
    CHECK(std::abs(peak->center - ref->center) < resolution / 20);
    CHECK(std::abs(peak->fwhm - ref->fwhm) < resolution / 20);
  }
}

TEST_CASE("noiseless linewidth follows 1/(N T)") {
  const double t = 1e-6;
  const auto s = cosine(1 << 17, 12345.0, t, 1.0, 0.3);
  const std::vector<std::size_t> lengths{1000, 2000, 4000, 8000, 16000, 32000, 64000};
  const auto study = linewidth_scaling(s, t, lengths, 11e3, 14e3);
  CHECK(study.loglog.slope == doctest::Approx(-1.0).epsilon(0.05));
  for (std::size_t i = 1; i < study.points.size(); ++i) {
    REQUIRE(study.points[i].peak);
    const double ratio = study.points[i - 1].peak->fwhm / study.points[i].peak->fwhm;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
  }
  CHECK(study.points.back().duration == doctest::Approx(64000 * t));
}

TEST_CASE("shot-noise-limited counts keep the 1/(N T) slope") {
  // nominal readout: 0.1 photons per shot, contrast 0.3
  const double t = 1e-6, f = 0.137 / t;
  const std::vector<std::size_t> lengths{4000, 8000, 16000, 32000, 64000};
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    std::mt19937_64 rng(seed);
    std::vector<double> counts(400000);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double sz = 0.5 * std::cos(kTwoPi * f * t * i);
      counts[i] = std::poisson_distribution<int>(0.1 * (1.0 + 2.0 * 0.3 * sz))(rng);
    }
    const auto study = linewidth_scaling(counts, t, lengths, f - 5e3, f + 5e3);
    for (const auto& p : study.points) REQUIRE(p.peak);
    CHECK(std::abs(study.loglog.slope + 1.0) <= 0.1);
  }
}

TEST_CASE("linear and sinusoid fits") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i);
    y.push_back(3.0 - 0.5 * i);
  }
  const auto line = fit_line(x, y);
  CHECK(line.slope == doctest::Approx(-0.5));
  CHECK(line.intercept == doctest::Approx(3.0));
  CHECK(line.r_squared == doctest::Approx(1.0));

  std::vector<double> t, s;
  for (int i = 0; i < 200; ++i) {
    t.push_back(i * 0.01);
    s.push_back(0.2 + 0.7 * std::cos(13.0 * i * 0.01 - 0.9));
  }
  const auto fit = fit_sinusoid(t, s, 1.0, 40.0);
  CHECK(fit.frequency == doctest::Approx(13.0).epsilon(1e-6));
  CHECK(fit.amplitude == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(fit.offset == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(fit(0.37) == doctest::Approx(0.2 + 0.7 * std::cos(13.0 * 0.37 - 0.9)));
  const auto fixed = fit_sinusoid_fixed_frequency(t, s, 13.0);
  CHECK(fixed.r_squared == doctest::Approx(1.0));
}
