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

#include "qudyne/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <fftw3.h>

namespace qudyne {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Forward real FFT of a length-n input into n/2+1 bins.
std::vector<std::complex<double>> rfft(std::vector<double>& in) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size() / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

// Unnormalised inverse of rfft; overwrites its input.
std::vector<double> irfft(std::vector<std::complex<double>>& in, std::size_t n) {
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

std::vector<double> centered(const std::vector<double>& series) {
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
  std::vector<double> out(series.size());
  std::transform(series.begin(), series.end(), out.begin(), [mean](double v) { return v - mean; });
  return out;
}

void check_lag(std::size_t max_lag, std::size_t m, double sampling_interval) {
  if (max_lag == 0 || max_lag >= m) {
    throw std::invalid_argument("autocorrelate: need 0 < max_lag < series length (" +
                                std::to_string(max_lag) + " vs " + std::to_string(m) + ")");
  }
  if (!(sampling_interval > 0.0)) {
    throw std::invalid_argument("autocorrelate: sampling interval must be positive");
  }
}

void normalise(Correlation& c, std::size_t m) {
  if (c.norm == CorrelationNorm::raw) return;
  for (std::size_t n = 0; n < c.values.size(); ++n) c.values[n] /= static_cast<double>(m - n);
}

bool smooth(std::size_t n) {
  for (std::size_t p : {2U, 3U, 5U, 7U}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

std::size_t fft_size(std::size_t n) {
  std::size_t m = std::max<std::size_t>(n, 1);
  while (!smooth(m)) ++m;
  return m;
}

std::vector<double> series_of(const MeasurementRecord& record, Channel channel) {
  if (channel == Channel::true_sz) return record.true_sz;
  return {record.counts.begin(), record.counts.end()};
}

Correlation autocorrelate(const std::vector<double>& series, std::size_t max_lag,
                          double sampling_interval, CorrelationNorm norm) {
  check_lag(max_lag, series.size(), sampling_interval);
  const std::size_t m = series.size();
  const std::size_t length = fft_size(m + max_lag);
  std::vector<double> padded = centered(series);
  padded.resize(length, 0.0);
  auto spectrum = rfft(padded);
  for (auto& v : spectrum) v = std::norm(v);
  const auto circular = irfft(spectrum, length);

  Correlation c;
  c.sampling_interval = sampling_interval;
  c.norm = norm;
  c.values.resize(max_lag);
  const double scale = 1.0 / static_cast<double>(length);
  for (std::size_t n = 0; n < max_lag; ++n) c.values[n] = circular[n] * scale;
  normalise(c, m);
  return c;
}

Correlation autocorrelate(const MeasurementRecord& record, std::size_t max_lag, Channel channel,
                          CorrelationNorm norm) {
  return autocorrelate(series_of(record, channel), max_lag, record.sampling_interval, norm);
}

Correlation autocorrelate_brute_force(const std::vector<double>& series, std::size_t max_lag,
                                      double sampling_interval, CorrelationNorm norm) {
  check_lag(max_lag, series.size(), sampling_interval);
  const auto x = centered(series);
  Correlation c;
  c.sampling_interval = sampling_interval;
  c.norm = norm;
  c.values.assign(max_lag, 0.0);
  for (std::size_t n = 0; n < max_lag; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i + n < x.size(); ++i) sum += x[i] * x[i + n];
    c.values[n] = sum;
  }
  normalise(c, x.size());
  return c;
}

Correlation truncate(const Correlation& corr, std::size_t max_lag) {
  if (max_lag == 0 || max_lag > corr.values.size()) {
    throw std::invalid_argument("truncate: requested length exceeds the correlation");
  }
  Correlation out = corr;
  out.values.resize(max_lag);
  return out;
}

Spectrum power_spectrum(const Correlation& corr, Window window, std::size_t zero_pad) {
  const std::size_t n = corr.values.size();
  if (n == 0) throw std::invalid_argument("power_spectrum: empty correlation");
  if (zero_pad == 0) throw std::invalid_argument("power_spectrum: zero_pad must be >= 1");
  const std::size_t length = fft_size(n * zero_pad);
  std::vector<double> padded(length, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // lag window: one-sided half of a Hann window, 1 at lag 0
    const double w = window == Window::hann
                         ? 0.5 * (1.0 + std::cos(kPi * static_cast<double>(i) / static_cast<double>(n)))
                         : 1.0;
    padded[i] = w * corr.values[i];
  }
  const auto bins = rfft(padded);

  Spectrum s;
  s.correlation_length = n;
  s.sampling_interval = corr.sampling_interval;
  s.resolution = 1.0 / (static_cast<double>(n) * corr.sampling_interval);
  s.bin_spacing = 1.0 / (static_cast<double>(length) * corr.sampling_interval);
  s.frequencies.resize(bins.size());
  s.power.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const bool edge = k == 0 || (length % 2 == 0 && k == length / 2);
    s.frequencies[k] = static_cast<double>(k) * s.bin_spacing;
    s.power[k] = (edge ? 1.0 : 2.0) * std::norm(bins[k]) / static_cast<double>(length);
  }
  return s;
}

double fourier_limited_fwhm(std::size_t n, double sampling_interval) {
  // sinc^2(u) = 1/2 at u = 1.3915573788...
  return 2.0 * 1.3915573788101003 / kPi / (static_cast<double>(n) * sampling_interval);
}

std::optional<PeakFit> fit_peak(const Spectrum& spec, double f_lo, double f_hi,
                                double threshold) {
  const auto& p = spec.power;
  const std::size_t bins = p.size();
  if (bins < 3 || !(f_hi > f_lo)) return std::nullopt;
  const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(f_lo / spec.bin_spacing)));
  const auto last = std::min(bins - 1, static_cast<std::size_t>(std::floor(f_hi / spec.bin_spacing)));
  if (first > last) return std::nullopt;

  std::optional<std::size_t> peak;
  for (std::size_t i = first; i <= last; ++i) {
    const bool left_ok = i == 0 || p[i] >= p[i - 1];
    const bool right_ok = i + 1 == bins || p[i] >= p[i + 1];
    if (left_ok && right_ok && (!peak || p[i] > p[*peak])) peak = i;
  }
  if (!peak || p[*peak] <= threshold * median(p)) return std::nullopt;
  const std::size_t i = *peak;
  if (i == 0 || i + 1 == bins) return std::nullopt;

  PeakFit fit;
  double delta = 0.0;
  if (p[i - 1] > 0.0 && p[i + 1] > 0.0) {
    const double a = std::log(p[i - 1]), b = std::log(p[i]), c = std::log(p[i + 1]);
    const double curvature = a - 2.0 * b + c;
    if (curvature < 0.0) {
      delta = 0.5 * (a - c) / curvature;
      fit.amplitude = std::exp(b - 0.25 * (a - c) * delta);
    }
  } else {
    const double curvature = p[i - 1] - 2.0 * p[i] + p[i + 1];
    if (curvature < 0.0) {
      delta = 0.5 * (p[i - 1] - p[i + 1]) / curvature;
      fit.amplitude = p[i] - 0.25 * (p[i - 1] - p[i + 1]) * delta;
    }
  }
  if (fit.amplitude == 0.0) fit.amplitude = p[i];
  fit.center = (static_cast<double>(i) + delta) * spec.bin_spacing;

  const double half = 0.5 * fit.amplitude;
  std::size_t j = i;
  while (j > 0 && p[j] >= half) --j;
  if (p[j] >= half) return std::nullopt;
  const double left = spec.frequencies[j] + (half - p[j]) / (p[j + 1] - p[j]) * spec.bin_spacing;
  std::size_t k = i;
  while (k + 1 < bins && p[k] >= half) ++k;
  if (p[k] >= half) return std::nullopt;
  const double right =
      spec.frequencies[k - 1] + (p[k - 1] - half) / (p[k - 1] - p[k]) * spec.bin_spacing;
  fit.fwhm = right - left;

  // misfit against the rectangular-window main lobe
  const double width = 1.0 / (static_cast<double>(spec.correlation_length) * spec.sampling_interval);
  double ss = 0.0;
  std::size_t count = 0;
  for (std::size_t q = j; q <= k; ++q) {
    const double u = kPi * (spec.frequencies[q] - fit.center) / width;
    if (std::abs(u) >= kPi) continue;
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    const double r = (p[q] - fit.amplitude * sinc * sinc) / fit.amplitude;
    ss += r * r;
    ++count;
  }
  fit.fit_residual = count > 0 ? std::sqrt(ss / static_cast<double>(count)) : 0.0;
  return fit;
}

LinewidthScaling linewidth_scaling(const std::vector<double>& series, double sampling_interval,
                                   const std::vector<std::size_t>& lengths, double f_lo,
                                   double f_hi, Window window, std::size_t zero_pad,
                                   unsigned threads) {
  if (lengths.empty()) throw std::invalid_argument("linewidth_scaling: no lengths");
  const std::size_t longest = *std::max_element(lengths.begin(), lengths.end());
  const Correlation full = autocorrelate(series, longest, sampling_interval);

  LinewidthScaling out;
  out.points.resize(lengths.size());
  parallel_for(lengths.size(), threads, [&](std::size_t i) {
    const std::size_t n = lengths[i];
    const Spectrum s = power_spectrum(truncate(full, n), window, zero_pad);
    out.points[i] = {n, static_cast<double>(n) * sampling_interval, fit_peak(s, f_lo, f_hi)};
  });

  std::vector<double> x, y;
  for (const auto& pt : out.points) {
    if (!pt.peak || !(pt.peak->fwhm > 0.0)) continue;
    x.push_back(std::log10(pt.duration));
    y.push_back(std::log10(pt.peak->fwhm));
  }
  if (x.size() >= 2) out.loglog = fit_line(x, y);
  return out;
}

}  // namespace qudyne
