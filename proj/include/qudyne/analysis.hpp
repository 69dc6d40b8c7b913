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

#pragma once

// Demodulation pipeline: record -> autocorrelation -> power spectrum -> peak.

#include <cstddef>
#include <optional>
#include <vector>

#include "qudyne/experiment.hpp"

namespace qudyne {

enum class CorrelationNorm {
  unbiased,  // sum over pairs divided by the pair count M - n
  raw,       // plain sum over pairs
};

enum class Channel { counts, true_sz };

struct Correlation {
  std::vector<double> values;  // C(0..max_lag-1)
  double sampling_interval = 0.0;
  CorrelationNorm norm = CorrelationNorm::unbiased;

  std::size_t max_lag() const { return values.size(); }
};

std::vector<double> series_of(const MeasurementRecord& record, Channel channel);

// C(n) for n < max_lag of the mean-subtracted series, via zero-padded FFTs.
// Throws std::invalid_argument unless 0 < max_lag < series length.
Correlation autocorrelate(const std::vector<double>& series, std::size_t max_lag,
                          double sampling_interval,
                          CorrelationNorm norm = CorrelationNorm::unbiased);
Correlation autocorrelate(const MeasurementRecord& record, std::size_t max_lag,
                          Channel channel = Channel::counts,
                          CorrelationNorm norm = CorrelationNorm::unbiased);

// The O(M N) double loop, kept for cross-checks.
Correlation autocorrelate_brute_force(const std::vector<double>& series, std::size_t max_lag,
                                      double sampling_interval,
                                      CorrelationNorm norm = CorrelationNorm::unbiased);

// Leading max_lag values of a longer correlation.
Correlation truncate(const Correlation& corr, std::size_t max_lag);

enum class Window { rectangular, hann };

struct Spectrum {
  std::vector<double> frequencies;  // Hz, 0 .. 1/(2T)
  std::vector<double> power;        // one-sided; sums to sum_n (w_n C_n)^2
  double resolution = 0.0;          // 1 / (N T)
  double bin_spacing = 0.0;         // 1 / (L T) after zero padding
  std::size_t correlation_length = 0;
  double sampling_interval = 0.0;
};

// |DFT|^2 of the (optionally windowed) correlation, zero-padded to at least
// zero_pad * N points.
Spectrum power_spectrum(const Correlation& corr, Window window = Window::rectangular,
                        std::size_t zero_pad = 8);

struct PeakFit {
  double center = 0.0;        // Hz
  double fwhm = 0.0;          // Hz
  double amplitude = 0.0;     // interpolated peak power
  double fit_residual = 0.0;  // RMS misfit to a sinc^2 main lobe, relative to amplitude
};

// Largest local maximum with frequency in [f_lo, f_hi]. The centre comes from
// a three-point quadratic on log-power and the FWHM from linearly
// interpolated half-power crossings. Returns nullopt when the peak is not
// above threshold times the median power, or a half-power crossing is missing.
std::optional<PeakFit> fit_peak(const Spectrum& spec, double f_lo, double f_hi,
                                double threshold = 10.0);

// Expected rectangular-window FWHM of |DFT|^2 for a correlation of N lags.
double fourier_limited_fwhm(std::size_t n, double sampling_interval);

struct LinewidthPoint {
  std::size_t lags = 0;
  double duration = 0.0;  // N T, s
  std::optional<PeakFit> peak;
};

struct LinewidthScaling {
  std::vector<LinewidthPoint> points;
  LinearFit loglog;  // log10(fwhm) against log10(N T) over the fitted points
};

// Autocorrelates once up to the longest length and fits the peak in
// [f_lo, f_hi] for each prefix.
LinewidthScaling linewidth_scaling(const std::vector<double>& series, double sampling_interval,
                                   const std::vector<std::size_t>& lengths, double f_lo,
                                   double f_hi, Window window = Window::rectangular,
                                   std::size_t zero_pad = 8, unsigned threads = 0);

// Nice FFT length (factors 2, 3, 5, 7) no smaller than n.
std::size_t fft_size(std::size_t n);

}  // namespace qudyne
