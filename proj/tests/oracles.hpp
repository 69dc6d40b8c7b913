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

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qudyne/core.hpp"

namespace oracle {

using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_bin_float_100;

// exp(-i H t) through Eigen's Pade-based matrix exponential on the full matrix.
inline Eigen::Matrix2cd propagator(const qudyne::RotatingFrameHamiltonian& h, double t) {
  using C = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, C(0, -1), C(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd hm = 0.5 * (h.detuning * sz + h.drive_x * sx + h.drive_y * sy);
  const Eigen::Matrix2cd generator = C(0, -t) * hm;
  return generator.exp();
}

// C(n) straight from the definition.
inline std::vector<double> correlation(const std::vector<double>& s, std::size_t max_lag,
                                       bool unbiased) {
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  std::vector<double> c(max_lag, 0.0);
  for (std::size_t n = 0; n < max_lag; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i + n < s.size(); ++i) sum += (s[i] - mean) * (s[i + n] - mean);
    c[n] = unbiased ? sum / static_cast<double>(s.size() - n) : sum;
  }
  return c;
}

// Power series for J_k(x) in 50-digit arithmetic.
inline double bessel_series(int k, double x) {
  const int order = std::abs(k);
  const cpp_bin_float_50 half = cpp_bin_float_50(x) / 2;
  const cpp_bin_float_50 q = half * half;
  cpp_bin_float_50 term = 1;
  for (int i = 1; i <= order; ++i) term *= half / i;
  cpp_bin_float_50 sum = term;
  for (int m = 1; m < 400; ++m) {
    term *= -q / (m * (m + order));
    sum += term;
    if (abs(term) < cpp_bin_float_50("1e-40") && m > half) break;
  }
  double v = static_cast<double>(sum);
  if (k < 0 && order % 2 == 1) v = -v;
  return v;
}

// (phi0 + n omega T) mod 2 pi with every product formed in 100-digit arithmetic.
inline double phase_at_shot(double omega, double phi0, std::uint64_t n, double period) {
  const cpp_bin_float_100 two_pi = boost::math::constants::two_pi<cpp_bin_float_100>();
  cpp_bin_float_100 phase = cpp_bin_float_100(phi0) +
                            cpp_bin_float_100(n) * cpp_bin_float_100(omega) * cpp_bin_float_100(period);
  phase -= floor(phase / two_pi) * two_pi;
  return static_cast<double>(phase);
}

// Smallest distance between two angles.
inline double angle_distance(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * qudyne::kPi);
  return std::abs(d);
}

}  // namespace oracle
