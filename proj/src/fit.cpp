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

#include "qudyne/fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qudyne {

namespace {

void check_sizes(const std::vector<double>& t, const std::vector<double>& y, std::size_t min) {
  if (t.size() != y.size()) throw std::invalid_argument("fit: x and y differ in length");
  if (t.size() < min) throw std::invalid_argument("fit: too few points");
}

double total_variance(const std::vector<double>& y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  return ss;
}

// Residual sum of squares of the best fixed-frequency fit.
double residual(const std::vector<double>& t, const std::vector<double>& y, double frequency,
                SinusoidFit* out) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double arg = frequency * t[static_cast<std::size_t>(i)];
    a(i, 0) = 1.0;
    a(i, 1) = std::cos(arg);
    a(i, 2) = std::sin(arg);
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const double rss = (a * c - b).squaredNorm();
  if (out != nullptr) {
    out->frequency = frequency;
    out->offset = c(0);
    // c1 cos + c2 sin = A cos(arg + phase) with A cos(phase) = c1, -A sin(phase) = c2
    out->amplitude = std::hypot(c(1), c(2));
    out->phase = std::atan2(-c(2), c(1));
    const double tss = total_variance(y);
    out->r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  }
  return rss;
}

}  // namespace

double SinusoidFit::operator()(double t) const {
  return offset + amplitude * std::cos(frequency * t + phase);
}

SinusoidFit fit_sinusoid_fixed_frequency(const std::vector<double>& t,
                                         const std::vector<double>& y, double frequency) {
  check_sizes(t, y, 3);
  SinusoidFit fit;
  residual(t, y, frequency, &fit);
  return fit;
}

SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double f_min, double f_max, std::size_t grid_points) {
  check_sizes(t, y, 4);
  if (!(f_max > f_min) || grid_points < 3) {
    throw std::invalid_argument("fit_sinusoid: empty frequency range");
  }
  const double step = (f_max - f_min) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_rss = INFINITY;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double rss = residual(t, y, f_min + step * static_cast<double>(i), nullptr);
    if (rss < best_rss) {
      best_rss = rss;
      best = i;
    }
  }
  double lo = f_min + step * (static_cast<double>(best) - 1.0);
  double hi = f_min + step * (static_cast<double>(best) + 1.0);
  lo = std::max(lo, f_min);
  hi = std::min(hi, f_max);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double r1 = residual(t, y, x1, nullptr);
  double r2 = residual(t, y, x2, nullptr);
  for (int iter = 0; iter < 100 && (hi - lo) > 1e-13 * std::max(1.0, std::abs(hi)); ++iter) {
    if (r1 < r2) {
      hi = x2;
      x2 = x1;
      r2 = r1;
      x1 = hi - g * (hi - lo);
      r1 = residual(t, y, x1, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      r1 = r2;
      x2 = lo + g * (hi - lo);
      r2 = residual(t, y, x2, nullptr);
    }
  }
  SinusoidFit fit;
  residual(t, y, 0.5 * (lo + hi), &fit);
  return fit;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  check_sizes(x, y, 2);
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: all x values are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace qudyne
