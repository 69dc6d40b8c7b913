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

#include <vector>

namespace qudyne {

// y ~ offset + amplitude cos(frequency t + phase), amplitude >= 0
struct SinusoidFit {
  double frequency = 0.0;
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double r_squared = 0.0;

  double operator()(double t) const;
};

// Linear least squares for a known frequency.
SinusoidFit fit_sinusoid_fixed_frequency(const std::vector<double>& t,
                                         const std::vector<double>& y, double frequency);

// Frequency search over [f_min, f_max] (same units as the fit frequency):
// a uniform grid of grid_points candidates followed by golden-section
// refinement of the residual around the best one.
SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y,
                         double f_min, double f_max, std::size_t grid_points = 2000);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qudyne
