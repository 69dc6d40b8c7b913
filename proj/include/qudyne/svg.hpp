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

// Minimal static SVG line/scatter plots for scan and spectrum output.

#include <filesystem>
#include <string>
#include <vector>

namespace qudyne {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // points instead of a polyline
};

struct VerticalMarker {
  double x = 0.0;
  std::string label;
};

struct Plot {
  Plot() = default;
  Plot(std::string title, std::string x_label, std::string y_label, bool log_x = false,
       bool log_y = false)
      : title(std::move(title)), x_label(std::move(x_label)), y_label(std::move(y_label)),
        log_x(log_x), log_y(log_y) {}

  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
  std::vector<VerticalMarker> markers;

  std::string to_svg(int width = 800, int height = 500) const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace qudyne
