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

#include "qudyne/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qudyne {

namespace {

const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;

  double map(double v) const { return log ? std::log10(v) : v; }
  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double fraction(double v) const { return (map(v) - lo) / (hi - lo); }

  void fit(const std::vector<double>& values) {
    double a = std::numeric_limits<double>::infinity(), b = -a;
    for (double v : values) {
      if (!usable(v)) continue;
      a = std::min(a, map(v));
      b = std::max(b, map(v));
    }
    if (!std::isfinite(a)) a = 0.0, b = 1.0;
    if (b - a < 1e-12 * std::max(1.0, std::abs(a))) a -= 0.5, b += 0.5;
    const double pad = 0.05 * (b - a);
    a -= pad;
    b += pad;
    lo = a;
    hi = b;
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
      out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
  }
};

std::string label(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

}  // namespace

std::string Plot::to_svg(int width, int height) const {
  const double left = 80, right = 20, top = 40, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;

  Axis ax{log_x}, ay{log_y};
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  ax.fit(xs);
  ay.fit(ys);
  auto px = [&](double v) { return left + pw * ax.fraction(v); };
  auto py = [&](double v) { return top + ph * (1.0 - ay.fraction(v)); };

  std::ostringstream out;
  out << std::setprecision(7);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    out << "<line x1=\"" << x << "\" y1=\"" << top + ph << "\" x2=\"" << x << "\" y2=\""
        << top + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
        << label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << label(t)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << top + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  out << "<clipPath id=\"area\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
      << "\" height=\"" << ph << "\"/></clipPath>\n<g clip-path=\"url(#area)\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kColours[i % std::size(kColours)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.markers) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!ax.usable(s.x[k]) || !ay.usable(s.y[k])) continue;
        out << "<circle cx=\"" << px(s.x[k]) << "\" cy=\"" << py(s.y[k])
            << "\" r=\"2.5\" fill=\"" << colour << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t k = 0; k < n; ++k) {
        if (!ax.usable(s.x[k]) || !ay.usable(s.y[k])) continue;
        out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
      }
      out << "\"/>\n";
    }
  }
  for (std::size_t i = 0; i < markers.size(); ++i) {
    const auto& m = markers[i];
    if (!ax.usable(m.x)) continue;
    const double x = px(m.x);
    out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << x + 3 << "\" y=\"" << top + ph - 8 - 14 * static_cast<double>(i % 4)
        << "\" fill=\"gray\">"
        << escape(m.label) << "</text>\n";
  }
  out << "</g>\n";

  // legend
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label.empty()) continue;
    const double y = top + 16 + 16 * static_cast<double>(i);
    out << "<rect x=\"" << left + pw - 170 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
        << kColours[i % std::size(kColours)] << "\"/>\n";
    out << "<text x=\"" << left + pw - 155 << "\" y=\"" << y << "\">" << escape(series[i].label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void Plot::write(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path.string());
  f << to_svg();
  if (!f) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace qudyne
