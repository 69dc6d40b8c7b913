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

#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include "qudyne/analysis.hpp"
#include "qudyne/svg.hpp"

namespace qudyne::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// For labels.
std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::ios_base::failure("cannot write " + p.string());
  return f;
}

void close_out(std::ofstream& f, const fs::path& p) {
  f.close();
  if (!f) throw std::ios_base::failure("write failed for " + p.string());
}

bool is_record_protocol(Protocol p) {
  return p == Protocol::plain || p == Protocol::cpmg || p == Protocol::floquet;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create " + dir.string() + ": " + ec.message());
}

// Keeps at most `limit` points by taking the largest value of each chunk.
PlotSeries thin(std::string label, const std::vector<double>& x, const std::vector<double>& y,
                std::size_t limit) {
  PlotSeries s{std::move(label), {}, {}, false};
  const std::size_t chunk = std::max<std::size_t>(1, (x.size() + limit - 1) / limit);
  for (std::size_t i = 0; i < x.size(); i += chunk) {
    const std::size_t end = std::min(x.size(), i + chunk);
    const auto best = std::max_element(y.begin() + static_cast<long>(i), y.begin() + static_cast<long>(end));
    s.x.push_back(x[static_cast<std::size_t>(best - y.begin())]);
    s.y.push_back(*best);
  }
  return s;
}

std::vector<fs::path> scan_odmr(const RunConfig& cfg, const fs::path& out_dir, bool svg,
                                std::ostream& log) {
  const OdmrScanConfig& s = *cfg.odmr;
  const auto offsets = s.offsets();
  const fs::path csv = out_dir / (cfg.output_stem + ".odmr.csv");
  auto f = open_out(csv);
  f << "# qudyne scan\n# protocol,odmr\n# name," << cfg.name << "\n# modulation_index,"
    << num(s.modulation_index) << "\n# probe_amplitude_hz," << num(s.probe_amplitude / kTwoPi)
    << "\n# probe_duration_s," << num(s.probe_duration) << "\n";
  f << "rf_frequency_hz,offset_hz,transfer\n";
  Plot plot{"ODMR, x = " + brief(s.modulation_index), "probe offset (MHz)", "population of |-1>"};
  for (double w_rf : s.rf_frequencies) {
    std::optional<RfDriveSpec> rf;
    if (w_rf > 0.0) {
      rf = RfDriveSpec{};
      rf->omega_rf = w_rf;
      rf->amplitude = s.modulation_index * w_rf;
    }
    const OdmrSpectrum spec = odmr_scan(offsets, rf, s.probe_duration, s.probe_amplitude, cfg.threads);
    PlotSeries line{"RF " + brief(w_rf / kTwoPi * 1e-6) + " MHz", {}, {}, false};
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      f << num(w_rf / kTwoPi) << ',' << num(offsets[i] / kTwoPi) << ',' << num(spec.transfer[i])
        << '\n';
      line.x.push_back(offsets[i] / kTwoPi * 1e-6);
      line.y.push_back(spec.transfer[i]);
    }
    plot.series.push_back(std::move(line));
    log << "odmr: RF " << w_rf / kTwoPi * 1e-6 << " MHz, " << offsets.size() << " offsets\n";
  }
  close_out(f, csv);
  std::vector<fs::path> files{csv};
  if (svg) {
    files.push_back(out_dir / (cfg.output_stem + ".odmr.svg"));
    plot.write(files.back());
  }
  return files;
}

std::vector<fs::path> scan_rabi(const RunConfig& cfg, const fs::path& out_dir, bool svg,
                                std::ostream& log) {
  const RabiScanConfig& s = *cfg.rabi;
  std::vector<RabiTrace> traces(s.sidebands.size());
  parallel_for(traces.size(), cfg.threads, [&](std::size_t i) {
    traces[i] = rabi_scan(s.durations, s.sidebands[i], s.dressing, s.probe_amplitude, s.options);
  });
  const double x = s.dressing.modulation_index();
  const fs::path csv = out_dir / (cfg.output_stem + ".rabi.csv");
  const fs::path fits = out_dir / (cfg.output_stem + ".rabi_fit.csv");
  auto f = open_out(csv);
  auto g = open_out(fits);
  const std::string meta = "# qudyne scan\n# protocol,rabi\n# name," + cfg.name +
                           "\n# modulation_index," + num(x) + "\n# rf_frequency_hz," +
                           num(s.dressing.omega_rf / kTwoPi) + "\n# probe_amplitude_hz," +
                           num(s.probe_amplitude / kTwoPi) + "\n";
  f << meta << "sideband,time_s,population\n";
  g << meta << "sideband,fitted_frequency_hz,bessel_frequency_hz,r_squared\n";
  Plot plot{"Sideband Rabi oscillations, x = " + brief(x), "time (us)", "population of |-1>"};
  for (const auto& t : traces) {
    PlotSeries line{"k = " + std::to_string(t.sideband), {}, {}, false};
    for (std::size_t i = 0; i < t.times.size(); ++i) {
      f << t.sideband << ',' << num(t.times[i]) << ',' << num(t.population[i]) << '\n';
      line.x.push_back(t.times[i] * 1e6);
      line.y.push_back(t.population[i]);
    }
    plot.series.push_back(std::move(line));
    const double bessel = std::abs(bessel_j(t.sideband, x)) * s.probe_amplitude / kTwoPi;
    g << t.sideband << ',' << num(t.fit.frequency / kTwoPi) << ',' << num(bessel) << ','
      << num(t.fit.r_squared) << '\n';
    log << "rabi: k = " << t.sideband << ", fitted " << t.fit.frequency / kTwoPi * 1e-3
        << " kHz, J_k(x) Omega_1 = " << bessel * 1e-3 << " kHz\n";
  }
  close_out(f, csv);
  close_out(g, fits);
  std::vector<fs::path> files{csv, fits};
  if (svg) {
    files.push_back(out_dir / (cfg.output_stem + ".rabi.svg"));
    plot.write(files.back());
  }
  return files;
}

std::vector<fs::path> scan_phase(const RunConfig& cfg, const fs::path& out_dir, bool svg,
                                 std::ostream& log) {
  const PhaseSweepConfig& s = *cfg.phase_sweep;
  const PhaseSweep sweep = phase_sweep(cfg.experiment, s.phases(), s.shots_per_point, cfg.threads);
  const fs::path csv = out_dir / (cfg.output_stem + ".phase.csv");
  auto f = open_out(csv);
  auto fit_line = [](const char* what, const SinusoidFit& fit) {
    return std::string("# fit_") + what + ",offset," + num(fit.offset) + ",amplitude," +
           num(fit.amplitude) + ",phase_rad," + num(fit.phase) + ",r_squared," +
           num(fit.r_squared) + "\n";
  };
  f << "# qudyne scan\n# protocol,phase-sweep\n# name," << cfg.name << "\n# shots_per_point,"
    << s.shots_per_point << "\n# seed," << cfg.experiment.readout.rng_seed << "\n"
    << fit_line("true_sz", sweep.fit_true_sz) << fit_line("counts", sweep.fit_counts);
  f << "phase_rad,true_sz,mean_counts\n";
  for (std::size_t i = 0; i < sweep.phases.size(); ++i) {
    f << num(sweep.phases[i]) << ',' << num(sweep.true_sz[i]) << ',' << num(sweep.mean_counts[i])
      << '\n';
  }
  close_out(f, csv);
  log << "phase sweep: " << sweep.phases.size() << " points, R^2 " << sweep.fit_true_sz.r_squared
      << " (true_sz), " << sweep.fit_counts.r_squared << " (counts)\n";
  std::vector<fs::path> files{csv};
  if (svg) {
    Plot plot{"Response against signal phase", "signal phase (rad)", "mean counts"};
    PlotSeries data{"counts", sweep.phases, sweep.mean_counts, true};
    PlotSeries model{"fit", {}, {}, false};
    for (int i = 0; i <= 200; ++i) {
      const double p = kTwoPi * i / 200.0;
      model.x.push_back(p);
      model.y.push_back(sweep.fit_counts(p));
    }
    plot.series = {data, model};
    files.push_back(out_dir / (cfg.output_stem + ".phase.svg"));
    plot.write(files.back());
  }
  return files;
}

json peak_json(const std::optional<PeakFit>& p, double lo, double hi) {
  json j{{"window_hz", {lo, hi}}, {"found", p.has_value()}};
  if (p) {
    j["center_hz"] = p->center;
    j["fwhm_hz"] = p->fwhm;
    j["amplitude"] = p->amplitude;
    j["fit_residual"] = p->fit_residual;
  }
  return j;
}

}  // namespace

fs::path record_path(const RunConfig& cfg, const fs::path& out_dir) {
  return out_dir / (cfg.output_stem + (cfg.csv_record ? ".csv" : ".qdr"));
}

std::vector<fs::path> simulate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  if (!is_record_protocol(cfg.protocol)) {
    throw ConfigError("config.protocol", "'" + to_string(cfg.protocol) +
                                             "' is a scan; use the scan command");
  }
  ensure_dir(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const MeasurementRecord rec = run_series(cfg.experiment, cfg.shots, cfg.threads);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const fs::path out = record_path(cfg, out_dir);
  if (cfg.csv_record) {
    write_record_csv(rec, out);
  } else {
    write_record_binary(rec, out);
  }
  double mean = 0.0;
  for (auto c : rec.counts) mean += c;
  mean /= static_cast<double>(rec.size());
  log << cfg.name << " (" << to_string(cfg.protocol) << "): M = " << rec.size()
      << ", T = " << rec.sampling_interval * 1e6 << " us, mean counts " << mean
      << ", seed " << rec.seed << ", runtime " << std::fixed << std::setprecision(2) << elapsed
      << " s\n" << std::defaultfloat << "wrote " << out.string() << '\n';
  return {out};
}

std::vector<fs::path> scan(const RunConfig& cfg, const fs::path& out_dir, bool svg,
                           std::ostream& log) {
  ensure_dir(out_dir);
  switch (cfg.protocol) {
    case Protocol::odmr: return scan_odmr(cfg, out_dir, svg, log);
    case Protocol::rabi: return scan_rabi(cfg, out_dir, svg, log);
    case Protocol::phase_sweep: return scan_phase(cfg, out_dir, svg, log);
    default:
      throw ConfigError("config.protocol", "'" + to_string(cfg.protocol) +
                                               "' produces a record; use the simulate command");
  }
}

int analyze(const fs::path& record_file, const AnalyzeOptions& options, const fs::path& out_dir,
            std::ostream& log) {
  const MeasurementRecord rec = read_record(record_file);
  const AnalysisConfig& a = options.analysis;
  const std::vector<double> series = series_of(rec, a.channel);
  const std::size_t m = series.size();
  const double t = rec.sampling_interval;
  const std::size_t n = a.max_lag.value_or(m / 2);
  if (n == 0 || n >= m) {
    throw ConfigError("analysis.max_lag", "need 0 < N < M (N = " + std::to_string(n) +
                                              ", M = " + std::to_string(m) + ")");
  }
  for (std::size_t len : a.lengths) {
    if (len >= m) throw ConfigError("analysis.lengths", "length " + std::to_string(len) + " >= M");
  }
  ensure_dir(out_dir);
  const std::string stem = options.stem.empty() ? record_file.stem().string() : options.stem;

  int status = kOk;
  json summary{{"record", {{"path", record_file.string()},
                           {"shots", m},
                           {"sampling_interval_s", t},
                           {"seed", rec.seed}}},
               {"channel", a.channel == Channel::counts ? "counts" : "true_sz"},
               {"normalization", a.norm == CorrelationNorm::unbiased ? "unbiased" : "raw"},
               {"window", a.window == Window::hann ? "hann" : "rectangular"},
               {"max_lag", n}};

  if (options.oracle_brute_force) {
    const std::size_t mm = std::min<std::size_t>(m, 10000);
    const std::size_t nn = std::min(n, mm - 1);
    const std::vector<double> head(series.begin(), series.begin() + static_cast<long>(mm));
    const Correlation fast = autocorrelate(head, nn, t, a.norm);
    const Correlation slow = autocorrelate_brute_force(head, nn, t, a.norm);
    double worst = 0.0;
    for (std::size_t k = 0; k < nn; ++k) worst = std::max(worst, std::abs(fast.values[k] - slow.values[k]));
    const bool match = worst <= 1e-9;
    summary["oracle"] = {{"shots", mm}, {"lags", nn}, {"max_abs_difference", worst}, {"match", match}};
    log << "oracle: FFT vs brute-force correlation over " << mm << " shots, " << nn
        << " lags: max |diff| = " << worst << (match ? " (ok)\n" : " (MISMATCH)\n");
    if (!match) status = kOracleMismatch;
  }

  const Correlation corr = autocorrelate(series, n, t, a.norm);
  const Spectrum spec = power_spectrum(corr, a.window, a.zero_pad);
  std::vector<std::pair<double, double>> windows = a.search_hz;
  const bool restricted = !windows.empty();
  if (!restricted) windows.emplace_back(0.0, 0.5 / t);

  std::vector<fs::path> files;
  {
    const fs::path p = out_dir / (stem + ".correlation.csv");
    auto f = open_out(p);
    f << "lag,lag_s,correlation\n";
    for (std::size_t k = 0; k < corr.values.size(); ++k) {
      f << k << ',' << num(static_cast<double>(k) * t) << ',' << num(corr.values[k]) << '\n';
    }
    close_out(f, p);
    files.push_back(p);
  }
  {
    const fs::path p = out_dir / (stem + ".spectrum.csv");
    auto f = open_out(p);
    f << "# resolution_hz," << num(spec.resolution) << "\n# bin_spacing_hz," << num(spec.bin_spacing)
      << "\nfrequency_hz,power\n";
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
      const double fr = spec.frequencies[i];
      const bool inside = std::any_of(windows.begin(), windows.end(), [fr](const auto& w) {
        return fr >= w.first && fr <= w.second;
      });
      if (inside) f << num(fr) << ',' << num(spec.power[i]) << '\n';
    }
    close_out(f, p);
    files.push_back(p);
  }

  std::vector<std::optional<PeakFit>> peaks;
  json peak_list = json::array();
  {
    const fs::path p = out_dir / (stem + ".peaks.csv");
    auto f = open_out(p);
    f << "window_lo_hz,window_hi_hz,found,center_hz,fwhm_hz,amplitude,fit_residual,"
         "fourier_limit_hz\n";
    const double limit = fourier_limited_fwhm(n, t);
    for (const auto& [lo, hi] : windows) {
      peaks.push_back(fit_peak(spec, lo, hi));
      const auto& pk = peaks.back();
      f << num(lo) << ',' << num(hi) << ',' << (pk ? 1 : 0) << ',' << (pk ? num(pk->center) : "")
        << ',' << (pk ? num(pk->fwhm) : "") << ',' << (pk ? num(pk->amplitude) : "") << ','
        << (pk ? num(pk->fit_residual) : "") << ',' << num(limit) << '\n';
      peak_list.push_back(peak_json(pk, lo, hi));
      if (pk) {
        log << "peak in [" << lo << ", " << hi << "] Hz: " << std::setprecision(10) << pk->center
            << std::setprecision(6) << " Hz, FWHM " << pk->fwhm << " Hz (Fourier limit "
            << limit << " Hz)\n";
      } else {
        log << "no peak above the noise floor in [" << lo << ", " << hi << "] Hz\n";
      }
    }
    close_out(f, p);
    files.push_back(p);
  }
  summary["resolution_hz"] = spec.resolution;
  summary["fourier_limit_hz"] = fourier_limited_fwhm(n, t);
  summary["peaks"] = peak_list;

  std::optional<LinewidthScaling> study;
  if (!a.lengths.empty()) {
    study = linewidth_scaling(series, t, a.lengths, windows.front().first, windows.front().second,
                              a.window, a.zero_pad, options.threads);
    const fs::path p = out_dir / (stem + ".linewidth.csv");
    auto f = open_out(p);
    f << "# loglog_slope," << num(study->loglog.slope) << "\n# loglog_intercept,"
      << num(study->loglog.intercept) << "\nlags,duration_s,found,center_hz,fwhm_hz,"
                                         "fourier_limit_hz\n";
    json rows = json::array();
    for (const auto& pt : study->points) {
      f << pt.lags << ',' << num(pt.duration) << ',' << (pt.peak ? 1 : 0) << ','
        << (pt.peak ? num(pt.peak->center) : "") << ',' << (pt.peak ? num(pt.peak->fwhm) : "")
        << ',' << num(fourier_limited_fwhm(pt.lags, t)) << '\n';
      rows.push_back({{"lags", pt.lags},
                      {"duration_s", pt.duration},
                      {"fwhm_hz", pt.peak ? json(pt.peak->fwhm) : json(nullptr)}});
    }
    close_out(f, p);
    files.push_back(p);
    summary["linewidth"] = {{"points", rows}, {"loglog_slope", study->loglog.slope}};
    log << "linewidth: log-log slope " << study->loglog.slope << " over " << study->points.size()
        << " lengths\n";
  }

  if (options.svg) {
    Plot plot{"Spectrum of the autocorrelation", "frequency (Hz)", "power"};
    double lo = windows.front().first, hi = windows.front().second;
    for (const auto& w : windows) lo = std::min(lo, w.first), hi = std::max(hi, w.second);
    std::vector<double> fx, py;
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
      if (spec.frequencies[i] >= lo && spec.frequencies[i] <= hi) {
        fx.push_back(spec.frequencies[i]);
        py.push_back(spec.power[i]);
      }
    }
    plot.series.push_back(thin("power", fx, py, 4000));
    for (const auto& pk : peaks) {
      if (!pk) continue;
      char text[48];
      std::snprintf(text, sizeof text, "%.3f Hz", pk->center);
      plot.markers.push_back({pk->center, text});
    }
    files.push_back(out_dir / (stem + ".spectrum.svg"));
    plot.write(files.back());
    if (study) {
      Plot lw{"Linewidth against correlation length", "N T (s)", "FWHM (Hz)", true, true};
      PlotSeries fitted{"fitted FWHM", {}, {}, true}, limit{"0.886 / (N T)", {}, {}, false};
      for (const auto& pt : study->points) {
        limit.x.push_back(pt.duration);
        limit.y.push_back(fourier_limited_fwhm(pt.lags, t));
        if (!pt.peak) continue;
        fitted.x.push_back(pt.duration);
        fitted.y.push_back(pt.peak->fwhm);
      }
      lw.series = {fitted, limit};
      files.push_back(out_dir / (stem + ".linewidth.svg"));
      lw.write(files.back());
    }
  }

  const fs::path p = out_dir / (stem + ".analysis.json");
  auto f = open_out(p);
  f << summary.dump(2) << '\n';
  close_out(f, p);
  files.push_back(p);
  for (const auto& file : files) log << "wrote " << file.string() << '\n';
  return status;
}

void describe(const RunConfig& cfg, std::ostream& out) {
  out << cfg.name << " (" << to_string(cfg.protocol) << ")\n";
  if (is_record_protocol(cfg.protocol) || cfg.protocol == Protocol::phase_sweep) {
    const Experiment& e = cfg.experiment;
    out << "transition " << std::setprecision(10) << e.transition_frequency / kTwoPi * 1e-6
        << " MHz, reference " << e.reference.frequency / kTwoPi * 1e-6 << " MHz\n"
        << std::setprecision(6);
    for (const auto& tone : e.tones) {
      out << "tone " << std::setprecision(12) << tone.frequency / kTwoPi * 1e-6
          << std::setprecision(6) << " MHz, Rabi " << tone.rabi_amplitude / kTwoPi * 1e-3
          << " kHz, demodulated " << e.reference.demodulation_frequency(tone) / kTwoPi << " Hz\n";
    }
    out << e.sequence.describe();
    out << e.sequence.to_json().dump(2) << '\n';
  } else if (cfg.odmr) {
    out << "ODMR scan: " << cfg.odmr->offsets().size() << " offsets x "
        << cfg.odmr->rf_frequencies.size() << " RF frequencies, x = "
        << cfg.odmr->modulation_index << '\n';
  } else if (cfg.rabi) {
    out << "Rabi scan: " << cfg.rabi->durations.size() << " durations, sidebands";
    for (int k : cfg.rabi->sidebands) out << ' ' << k;
    out << ", x = " << cfg.rabi->dressing.modulation_index() << '\n';
  }
}

void sidebands(const SidebandOptions& o, std::ostream& out) {
  const FloquetDressing d = FloquetDressing::from_index(o.omega_rf, o.modulation_index);
  const auto lines = floquet_transitions(d, o.transition_frequency, o.k_max);
  if (o.csv) {
    out << "k,transition_frequency_hz,bessel_j,relative_strength\n";
    for (const auto& l : lines) {
      out << l.dm << ',' << num(l.frequency / kTwoPi) << ',' << num(l.strength) << ','
          << num(l.strength * l.strength) << '\n';
    }
    return;
  }
  out << "x = " << o.modulation_index << ", RF " << o.omega_rf / kTwoPi * 1e-6 << " MHz\n";
  out << std::setw(4) << "k" << std::setw(22) << "transition (MHz)" << std::setw(14) << "J_k(x)"
      << std::setw(14) << "J_k(x)^2" << '\n';
  for (const auto& l : lines) {
    out << std::setw(4) << l.dm << std::setw(22) << std::fixed << std::setprecision(6)
        << l.frequency / kTwoPi * 1e-6 << std::setw(14) << std::setprecision(6) << l.strength
        << std::setw(14) << l.strength * l.strength << '\n';
  }
  out << std::defaultfloat;
}

DeterminismReport determinism_check(const fs::path& config_dir) {
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(config_dir)) {
    if (entry.path().extension() == ".json") configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) return {false, "no configs in " + config_dir.string()};

  const fs::path scratch =
      fs::temp_directory_path() / ("qudyne-determinism-" + std::to_string(::getpid()));
  std::ostringstream detail, quiet;
  bool identical = true;
  for (const auto& path : configs) {
    const RunConfig base = load_config(path);
    std::vector<std::vector<fs::path>> outputs;
    for (unsigned threads : {1U, 4U}) {
      RunConfig cfg = base;
      cfg.threads = threads;
      const fs::path dir = scratch / base.name / ("t" + std::to_string(threads));
      outputs.push_back(is_record_protocol(cfg.protocol) ? simulate(cfg, dir, quiet)
                                                         : scan(cfg, dir, false, quiet));
    }
    bool same = outputs[0].size() == outputs[1].size();
    for (std::size_t i = 0; same && i < outputs[0].size(); ++i) {
      std::ifstream a(outputs[0][i], std::ios::binary), b(outputs[1][i], std::ios::binary);
      const std::string sa{std::istreambuf_iterator<char>(a), {}};
      const std::string sb{std::istreambuf_iterator<char>(b), {}};
      same = !sa.empty() && sa == sb;
    }
    identical = identical && same;
    detail << base.name << (same ? " identical" : " DIFFERS") << "; ";
  }
  std::error_code ec;
  fs::remove_all(scratch, ec);
  std::string text = detail.str();
  text = std::to_string(configs.size()) + " configs at 1 vs 4 threads: " +
         text.substr(0, text.size() - 2);
  return {identical, text};
}

}  // namespace qudyne::app
