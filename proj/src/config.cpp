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

#include "qudyne/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace qudyne {

namespace {

using nlohmann::json;

constexpr double kMHz = kTwoPi * 1e6;
constexpr double kKHz = kTwoPi * 1e3;
constexpr double kDeg = kPi / 180.0;

// Typed access to one JSON object that remembers which keys were read, so
// anything left over can be reported as unknown.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  const std::string& path() const { return path_; }
  bool has(const std::string& key) const { return j_->contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!has(key)) throw ConfigError(at(key), "required key is missing");
    return (*j_)[key];
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "expected a finite number");
    return d;
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : (used_.insert(key), fallback);
  }

  std::uint64_t count(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0 && !v.is_number_unsigned())) {
      throw ConfigError(at(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    return has(key) ? count(key) : (used_.insert(key), fallback);
  }

  std::string text(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : (used_.insert(key), fallback);
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  Node child(const std::string& key) { return Node(raw(key), at(key)); }

  template <typename T>
  T choice(const std::string& key, const std::vector<std::pair<std::string, T>>& options,
           std::optional<T> fallback = std::nullopt) {
    if (!has(key) && fallback) return *fallback;
    const std::string v = text(key);
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (name == v) return value;
      allowed += (allowed.empty() ? "" : ", ") + name;
    }
    throw ConfigError(at(key), "unknown value '" + v + "' (expected one of " + allowed + ")");
  }

  void finish() const {
    for (const auto& item : j_->items()) {
      if (!used_.count(item.key())) throw ConfigError(at(item.key()), "unknown key");
    }
  }

 private:
  const json* j_;
  std::string path_;
  std::set<std::string> used_;
};

double positive(Node& n, const std::string& key, double value) {
  if (!(value > 0.0)) throw ConfigError(n.at(key), "must be positive");
  return value;
}

double non_negative(Node& n, const std::string& key, double value) {
  if (!(value >= 0.0)) throw ConfigError(n.at(key), "must be non-negative");
  return value;
}

DecayParams parse_decay(Node n) {
  DecayParams d;
  d.enabled = n.flag("enabled", false);
  d.t1 = n.number("t1_ms", d.t1 * 1e3) * 1e-3;
  d.t2_star = n.number("t2_star_us", d.t2_star * 1e6) * 1e-6;
  d.t2 = n.number("t2_us", d.t2 * 1e6) * 1e-6;
  d.t1_rho = n.number("t1_rho_ms", d.t1_rho * 1e3) * 1e-3;
  n.finish();
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(n.path(), e.what());
  }
  return d;
}

ToneSpec parse_tone(Node n) {
  const double amplitude = non_negative(n, "amplitude_mhz", n.number("amplitude_mhz")) * kMHz;
  const double frequency = n.number("frequency_mhz") * kMHz;
  const double phase = n.number("phase_deg", 0.0) * kDeg;
  n.finish();
  return ToneSpec(amplitude, frequency, phase);
}

RfDriveSpec parse_rf(Node n) {
  RfDriveSpec rf;
  rf.omega_rf = positive(n, "frequency_mhz", n.number("frequency_mhz")) * kMHz;
  const bool by_amplitude = n.has("amplitude_mhz");
  const bool by_index = n.has("modulation_index");
  if (by_amplitude == by_index) {
    throw ConfigError(n.at("amplitude_mhz"), "give exactly one of amplitude_mhz or modulation_index");
  }
  rf.amplitude = by_amplitude
                     ? non_negative(n, "amplitude_mhz", n.number("amplitude_mhz")) * kMHz
                     : non_negative(n, "modulation_index", n.number("modulation_index")) * rf.omega_rf;
  rf.phase = n.number("phase_deg", 0.0) * kDeg;
  rf.per_shot_phase_step = n.number("phase_step_deg", 0.0) * kDeg;
  rf.ramp_time = non_negative(n, "ramp_us", n.number("ramp_us", 0.0)) * 1e-6;
  n.finish();
  return rf;
}

double sense_duration(Node& n) {
  const bool ns = n.has("sense_duration_ns");
  const bool us = n.has("sense_duration_us");
  if (ns == us) {
    throw ConfigError(n.at("sense_duration_ns"), "give exactly one of sense_duration_ns or sense_duration_us");
  }
  return ns ? non_negative(n, "sense_duration_ns", n.number("sense_duration_ns")) * 1e-9
            : non_negative(n, "sense_duration_us", n.number("sense_duration_us")) * 1e-6;
}

AnalysisConfig parse_analysis(Node n) {
  AnalysisConfig a;
  a.channel = n.choice<Channel>("channel", {{"counts", Channel::counts}, {"true_sz", Channel::true_sz}},
                                Channel::counts);
  if (n.has("max_lag")) a.max_lag = n.count("max_lag");
  a.window = n.choice<Window>("window", {{"rectangular", Window::rectangular}, {"hann", Window::hann}},
                              Window::rectangular);
  a.norm = n.choice<CorrelationNorm>(
      "normalization", {{"unbiased", CorrelationNorm::unbiased}, {"raw", CorrelationNorm::raw}},
      CorrelationNorm::unbiased);
  a.zero_pad = n.count("zero_pad", 8);
  if (a.zero_pad == 0) throw ConfigError(n.at("zero_pad"), "must be >= 1");
  if (n.has("search_khz")) {
    const json& windows = n.raw("search_khz");
    if (!windows.is_array()) throw ConfigError(n.at("search_khz"), "expected [[lo, hi], ...]");
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const json& w = windows[i];
      const std::string where = n.at("search_khz") + "[" + std::to_string(i) + "]";
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
        throw ConfigError(where, "expected [lo, hi]");
      }
      const double lo = w[0].get<double>() * 1e3, hi = w[1].get<double>() * 1e3;
      if (!(hi > lo)) throw ConfigError(where, "hi must exceed lo");
      a.search_hz.emplace_back(lo, hi);
    }
  }
  if (n.has("lengths")) {
    const json& l = n.raw("lengths");
    if (!l.is_array()) throw ConfigError(n.at("lengths"), "expected an array of lag counts");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_number_unsigned() || l[i].get<std::uint64_t>() == 0) {
        throw ConfigError(n.at("lengths") + "[" + std::to_string(i) + "]", "expected a positive integer");
      }
      a.lengths.push_back(l[i].get<std::size_t>());
    }
  }
  n.finish();
  return a;
}

OdmrScanConfig parse_odmr(Node n) {
  OdmrScanConfig s;
  Node range = n.child("offsets_mhz");
  s.offset_start = range.number("start") * kMHz;
  s.offset_stop = range.number("stop") * kMHz;
  s.offset_step = positive(range, "step_khz", range.number("step_khz")) * kKHz;
  if (!(s.offset_stop > s.offset_start)) throw ConfigError(range.at("stop"), "must exceed start");
  range.finish();
  s.probe_amplitude = positive(n, "probe_amplitude_khz", n.number("probe_amplitude_khz")) * kKHz;
  s.probe_duration = positive(n, "probe_duration_us", n.number("probe_duration_us")) * 1e-6;
  const json& rf = n.raw("rf_frequencies_mhz");
  if (!rf.is_array() || rf.empty()) throw ConfigError(n.at("rf_frequencies_mhz"), "expected a non-empty array");
  for (std::size_t i = 0; i < rf.size(); ++i) {
    if (!rf[i].is_number() || rf[i].get<double>() < 0.0) {
      throw ConfigError(n.at("rf_frequencies_mhz") + "[" + std::to_string(i) + "]", "expected a number >= 0");
    }
    s.rf_frequencies.push_back(rf[i].get<double>() * kMHz);
  }
  s.modulation_index = non_negative(n, "modulation_index", n.number("modulation_index"));
  n.finish();
  return s;
}

RabiScanConfig parse_rabi(Node n) {
  RabiScanConfig s;
  Node range = n.child("durations_us");
  const double start = non_negative(range, "start", range.number("start")) * 1e-6;
  const double stop = range.number("stop") * 1e-6;
  const std::uint64_t count = range.count("count");
  if (count < 4) throw ConfigError(range.at("count"), "need at least 4 points");
  if (!(stop > start)) throw ConfigError(range.at("stop"), "must exceed start");
  range.finish();
  for (std::uint64_t i = 0; i < count; ++i) {
    s.durations.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  const json& sb = n.raw("sidebands");
  if (!sb.is_array() || sb.empty()) throw ConfigError(n.at("sidebands"), "expected a non-empty array");
  for (std::size_t i = 0; i < sb.size(); ++i) {
    if (!sb[i].is_number_integer()) {
      throw ConfigError(n.at("sidebands") + "[" + std::to_string(i) + "]", "expected an integer");
    }
    s.sidebands.push_back(sb[i].get<int>());
  }
  s.probe_amplitude = positive(n, "probe_amplitude_khz", n.number("probe_amplitude_khz")) * kKHz;
  const double omega_rf = positive(n, "rf_frequency_mhz", n.number("rf_frequency_mhz")) * kMHz;
  s.dressing = FloquetDressing::from_index(
      omega_rf, non_negative(n, "modulation_index", n.number("modulation_index")));
  s.options.method = n.choice<RabiMethod>(
      "method", {{"lab_frame", RabiMethod::lab_frame}, {"effective", RabiMethod::effective}},
      RabiMethod::lab_frame);
  s.options.transition_frequency =
      positive(n, "lab_transition_frequency_mhz", n.number("lab_transition_frequency_mhz", 100.0)) * kMHz;
  s.options.steps_per_period = n.number("steps_per_period", 80.0);
  if (s.options.steps_per_period < 20.0) {
    throw ConfigError(n.at("steps_per_period"), "must be >= 20");
  }
  n.finish();
  return s;
}

PhaseSweepConfig parse_phase_sweep(Node n) {
  PhaseSweepConfig s;
  s.points = n.count("points", 36);
  if (s.points < 3) throw ConfigError(n.at("points"), "need at least 3 points");
  s.shots_per_point = n.count("shots_per_point", 10000);
  n.finish();
  return s;
}

}  // namespace

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::plain: return "plain";
    case Protocol::cpmg: return "cpmg";
    case Protocol::floquet: return "floquet";
    case Protocol::odmr: return "odmr";
    case Protocol::rabi: return "rabi";
    case Protocol::phase_sweep: return "phase-sweep";
  }
  return "unknown";
}

std::vector<double> OdmrScanConfig::offsets() const {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((offset_stop - offset_start) / offset_step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(offset_start + offset_step * static_cast<double>(i));
  return out;
}

std::vector<double> PhaseSweepConfig::phases() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(points));
  }
  return out;
}

RunConfig parse_config(const nlohmann::json& doc, const std::string& name) {
  Node root(doc, "config");
  const std::uint64_t version = root.count("schema_version");
  if (version != kConfigSchemaVersion) {
    throw ConfigError(root.at("schema_version"),
                      "unsupported version " + std::to_string(version) + " (expected " +
                          std::to_string(kConfigSchemaVersion) + ")");
  }
  RunConfig cfg;
  cfg.name = root.text("name", name);
  cfg.protocol = root.choice<Protocol>("protocol", {{"plain", Protocol::plain},
                                                    {"cpmg", Protocol::cpmg},
                                                    {"floquet", Protocol::floquet},
                                                    {"odmr", Protocol::odmr},
                                                    {"rabi", Protocol::rabi},
                                                    {"phase-sweep", Protocol::phase_sweep}});
  cfg.seed = root.count("seed", 0);
  cfg.threads = static_cast<unsigned>(root.count("threads", 0));

  const bool records = cfg.protocol == Protocol::plain || cfg.protocol == Protocol::cpmg ||
                       cfg.protocol == Protocol::floquet;
  const bool needs_experiment = records || cfg.protocol == Protocol::phase_sweep;
  if (records) {
    cfg.shots = root.count("shots");
    if (cfg.shots < 1) throw ConfigError(root.at("shots"), "must be >= 1");
  }

  if (needs_experiment) {
    Experiment& e = cfg.experiment;
    Node sensor = root.child("sensor");
    e.transition_frequency =
        positive(sensor, "transition_frequency_mhz", sensor.number("transition_frequency_mhz")) * kMHz;
    if (sensor.has("decay")) e.decay = parse_decay(sensor.child("decay"));
    sensor.finish();

    const json& tones = root.raw("tones");
    if (!tones.is_array()) throw ConfigError(root.at("tones"), "expected an array of tones");
    for (std::size_t i = 0; i < tones.size(); ++i) {
      e.tones.push_back(parse_tone(Node(tones[i], root.at("tones") + "[" + std::to_string(i) + "]")));
    }
    if (cfg.protocol == Protocol::phase_sweep && e.tones.empty()) {
      throw ConfigError(root.at("tones"), "a phase sweep needs at least one tone");
    }

    Node ref = root.child("reference");
    e.reference.frequency = ref.number("frequency_mhz", e.transition_frequency / kMHz) * kMHz;
    e.reference.phase = ref.number("phase_deg", 0.0) * kDeg;
    e.reference.pi_half_duration =
        non_negative(ref, "pi_half_duration_ns", ref.number("pi_half_duration_ns", 0.0)) * 1e-9;
    ref.finish();

    ShotTiming timing;
    if (root.has("timing")) {
      Node t = root.child("timing");
      timing.laser_init = non_negative(t, "laser_init_us", t.number("laser_init_us", 1.0)) * 1e-6;
      timing.readout = non_negative(t, "readout_us", t.number("readout_us", 0.5)) * 1e-6;
      timing.dead_time = non_negative(t, "dead_time_us", t.number("dead_time_us", 0.0)) * 1e-6;
      t.finish();
    }

    Node seq = root.child("sequence");
    try {
      if (cfg.protocol == Protocol::plain) {
        e.sequence = build_plain_heterodyne(sense_duration(seq), e.reference, timing);
      } else if (cfg.protocol == Protocol::cpmg) {
        Node c = seq.child("cpmg");
        CpmgSpec spec;
        spec.tau = positive(c, "tau_us", c.number("tau_us")) * 1e-6;
        spec.n_pulses = static_cast<int>(c.count("n_pulses"));
        if (spec.n_pulses < 1) throw ConfigError(c.at("n_pulses"), "must be >= 1");
        spec.pulse_phase_convention = c.choice<CpmgPhase>(
            "pulse_axis", {{"y", CpmgPhase::y_relative}, {"x", CpmgPhase::x_relative}},
            CpmgPhase::y_relative);
        c.finish();
        e.sequence = build_cpmg_heterodyne(spec, e.reference, timing);
      } else {
        const double duration = sense_duration(seq);
        e.sequence = build_floquet_heterodyne(parse_rf(seq.child("rf")), duration, e.reference, timing);
      }
    } catch (const std::invalid_argument& err) {
      throw ConfigError(root.at("sequence"), err.what());
    }
    seq.finish();

    if (root.has("readout")) {
      Node r = root.child("readout");
      e.readout.mean_photons = non_negative(r, "mean_photons", r.number("mean_photons", 0.1));
      e.readout.contrast = r.number("contrast", 0.3);
      if (!(e.readout.contrast >= 0.0 && e.readout.contrast <= 1.0)) {
        throw ConfigError(r.at("contrast"), "must lie in [0, 1]");
      }
      e.readout.mode = r.choice<ReadoutMode>(
          "mode", {{"poisson", ReadoutMode::poisson}, {"single_shot", ReadoutMode::single_shot}},
          ReadoutMode::poisson);
      r.finish();
    }
    e.readout.rng_seed = cfg.seed;
  }

  if (root.has("analysis")) cfg.analysis = parse_analysis(root.child("analysis"));

  if (cfg.protocol == Protocol::odmr) cfg.odmr = parse_odmr(root.child("scan"));
  if (cfg.protocol == Protocol::rabi) cfg.rabi = parse_rabi(root.child("scan"));
  if (cfg.protocol == Protocol::phase_sweep) cfg.phase_sweep = parse_phase_sweep(root.child("scan"));

  cfg.output_stem = cfg.name;
  if (root.has("output")) {
    Node out = root.child("output");
    cfg.output_stem = out.text("stem", cfg.name);
    cfg.csv_record = out.choice<bool>("format", {{"binary", false}, {"csv", true}}, false);
    out.finish();
  }
  root.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(doc, path.stem().string());
}

}  // namespace qudyne
