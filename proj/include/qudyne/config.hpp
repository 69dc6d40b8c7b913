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

// Run configuration files. Every physical quantity carries its unit in the
// key name (frequency_mhz, tau_us, phase_deg, ...); frequencies and Rabi
// amplitudes are cyclic (value / 2 pi) and converted to rad/s on load.
// Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qudyne/analysis.hpp"
#include "qudyne/experiment.hpp"

namespace qudyne {

inline constexpr int kConfigSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Protocol { plain, cpmg, floquet, odmr, rabi, phase_sweep };

std::string to_string(Protocol p);

struct AnalysisConfig {
  Channel channel = Channel::counts;
  std::optional<std::size_t> max_lag;  // default: half the record
  Window window = Window::rectangular;
  CorrelationNorm norm = CorrelationNorm::unbiased;
  std::size_t zero_pad = 8;
  std::vector<std::pair<double, double>> search_hz;  // peak windows
  std::vector<std::size_t> lengths;                  // linewidth study
};

struct OdmrScanConfig {
  double offset_start = 0.0;  // rad/s
  double offset_stop = 0.0;
  double offset_step = 0.0;
  double probe_amplitude = 0.0;
  double probe_duration = 0.0;
  std::vector<double> rf_frequencies;  // rad/s; 0 means no RF
  double modulation_index = 0.0;

  std::vector<double> offsets() const;
};

struct RabiScanConfig {
  std::vector<double> durations;
  std::vector<int> sidebands;
  double probe_amplitude = 0.0;
  FloquetDressing dressing;
  RabiScanOptions options;
};

struct PhaseSweepConfig {
  std::size_t points = 36;
  std::uint64_t shots_per_point = 10000;

  std::vector<double> phases() const;
};

struct RunConfig {
  std::string name;
  Protocol protocol = Protocol::plain;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  unsigned threads = 0;
  Experiment experiment;  // record protocols and phase sweeps
  AnalysisConfig analysis;
  std::optional<OdmrScanConfig> odmr;
  std::optional<RabiScanConfig> rabi;
  std::optional<PhaseSweepConfig> phase_sweep;
  std::string output_stem;
  bool csv_record = false;
};

// Throws ConfigError with the offending field path.
RunConfig parse_config(const nlohmann::json& doc, const std::string& name = "config");
// Throws ConfigError (schema) or std::ios_base::failure (I/O).
RunConfig load_config(const std::filesystem::path& path);

}  // namespace qudyne
