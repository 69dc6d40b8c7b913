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

// Command implementations behind the qudyne executable.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qudyne/config.hpp"

namespace qudyne::app {

enum ExitCode : int {
  kOk = 0,
  kOracleMismatch = 1,
  kSchemaError = 2,
  kIoError = 3,
  kMalformedRecord = 4,
};

// Record file written by simulate: <stem>.qdr, or <stem>.csv for CSV output.
std::filesystem::path record_path(const RunConfig& cfg, const std::filesystem::path& out_dir);

// Runs the shot series and writes the record. Returns the files written.
std::vector<std::filesystem::path> simulate(const RunConfig& cfg,
                                            const std::filesystem::path& out_dir,
                                            std::ostream& log);

// ODMR, Rabi or phase-sweep scans. Returns the files written.
std::vector<std::filesystem::path> scan(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                        bool svg, std::ostream& log);

struct AnalyzeOptions {
  AnalysisConfig analysis;
  std::string stem;
  bool svg = false;
  bool oracle_brute_force = false;
  unsigned threads = 0;
};

// Correlation, spectrum, peak fits and the optional linewidth study.
// Returns kOracleMismatch when the brute-force cross-check disagrees.
int analyze(const std::filesystem::path& record, const AnalyzeOptions& options,
            const std::filesystem::path& out_dir, std::ostream& log);

// Segment timeline as text followed by JSON.
void describe(const RunConfig& cfg, std::ostream& out);

struct SidebandOptions {
  double omega_rf = 0.0;  // rad/s
  double modulation_index = 0.0;
  double transition_frequency = 0.0;  // rad/s
  int k_max = 5;
  bool csv = false;
};

void sidebands(const SidebandOptions& options, std::ostream& out);

struct DeterminismReport {
  bool identical = false;
  std::string detail;
};

// Runs every *.json config in dir with one and with four workers and
// compares the written files byte for byte.
DeterminismReport determinism_check(const std::filesystem::path& config_dir);

}  // namespace qudyne::app
