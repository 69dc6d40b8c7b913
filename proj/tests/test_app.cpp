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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "app.hpp"
#include "qudyne/dressed.hpp"

using namespace qudyne;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("qudyne-app-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(dir);
  return dir;
}

RunConfig small_run() {
  return parse_config(nlohmann::json::parse(R"({
    "schema_version": 1,
    "name": "small",
    "protocol": "plain",
    "seed": 21,
    "shots": 6000,
    "sensor": { "transition_frequency_mhz": 2870.0 },
    "tones": [ { "amplitude_mhz": 0.4, "frequency_mhz": 2870.04, "phase_deg": 0 } ],
    "reference": { "frequency_mhz": 2870.0 },
    "timing": { "laser_init_us": 1.0, "readout_us": 0.5, "dead_time_us": 0.5 },
    "sequence": { "sense_duration_us": 0.5 },
    "readout": { "mean_photons": 0.1, "contrast": 0.3 },
    "analysis": { "channel": "true_sz", "max_lag": 3000, "search_khz": [[35, 45]],
                  "lengths": [500, 1000, 2000] }
  })"));
}

}  // namespace

TEST_CASE("simulate then analyze") {
  const RunConfig cfg = small_run();
  const fs::path dir = fresh_dir("roundtrip");
  std::ostringstream log;
  const auto written = app::simulate(cfg, dir, log);
  REQUIRE(written.size() == 1);
  CHECK(written[0] == app::record_path(cfg, dir));
  const MeasurementRecord rec = read_record(written[0]);
  CHECK(rec.seed == 21);
  CHECK(rec.size() == 6000);
  CHECK(rec.sampling_interval == doctest::Approx(2.5e-6));

  app::AnalyzeOptions options;
  options.analysis = cfg.analysis;
  options.oracle_brute_force = true;
  options.svg = true;
  CHECK(app::analyze(written[0], options, dir, log) == app::kOk);
  for (const char* suffix : {".correlation.csv", ".spectrum.csv", ".peaks.csv", ".linewidth.csv",
                             ".analysis.json", ".spectrum.svg", ".linewidth.svg"}) {
    CHECK(fs::exists(dir / (std::string("small") + suffix)));
  }
  std::ifstream in(dir / "small.analysis.json");
  const auto summary = nlohmann::json::parse(in);
  CHECK(summary["record"]["seed"] == 21);
  CHECK(summary["oracle"]["match"] == true);
  CHECK(summary["max_lag"] == 3000);
  REQUIRE(summary["peaks"].size() == 1);
  CHECK(summary["peaks"][0]["center_hz"].get<double>() == doctest::Approx(40000.0).epsilon(1e-3));
  fs::remove_all(dir);
}

TEST_CASE("CSV records analyse the same as binary ones") {
  RunConfig cfg = small_run();
  const fs::path dir = fresh_dir("csv");
  std::ostringstream log;
  const auto bin = app::simulate(cfg, dir, log).front();
  cfg.csv_record = true;
  const auto csv = app::simulate(cfg, dir, log).front();
  CHECK(csv.extension() == ".csv");
  app::AnalyzeOptions options;
  options.analysis = cfg.analysis;
  options.stem = "from_bin";
  app::analyze(bin, options, dir, log);
  options.stem = "from_csv";
  app::analyze(csv, options, dir, log);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(slurp(dir / "from_bin.peaks.csv") == slurp(dir / "from_csv.peaks.csv"));
  fs::remove_all(dir);
}

TEST_CASE("analysis rejects lags beyond the record") {
  const RunConfig cfg = small_run();
  const fs::path dir = fresh_dir("lags");
  std::ostringstream log;
  const auto rec = app::simulate(cfg, dir, log).front();
  app::AnalyzeOptions options;
  options.analysis.max_lag = 6000;
  CHECK_THROWS_AS(app::analyze(rec, options, dir, log), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("describe and sideband table") {
  std::ostringstream text;
  app::describe(small_run(), text);
  CHECK(text.str().find("sense") != std::string::npos);
  CHECK(text.str().find("\"segments\"") != std::string::npos);

  std::ostringstream csv;
  app::sidebands({kTwoPi * 1.45e6, 1.72, kTwoPi * 100e6, 2, true}, csv);
  std::istringstream lines(csv.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "k,transition_frequency_hz,bessel_j,relative_strength");
  int rows = 0;
  while (std::getline(lines, row)) {
    if (row.rfind("0,", 0) == 0) {
      std::istringstream cells(row);
      std::string k, f, j, s;
      std::getline(cells, k, ',');
      std::getline(cells, f, ',');
      std::getline(cells, j, ',');
      std::getline(cells, s, ',');
      CHECK(std::stod(f) == doctest::Approx(100e6));
      CHECK(std::stod(j) == doctest::Approx(bessel_j(0, 1.72)));
      CHECK(std::stod(s) == doctest::Approx(bessel_j(0, 1.72) * bessel_j(0, 1.72)));
    }
    ++rows;
  }
  CHECK(rows == 5);
}
