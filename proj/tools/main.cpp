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

// qudyne command-line front end.
//
// Exit codes: 0 success, 1 oracle mismatch, 2 configuration or usage error,
// 3 I/O failure, 4 malformed record.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app.hpp"

namespace fs = std::filesystem;
using namespace qudyne;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir = ".";
  bool svg = false;
};

RunConfig load(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.experiment.readout.rng_seed = *c.seed;
  }
  if (c.threads) cfg.threads = *c.threads;
  return cfg;
}

Channel parse_channel(const std::string& s) {
  if (s == "counts") return Channel::counts;
  if (s == "true_sz") return Channel::true_sz;
  throw ConfigError("--channel", "expected counts or true_sz");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"qudyne: heterodyne sensing simulator and demodulation pipeline"};
  cli.require_subcommand(1);

  Common common;
  auto* sim = cli.add_subcommand("simulate", "run a shot series and write the record");
  auto* scan = cli.add_subcommand("scan", "run an ODMR, Rabi or phase-sweep scan");
  auto* describe = cli.add_subcommand("describe", "print the compiled pulse sequence");
  for (auto* sub : {sim, scan, describe}) {
    sub->add_option("-c,--config", common.config, "run configuration (JSON)")->required();
  }
  for (auto* sub : {sim, scan}) {
    sub->add_option("--seed", common.seed, "override the configured seed");
    sub->add_option("--threads", common.threads, "worker threads (0 = all cores)");
    sub->add_option("-o,--out-dir", common.out_dir, "output directory");
  }
  scan->add_flag("--svg", common.svg, "also write an SVG plot");

  auto* analyze = cli.add_subcommand("analyze", "correlate a record and fit spectral peaks");
  std::string record, channel, window, norm, stem;
  std::optional<std::size_t> max_lag, zero_pad;
  std::vector<std::size_t> lengths;
  std::vector<double> search_khz;
  bool oracle = false;
  analyze->add_option("record", record, "record file (.qdr or .csv)")->required();
  analyze->add_option("-c,--config", common.config, "take the analysis block from this config");
  analyze->add_option("--threads", common.threads, "worker threads (0 = all cores)");
  analyze->add_option("-o,--out-dir", common.out_dir, "output directory");
  analyze->add_flag("--svg", common.svg, "write spectrum and linewidth plots");
  analyze->add_option("--lengths", lengths, "correlation lengths N for the linewidth study")
      ->delimiter(',');
  analyze->add_option("--max-lag", max_lag, "correlation length N (default M/2)");
  analyze->add_option("--channel", channel, "counts or true_sz");
  analyze->add_option("--window", window, "rectangular or hann");
  analyze->add_option("--norm", norm, "unbiased or raw");
  analyze->add_option("--zero-pad", zero_pad, "FFT zero-padding factor");
  analyze->add_option("--search-khz", search_khz, "peak windows lo,hi[,lo,hi...] in kHz")
      ->delimiter(',');
  analyze->add_option("--stem", stem, "output file stem (default: record name)");
  analyze->add_flag("--oracle-brute-force", oracle,
                    "cross-check the FFT correlation against the direct sum");

  auto* sb = cli.add_subcommand("sidebands", "tabulate Floquet sideband strengths");
  double rf_mhz = 0.0, index = 0.0, transition_mhz = 4139.4;
  int k_max = 5;
  bool csv = false;
  sb->add_option("-c,--config", common.config, "take RF and transition from a floquet config");
  sb->add_option("--rf-mhz", rf_mhz, "RF frequency in MHz");
  sb->add_option("--index", index, "modulation index x = Omega_rf / omega_rf");
  sb->add_option("--transition-mhz", transition_mhz, "sensor transition in MHz");
  sb->add_option("--kmax", k_max, "largest |k|")->check(CLI::Range(0, 50));
  sb->add_flag("--csv", csv, "CSV instead of a table");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kSchemaError;
  }

  try {
    if (sim->parsed()) {
      app::simulate(load(common), common.out_dir, std::cout);
    } else if (scan->parsed()) {
      for (const auto& f : app::scan(load(common), common.out_dir, common.svg, std::cout)) {
        std::cout << "wrote " << f.string() << '\n';
      }
    } else if (describe->parsed()) {
      app::describe(load(common), std::cout);
    } else if (sb->parsed()) {
      app::SidebandOptions o;
      o.k_max = k_max;
      o.csv = csv;
      if (!common.config.empty()) {
        const RunConfig cfg = load(common);
        const auto* sense = cfg.protocol == Protocol::floquet || cfg.protocol == Protocol::phase_sweep
                                ? &cfg.experiment.sequence.sense()
                                : nullptr;
        if (!sense || !sense->rf) throw ConfigError("config.sequence.rf", "config has no RF drive");
        o.omega_rf = sense->rf->omega_rf;
        o.modulation_index = sense->rf->modulation_index();
        o.transition_frequency = cfg.experiment.transition_frequency;
      } else {
        if (!(rf_mhz > 0.0)) throw ConfigError("--rf-mhz", "give --rf-mhz and --index, or --config");
        o.omega_rf = rf_mhz * kTwoPi * 1e6;
        o.modulation_index = index;
        o.transition_frequency = transition_mhz * kTwoPi * 1e6;
      }
      app::sidebands(o, std::cout);
    } else if (analyze->parsed()) {
      app::AnalyzeOptions o;
      if (!common.config.empty()) o.analysis = load(common).analysis;
      if (!lengths.empty()) o.analysis.lengths = lengths;
      if (max_lag) o.analysis.max_lag = *max_lag;
      if (zero_pad) {
        if (*zero_pad == 0) throw ConfigError("--zero-pad", "must be >= 1");
        o.analysis.zero_pad = *zero_pad;
      }
      if (!channel.empty()) o.analysis.channel = parse_channel(channel);
      if (!window.empty()) {
        if (window != "rectangular" && window != "hann") {
          throw ConfigError("--window", "expected rectangular or hann");
        }
        o.analysis.window = window == "hann" ? Window::hann : Window::rectangular;
      }
      if (!norm.empty()) {
        if (norm != "unbiased" && norm != "raw") throw ConfigError("--norm", "expected unbiased or raw");
        o.analysis.norm = norm == "raw" ? CorrelationNorm::raw : CorrelationNorm::unbiased;
      }
      if (!search_khz.empty()) {
        if (search_khz.size() % 2 != 0) throw ConfigError("--search-khz", "expects lo,hi pairs");
        o.analysis.search_hz.clear();
        for (std::size_t i = 0; i < search_khz.size(); i += 2) {
          if (!(search_khz[i + 1] > search_khz[i])) throw ConfigError("--search-khz", "hi must exceed lo");
          o.analysis.search_hz.emplace_back(search_khz[i] * 1e3, search_khz[i + 1] * 1e3);
        }
      }
      o.stem = stem;
      o.svg = common.svg;
      o.oracle_brute_force = oracle;
      o.threads = common.threads.value_or(0);
      return app::analyze(record, o, common.out_dir, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return app::kSchemaError;
  } catch (const RecordFormatError& e) {
    std::cerr << "malformed record: " << e.what() << '\n';
    return app::kMalformedRecord;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return app::kIoError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return app::kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return app::kSchemaError;
  }
  return app::kOk;
}
