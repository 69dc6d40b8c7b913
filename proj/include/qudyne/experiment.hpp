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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qudyne/core.hpp"
#include "qudyne/dressed.hpp"
#include "qudyne/fit.hpp"
#include "qudyne/rng.hpp"
#include "qudyne/sequences.hpp"
#include "qudyne/signals.hpp"

namespace qudyne {

enum class ReadoutMode {
  poisson,      // photon counts with a state-linear mean
  single_shot,  // projective outcome, 1 for |0> and 0 for |-1>
};

struct ReadoutModel {
  double mean_photons = 0.1;
  double contrast = 0.3;
  std::uint64_t rng_seed = 0;
  ReadoutMode mode = ReadoutMode::poisson;

  // mean_photons (1 + 2 contrast <S_z>)
  double expected_counts(double sz) const;
  std::uint32_t sample(double sz, Philox4x32& rng) const;
  void validate() const;
};

struct MeasurementRecord {
  double sampling_interval = 0.0;  // s
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> counts;
  std::vector<double> true_sz;

  std::size_t size() const { return counts.size(); }
  void validate() const;
};

// Everything one shot needs: the compiled sequence, the signals under test,
// the reference oscillator and the sensor.
struct Experiment {
  PulseSequence sequence;
  std::vector<ToneSpec> tones;
  ReferenceSpec reference;
  double transition_frequency = 0.0;  // omega_s, rad/s
  DecayParams decay;
  ReadoutModel readout;

  double sampling_interval() const { return sequence.sampling_interval(); }
  void validate() const;
};

// Bloch vector just before readout of shot n. Signal and RF phases are those
// of continuous oscillators evaluated at t_n = n T.
BlochVector evolve_shot(const Experiment& exp, std::uint64_t n);

// <S_z> just before readout of shot n.
double simulate_shot(const Experiment& exp, std::uint64_t n);

struct ShotResult {
  std::uint32_t count = 0;
  double true_sz = 0.0;
};

// Physics plus readout; the random stream is keyed by (readout seed, n).
ShotResult run_shot(const Experiment& exp, std::uint64_t n);

// Runs shots 0..shots-1 on `threads` workers (0 means hardware concurrency).
// Every shot writes only its own slot, so the record does not depend on the
// worker count.
MeasurementRecord run_series(const Experiment& exp, std::uint64_t shots, unsigned threads = 0);

unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n) on `threads` workers in contiguous chunks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body);

class RecordFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary layout, little-endian:
//   8 bytes magic "QDYNREC1", u32 version (1), u32 reserved (0),
//   f64 sampling interval, u64 shot count M, u64 seed,
//   M x u32 counts, M x f64 true_sz.
void write_record_binary(const MeasurementRecord& record, const std::filesystem::path& path);
MeasurementRecord read_record_binary(const std::filesystem::path& path);
// CSV: '#'-prefixed header lines carrying T and seed, then "shot,count,true_sz".
void write_record_csv(const MeasurementRecord& record, const std::filesystem::path& path);
MeasurementRecord read_record_csv(const std::filesystem::path& path);
// Picks the reader from the file's first bytes.
MeasurementRecord read_record(const std::filesystem::path& path);

// ---- scans -----------------------------------------------------------------

// Population transfer to |-1> after a probe pulse, as a function of the probe
// offset from omega_s. The optional RF drive modulates the splitting during
// the probe with its configured phase.
struct OdmrSpectrum {
  std::vector<double> offsets;   // rad/s
  std::vector<double> transfer;  // population of |-1>
};

OdmrSpectrum odmr_scan(const std::vector<double>& probe_offsets,
                       const std::optional<RfDriveSpec>& rf, double probe_duration,
                       double probe_amplitude, unsigned threads = 0);

enum class RabiMethod {
  effective,  // sideband Hamiltonian J_k(x) Omega_1
  lab_frame,  // direct integration of the modulated lab Hamiltonian
};

struct RabiScanOptions {
  RabiMethod method = RabiMethod::lab_frame;
  double transition_frequency = kTwoPi * 100e6;  // desk-scaled omega_s
  double steps_per_period = 80.0;                // of the fastest lab frequency
};

struct RabiTrace {
  int sideband = 0;
  std::vector<double> times;
  std::vector<double> population;  // of |-1>
  SinusoidFit fit;                 // fit.frequency in rad/s, 0 for a flat trace
};

// Resonant drive of sideband k at omega_s + k omega_rf with Rabi amplitude omega1.
RabiTrace rabi_scan(const std::vector<double>& durations, int k, const FloquetDressing& d,
                    double omega1, const RabiScanOptions& options = {});

struct PhaseSweep {
  std::vector<double> phases;
  std::vector<double> true_sz;
  std::vector<double> mean_counts;
  SinusoidFit fit_true_sz;  // 2 pi periodic
  SinusoidFit fit_counts;
};

// Repeats shot 0 of `exp` with the first tone's initial phase set to each grid
// value; counts are averaged over shots_per_point readouts per phase.
PhaseSweep phase_sweep(const Experiment& exp, const std::vector<double>& phases,
                       std::uint64_t shots_per_point, unsigned threads = 0);

// Rotation of the prepared state out of the equatorial plane during a CPMG
// sensing block, tracked continuously in the toggling frame and unwrapped.
struct PhasePickup {
  double signal_phase = 0.0;
  double pickup = 0.0;  // rad, final unwrapped angle
  std::vector<double> times;
  std::vector<double> angle;
};

PhasePickup cpmg_phase_pickup(const Experiment& exp, std::uint64_t shot_index = 0,
                              std::size_t samples_per_interval = 64);

// Maximum |pickup| over the first tone's initial phase.
PhasePickup max_cpmg_pickup(const Experiment& exp, std::size_t phase_grid = 72);

}  // namespace qudyne

#include "qudyne/detail/parallel.hpp"
