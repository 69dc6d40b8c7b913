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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qudyne/signals.hpp"

namespace qudyne {

// Axis of the decoupling pi pulses relative to the preparation pulse.
enum class CpmgPhase {
  y_relative,  // CPMG: shifted by +90 degrees
  x_relative,  // CP: same axis as the preparation pulse
};

struct CpmgSpec {
  double tau = 0.0;  // inter-pulse spacing, s
  int n_pulses = 0;
  CpmgPhase pulse_phase_convention = CpmgPhase::y_relative;

  // pi / tau, the pulsed-Mollow sideband offset in rad/s
  double sideband_frequency() const;
  double total_time() const { return tau * n_pulses; }
  // Pulse centres relative to the start of sensing: tau/2 + j tau.
  std::vector<double> pulse_times() const;
  double pulse_axis(double preparation_phase) const;
  void validate() const;
};

// Longitudinal RF drive applied during sensing. The RF source is a continuous
// oscillator, so shot n sees phase + n omega_rf T plus an extra programmed
// step of n per_shot_phase_step.
struct RfDriveSpec {
  double omega_rf = 0.0;              // rad/s
  double amplitude = 0.0;             // Omega_rf, rad/s
  double phase = 0.0;                 // rad
  double per_shot_phase_step = 0.0;   // rad
  double ramp_time = 0.0;             // s, sin^2 switch-on/off, 0 for abrupt

  double modulation_index() const { return amplitude / omega_rf; }
  bool strong_drive() const { return amplitude >= omega_rf; }
  double phase_at_shot(std::uint64_t n, double sampling_interval) const;
  void validate() const;
};

namespace segment {

struct LaserInit {
  double duration = 0.0;
};

struct ReferencePulse {
  double angle = 0.0;     // rotation angle, rad
  double phase = 0.0;     // axis in the reference frame, rad
  double duration = 0.0;  // zero means instantaneous
};

struct Sense {
  double duration = 0.0;
  bool signals_active = true;
  std::optional<CpmgSpec> cpmg;
  std::optional<RfDriveSpec> rf;
};

struct Readout {
  double duration = 0.0;
};

}  // namespace segment

using Segment = std::variant<segment::LaserInit, segment::ReferencePulse, segment::Sense,
                             segment::Readout>;

double duration_of(const Segment& s);
std::string name_of(const Segment& s);

// Fixed per-shot overhead around the sensing block.
struct ShotTiming {
  double laser_init = 1.0e-6;
  double readout = 0.5e-6;
  double dead_time = 0.0;
};

struct PulseSequence {
  std::vector<Segment> segments;
  double dead_time = 0.0;

  double total_duration() const;
  // Shot-to-shot clock T: segment durations plus dead time.
  double sampling_interval() const;
  const segment::Sense& sense() const;
  // Offset of the sensing segment from the start of the shot.
  double sense_offset() const;
  // Throws std::invalid_argument unless the sequence starts with LaserInit,
  // ends with Readout and holds exactly one Sense segment.
  void validate() const;

  std::string describe() const;
  nlohmann::json to_json() const;
};

PulseSequence build_plain_heterodyne(double sense_duration, const ReferenceSpec& ref,
                                     const ShotTiming& timing = {});
PulseSequence build_cpmg_heterodyne(const CpmgSpec& cpmg, const ReferenceSpec& ref,
                                    const ShotTiming& timing = {});
PulseSequence build_floquet_heterodyne(const RfDriveSpec& rf, double sense_duration,
                                       const ReferenceSpec& ref, const ShotTiming& timing = {});

// Demodulated frequency of a Floquet sideband, omega_signal - dm omega_rf - omega_s.
double floquet_demodulated_frequency(double omega_signal, int dm, double omega_rf,
                                     double omega_s);

// Folds a frequency (Hz) into the first Nyquist zone [0, fs/2].
double alias_frequency(double frequency_hz, double sampling_rate_hz);

}  // namespace qudyne
