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
#include <vector>

#include "qudyne/core.hpp"

namespace qudyne {

// Wraps an angle into [0, 2 pi).
double wrap_phase(double phase);

// Microwave tone under test: rabi_amplitude cos(frequency t + initial_phase).
struct ToneSpec {
  double rabi_amplitude = 0.0;  // rad/s
  double frequency = 0.0;       // rad/s
  double initial_phase = 0.0;   // rad, kept in [0, 2 pi)

  ToneSpec() = default;
  ToneSpec(double rabi_amplitude, double frequency, double initial_phase);
};

struct FieldConversion {
  double gyromagnetic_ratio = 1.76085963e11;  // rad/(s T), free electron

  explicit FieldConversion(double gamma = 1.76085963e11);
  double rabi_from_field(double field_tesla) const { return gyromagnetic_ratio * field_tesla; }
  double field_from_rabi(double rabi) const { return rabi / gyromagnetic_ratio; }
};

// The coherent local oscillator that prepares the sensor in every shot.
struct ReferenceSpec {
  double frequency = 0.0;          // rad/s
  double phase = 0.0;              // rad
  double pi_half_duration = 0.0;   // s, zero for an instantaneous pulse

  // omega_ref - omega
  double demodulation_frequency(const ToneSpec& tone) const { return frequency - tone.frequency; }
  // phi_ref - phi_0
  double phase_difference(const ToneSpec& tone) const;
};

// Phase of a coherent oscillator at the start of shot n: phi0 + n omega T mod 2 pi.
// The per-shot increment is reduced modulo 2 pi in extended precision, so the
// result stays accurate to well below 1e-6 rad for n up to 1e7 at GHz rates.
double phase_at_shot(double frequency, double initial_phase, std::uint64_t n,
                     double sampling_interval);
double phase_at_shot(const ToneSpec& tone, std::uint64_t n, double sampling_interval);

// Single-tone Hamiltonian in the frame rotating with the tone:
// detuning = transition_frequency - tone.frequency, drive along shot_phase.
RotatingFrameHamiltonian rotating_components(const ToneSpec& tone, double transition_frequency,
                                             double shot_phase);

// amplitude/2 (cos(phase + offset t) sigma_x + sin(phase + offset t) sigma_y)
struct RotatingTone {
  double amplitude = 0.0;
  double offset = 0.0;
  double phase = 0.0;
};

// Adds e(t) amplitude cos(frequency t + phase) to the detuning. The envelope
// e rises as sin^2 over ramp_time from the segment start and falls the same
// way before window_end; ramp_time = 0 switches the drive on abruptly.
// `elapsed` is the time since segment start at the drive's t = 0.
struct RfModulation {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  double ramp_time = 0.0;
  double window_end = 0.0;
  double elapsed = 0.0;

  double envelope(double t) const;
};

// Time-dependent rotating-frame drive over one segment. t = 0 is the segment start.
struct Drive {
  double detuning = 0.0;
  std::vector<RotatingTone> tones;
  std::optional<RfModulation> rf;

  RotatingFrameHamiltonian at(double t) const;
  // Same physical drive with the time origin moved to t0.
  Drive advanced(double t0) const;
  // Sub-step used inside a segment: 1/(50 r) for the fastest residual rate r
  // once the first tone is removed by a co-rotating frame. Infinite when the
  // drive is static in that frame.
  double max_substep() const;
};

// Additive drive of all tones in the frame of the reference oscillator, with
// phases taken at the start of shot n.
Drive superpose(const std::vector<ToneSpec>& tones, const ReferenceSpec& frame,
                std::uint64_t shot_index, double sampling_interval);

// Propagator of a drive over [0, duration]. Exact for a single tone without RF
// modulation; otherwise midpoint sub-steps no longer than Drive::max_substep().
Propagator drive_propagator(const Drive& drive, double duration);

// Same evolution on a Bloch vector with relaxation applied after every sub-step.
BlochVector evolve_under(const Drive& drive, const BlochVector& r, double duration,
                         const DecayParams& decay,
                         DecayChannel channel = DecayChannel::free_precession);

}  // namespace qudyne
