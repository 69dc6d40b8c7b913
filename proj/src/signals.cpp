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

#include "qudyne/signals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qudyne {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
constexpr Wide kTwoPiW = 6.283185307179586476925286766559005768Q;
#else
using Wide = long double;
constexpr Wide kTwoPiW = kTwoPiL;
#endif

long double wrap_long(long double phase) {
  long double r = std::fmod(phase, kTwoPiL);
  if (r < 0.0L) r += kTwoPiL;
  return r;
}

}  // namespace

double wrap_phase(double phase) {
  double r = static_cast<double>(wrap_long(static_cast<long double>(phase)));
  // rounding to double can land exactly on 2 pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

ToneSpec::ToneSpec(double rabi_amplitude, double frequency, double initial_phase)
    : rabi_amplitude(rabi_amplitude), frequency(frequency), initial_phase(wrap_phase(initial_phase)) {
  if (!(rabi_amplitude >= 0.0) || !std::isfinite(rabi_amplitude) || !std::isfinite(frequency)) {
    throw std::invalid_argument("ToneSpec: amplitude must be finite and non-negative");
  }
}

FieldConversion::FieldConversion(double gamma) : gyromagnetic_ratio(gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("FieldConversion: gamma must be positive");
}

double ReferenceSpec::phase_difference(const ToneSpec& tone) const {
  return wrap_phase(phase - tone.initial_phase);
}

double phase_at_shot(double frequency, double initial_phase, std::uint64_t n,
                     double sampling_interval) {
  if (!(sampling_interval > 0.0)) {
    throw std::invalid_argument("phase_at_shot: sampling interval must be positive");
  }
  // omega T times n is formed in quad precision, where the double product
  // omega * T is exact; 80-bit long double loses ~1e-6 rad by n = 1e7
  const Wide total = static_cast<Wide>(initial_phase) +
                     static_cast<Wide>(n) * (static_cast<Wide>(frequency) * sampling_interval);
  const Wide turns = total / kTwoPiW;
  if (!(turns < 4e18 && turns > -4e18)) {
    throw std::invalid_argument("phase_at_shot: accumulated phase out of range");
  }
  Wide whole = static_cast<Wide>(static_cast<long long>(turns));
  if (whole > turns) whole -= 1;
  double r = static_cast<double>(total - whole * kTwoPiW);
  if (r >= kTwoPi || r < 0.0) r = 0.0;
  return r;
}

double phase_at_shot(const ToneSpec& tone, std::uint64_t n, double sampling_interval) {
  return phase_at_shot(tone.frequency, tone.initial_phase, n, sampling_interval);
}

RotatingFrameHamiltonian rotating_components(const ToneSpec& tone, double transition_frequency,
                                             double shot_phase) {
  return RotatingFrameHamiltonian::polar(tone.rabi_amplitude, shot_phase,
                                         transition_frequency - tone.frequency);
}

double RfModulation::envelope(double t) const {
  if (ramp_time <= 0.0) return 1.0;
  const double s = elapsed + t;
  const double edge = std::min(s, window_end - s);
  if (edge >= ramp_time) return 1.0;
  if (edge <= 0.0) return 0.0;
  const double r = std::sin(0.5 * kPi * edge / ramp_time);
  return r * r;
}

RotatingFrameHamiltonian Drive::at(double t) const {
  RotatingFrameHamiltonian h{detuning, 0.0, 0.0};
  if (rf) h.detuning += rf->envelope(t) * rf->amplitude * std::cos(rf->frequency * t + rf->phase);
  for (const auto& tone : tones) {
    const double angle = tone.phase + tone.offset * t;
    h.drive_x += tone.amplitude * std::cos(angle);
    h.drive_y += tone.amplitude * std::sin(angle);
  }
  return h;
}

Drive Drive::advanced(double t0) const {
  Drive out = *this;
  for (auto& tone : out.tones) tone.phase = wrap_phase(tone.phase + tone.offset * t0);
  if (out.rf) {
    out.rf->phase = wrap_phase(out.rf->phase + out.rf->frequency * t0);
    out.rf->elapsed += t0;
  }
  return out;
}

double Drive::max_substep() const {
  double rate = 0.0;
  if (!tones.empty()) {
    for (const auto& tone : tones) rate = std::max(rate, std::abs(tone.offset - tones.front().offset));
  }
  if (rf && rf->amplitude != 0.0) rate = std::max(rate, std::abs(rf->frequency));
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (50.0 * rate);
}

Drive superpose(const std::vector<ToneSpec>& tones, const ReferenceSpec& frame,
                std::uint64_t shot_index, double sampling_interval) {
  if (tones.empty()) throw std::invalid_argument("superpose: at least one tone is required");
  const double frame_phase =
      phase_at_shot(frame.frequency, frame.phase, shot_index, sampling_interval);
  Drive drive;
  drive.tones.reserve(tones.size());
  for (const auto& tone : tones) {
    const double phase = phase_at_shot(tone, shot_index, sampling_interval);
    drive.tones.push_back({tone.rabi_amplitude, tone.frequency - frame.frequency,
                           wrap_phase(phase - frame_phase)});
  }
  return drive;
}

namespace {

// The drive seen from a frame co-rotating with the first tone. Returns the
// frame rate; the lab propagator is z_rotation(rate * duration) * U_frame.
double co_rotate(const Drive& drive, Drive& frame) {
  frame = drive;
  const double rate = drive.tones.empty() ? 0.0 : drive.tones.front().offset;
  frame.detuning -= rate;
  for (auto& tone : frame.tones) tone.offset -= rate;
  return rate;
}

std::size_t substeps(const Drive& frame, double duration) {
  const double limit = frame.max_substep();
  if (!std::isfinite(limit) || duration <= limit) return 1;
  return static_cast<std::size_t>(std::ceil(duration / limit));
}

Propagator stepped(const Drive& frame, double duration) {
  const std::size_t n = substeps(frame, duration);
  const double dt = duration / static_cast<double>(n);
  Propagator u;
  for (std::size_t i = 0; i < n; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * dt;
    u = closed_form_propagator(frame.at(mid), dt) * u;
  }
  return u;
}

Propagator power(Propagator base, std::uint64_t exponent) {
  Propagator out;
  while (exponent > 0) {
    if (exponent & 1U) out = base * out;
    base = base * base;
    exponent >>= 1U;
  }
  return out;
}

// With the first tone removed and no envelope, an RF-modulated drive is
// periodic in the RF period, so long stretches reduce to powers of one period.
bool rf_periodic(const Drive& frame) {
  if (!frame.rf || frame.rf->frequency == 0.0 || frame.rf->ramp_time > 0.0) return false;
  return std::all_of(frame.tones.begin(), frame.tones.end(),
                     [](const RotatingTone& t) { return t.offset == 0.0; });
}

}  // namespace

Propagator drive_propagator(const Drive& drive, double duration) {
  if (duration < 0.0) throw std::invalid_argument("drive_propagator: negative duration");
  Drive frame;
  const double rate = co_rotate(drive, frame);
  Propagator u;
  if (rf_periodic(frame)) {
    const double period = kTwoPi / std::abs(frame.rf->frequency);
    const double whole = std::floor(duration / period);
    if (whole >= 2.0) {
      const Propagator one = stepped(frame, period);
      u = stepped(frame, duration - whole * period) * power(one, static_cast<std::uint64_t>(whole));
    } else {
      u = stepped(frame, duration);
    }
  } else {
    u = stepped(frame, duration);
  }
  return Propagator::z_rotation(rate * duration) * u;
}

BlochVector evolve_under(const Drive& drive, const BlochVector& r, double duration,
                         const DecayParams& decay, DecayChannel channel) {
  if (!decay.enabled) return evolve(r, drive_propagator(drive, duration));
  if (duration < 0.0) throw std::invalid_argument("evolve_under: negative duration");
  Drive frame;
  const double rate = co_rotate(drive, frame);
  const std::size_t n = substeps(frame, duration);
  const double dt = duration / static_cast<double>(n);
  // relaxation is isotropic in the transverse plane, so it commutes with the
  // co-rotating frame change
  BlochVector out = r;
  for (std::size_t i = 0; i < n; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * dt;
    out = evolve(out, closed_form_propagator(frame.at(mid), dt));
    out = apply_decay(out, decay, dt, channel);
  }
  return evolve(out, Propagator::z_rotation(rate * duration));
}

}  // namespace qudyne
