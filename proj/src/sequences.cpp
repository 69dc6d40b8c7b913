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

#include "qudyne/sequences.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qudyne {

double CpmgSpec::sideband_frequency() const { return kPi / tau; }

std::vector<double> CpmgSpec::pulse_times() const {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(std::max(n_pulses, 0)));
  for (int j = 0; j < n_pulses; ++j) times.push_back((0.5 + j) * tau);
  return times;
}

double CpmgSpec::pulse_axis(double preparation_phase) const {
  return pulse_phase_convention == CpmgPhase::y_relative ? preparation_phase + 0.5 * kPi
                                                         : preparation_phase;
}

void CpmgSpec::validate() const {
  if (n_pulses < 1) throw std::invalid_argument("CPMG needs at least one pi pulse");
  if (!(tau > 0.0)) throw std::invalid_argument("CPMG pulse spacing must be positive");
}

double RfDriveSpec::phase_at_shot(std::uint64_t n, double sampling_interval) const {
  const double coherent = qudyne::phase_at_shot(omega_rf, phase, n, sampling_interval);
  // the programmed step behaves like an oscillator advancing one step per shot
  return qudyne::phase_at_shot(per_shot_phase_step, coherent, n, 1.0);
}

void RfDriveSpec::validate() const {
  if (!(omega_rf > 0.0)) throw std::invalid_argument("RF frequency must be positive");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("RF amplitude must be non-negative");
  if (!(ramp_time >= 0.0)) throw std::invalid_argument("RF ramp time must be non-negative");
}

double duration_of(const Segment& s) {
  return std::visit([](const auto& seg) { return seg.duration; }, s);
}

std::string name_of(const Segment& s) {
  struct {
    std::string operator()(const segment::LaserInit&) const { return "laser_init"; }
    std::string operator()(const segment::ReferencePulse&) const { return "reference_pulse"; }
    std::string operator()(const segment::Sense&) const { return "sense"; }
    std::string operator()(const segment::Readout&) const { return "readout"; }
  } visitor;
  return std::visit(visitor, s);
}

double PulseSequence::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments) total += duration_of(s);
  return total;
}

double PulseSequence::sampling_interval() const { return total_duration() + dead_time; }

const segment::Sense& PulseSequence::sense() const {
  for (const auto& s : segments) {
    if (const auto* sense = std::get_if<segment::Sense>(&s)) return *sense;
  }
  throw std::invalid_argument("pulse sequence has no sensing segment");
}

double PulseSequence::sense_offset() const {
  double t = 0.0;
  for (const auto& s : segments) {
    if (std::holds_alternative<segment::Sense>(s)) return t;
    t += duration_of(s);
  }
  throw std::invalid_argument("pulse sequence has no sensing segment");
}

void PulseSequence::validate() const {
  if (segments.empty() || !std::holds_alternative<segment::LaserInit>(segments.front())) {
    throw std::invalid_argument("sequence must start with a laser initialisation");
  }
  if (!std::holds_alternative<segment::Readout>(segments.back())) {
    throw std::invalid_argument("sequence must end with a readout");
  }
  int senses = 0;
  for (const auto& s : segments) {
    if (duration_of(s) < 0.0) throw std::invalid_argument("segment durations must be >= 0");
    if (const auto* sense = std::get_if<segment::Sense>(&s)) {
      ++senses;
      if (sense->cpmg) {
        sense->cpmg->validate();
        if (std::abs(sense->cpmg->total_time() - sense->duration) > 1e-12 * sense->duration) {
          throw std::invalid_argument("CPMG total time must equal the sensing duration");
        }
      }
      if (sense->rf) {
        sense->rf->validate();
        if (2.0 * sense->rf->ramp_time > sense->duration) {
          throw std::invalid_argument("RF ramps must fit inside the sensing window");
        }
      }
    }
  }
  if (senses != 1) throw std::invalid_argument("sequence must hold exactly one sensing segment");
  if (dead_time < 0.0) throw std::invalid_argument("dead time must be >= 0");
}

std::string PulseSequence::describe() const {
  std::ostringstream out;
  out << std::setprecision(6);
  double t = 0.0;
  for (const auto& s : segments) {
    const double d = duration_of(s);
    out << std::setw(12) << t * 1e6 << " us  " << std::left << std::setw(16) << name_of(s)
        << std::right << std::setw(12) << d * 1e6 << " us";
    if (const auto* p = std::get_if<segment::ReferencePulse>(&s)) {
      out << "  angle " << p->angle * 180.0 / kPi << " deg, axis " << p->phase * 180.0 / kPi
          << " deg";
    } else if (const auto* sense = std::get_if<segment::Sense>(&s)) {
      out << (sense->signals_active ? "  signals on" : "  signals off");
      if (sense->cpmg) {
        out << ", CPMG " << sense->cpmg->n_pulses << " x " << sense->cpmg->tau * 1e6
            << " us (sideband " << sense->cpmg->sideband_frequency() / kTwoPi * 1e-3 << " kHz)";
      }
      if (sense->rf) {
        out << ", RF " << sense->rf->omega_rf / kTwoPi * 1e-6 << " MHz, x = "
            << sense->rf->modulation_index() << ", step "
            << sense->rf->per_shot_phase_step * 180.0 / kPi << " deg/shot";
      }
    }
    out << '\n';
    t += d;
  }
  out << "dead time " << dead_time * 1e6 << " us, shot interval T = " << sampling_interval() * 1e6
      << " us\n";
  return out.str();
}

nlohmann::json PulseSequence::to_json() const {
  nlohmann::json segs = nlohmann::json::array();
  double t = 0.0;
  for (const auto& s : segments) {
    nlohmann::json j{{"type", name_of(s)}, {"start_s", t}, {"duration_s", duration_of(s)}};
    if (const auto* p = std::get_if<segment::ReferencePulse>(&s)) {
      j["angle_rad"] = p->angle;
      j["phase_rad"] = p->phase;
    } else if (const auto* sense = std::get_if<segment::Sense>(&s)) {
      j["signals_active"] = sense->signals_active;
      if (sense->cpmg) {
        j["cpmg"] = {{"tau_s", sense->cpmg->tau},
                     {"n_pulses", sense->cpmg->n_pulses},
                     {"pulse_times_s", sense->cpmg->pulse_times()},
                     {"sideband_rad_s", sense->cpmg->sideband_frequency()}};
      }
      if (sense->rf) {
        j["rf"] = {{"omega_rf_rad_s", sense->rf->omega_rf},
                   {"amplitude_rad_s", sense->rf->amplitude},
                   {"phase_rad", sense->rf->phase},
                   {"per_shot_phase_step_rad", sense->rf->per_shot_phase_step},
                   {"ramp_time_s", sense->rf->ramp_time},
                   {"modulation_index", sense->rf->modulation_index()}};
      }
    }
    segs.push_back(std::move(j));
    t += duration_of(s);
  }
  return {{"segments", segs},
          {"dead_time_s", dead_time},
          {"total_duration_s", total_duration()},
          {"sampling_interval_s", sampling_interval()}};
}

namespace {

PulseSequence assemble(segment::Sense sense, const ReferenceSpec& ref, const ShotTiming& timing) {
  PulseSequence seq;
  seq.segments.push_back(segment::LaserInit{timing.laser_init});
  seq.segments.push_back(segment::ReferencePulse{0.5 * kPi, 0.0, ref.pi_half_duration});
  seq.segments.push_back(std::move(sense));
  seq.segments.push_back(segment::Readout{timing.readout});
  seq.dead_time = timing.dead_time;
  seq.validate();
  return seq;
}

}  // namespace

PulseSequence build_plain_heterodyne(double sense_duration, const ReferenceSpec& ref,
                                     const ShotTiming& timing) {
  if (!(sense_duration >= 0.0)) {
    throw std::invalid_argument("sensing duration must be non-negative");
  }
  return assemble(segment::Sense{sense_duration, true, std::nullopt, std::nullopt}, ref, timing);
}

PulseSequence build_cpmg_heterodyne(const CpmgSpec& cpmg, const ReferenceSpec& ref,
                                    const ShotTiming& timing) {
  cpmg.validate();
  return assemble(segment::Sense{cpmg.total_time(), true, cpmg, std::nullopt}, ref, timing);
}

PulseSequence build_floquet_heterodyne(const RfDriveSpec& rf, double sense_duration,
                                       const ReferenceSpec& ref, const ShotTiming& timing) {
  if (!(sense_duration > 0.0)) throw std::invalid_argument("sensing duration must be positive");
  rf.validate();
  return assemble(segment::Sense{sense_duration, true, std::nullopt, rf}, ref, timing);
}

double floquet_demodulated_frequency(double omega_signal, int dm, double omega_rf,
                                     double omega_s) {
  return omega_signal - dm * omega_rf - omega_s;
}

double alias_frequency(double frequency_hz, double sampling_rate_hz) {
  double f = std::fmod(std::abs(frequency_hz), sampling_rate_hz);
  if (f > 0.5 * sampling_rate_hz) f = sampling_rate_hz - f;
  return f;
}

}  // namespace qudyne
