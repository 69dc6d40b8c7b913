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

#include "qudyne/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace qudyne {

double ReadoutModel::expected_counts(double sz) const {
  return mean_photons * (1.0 + 2.0 * contrast * sz);
}

std::uint32_t ReadoutModel::sample(double sz, Philox4x32& rng) const {
  if (mode == ReadoutMode::single_shot) {
    const double p0 = std::clamp(0.5 + sz, 0.0, 1.0);
    return std::generate_canonical<double, 53>(rng) < p0 ? 1U : 0U;
  }
  const double mean = std::max(0.0, expected_counts(sz));
  if (mean == 0.0) return 0U;
  std::poisson_distribution<int> poisson(mean);
  return static_cast<std::uint32_t>(poisson(rng));
}

void ReadoutModel::validate() const {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("readout: mean photon number must be finite and >= 0");
  }
  if (!(contrast >= 0.0 && contrast <= 1.0)) {
    throw std::invalid_argument("readout: contrast must lie in [0, 1]");
  }
}

void MeasurementRecord::validate() const {
  if (!(sampling_interval > 0.0)) {
    throw std::invalid_argument("record: sampling interval must be positive");
  }
  if (true_sz.size() != counts.size()) {
    throw std::invalid_argument("record: counts and true_sz differ in length");
  }
}

void Experiment::validate() const {
  sequence.validate();
  decay.validate();
  readout.validate();
  if (!(sequence.sampling_interval() > 0.0)) {
    throw std::invalid_argument("experiment: shot interval must be positive");
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

namespace {

BlochVector sense(const Experiment& exp, const segment::Sense& seg, std::uint64_t n,
                  double offset, double prep_phase, BlochVector r) {
  const double period = exp.sampling_interval();
  Drive drive;
  if (seg.signals_active && !exp.tones.empty()) {
    drive = superpose(exp.tones, exp.reference, n, period).advanced(offset);
  }
  drive.detuning = exp.transition_frequency - exp.reference.frequency;
  if (seg.rf) {
    RfModulation rf;
    rf.amplitude = seg.rf->amplitude;
    rf.frequency = seg.rf->omega_rf;
    rf.phase = wrap_phase(seg.rf->phase_at_shot(n, period) + seg.rf->omega_rf * offset);
    rf.ramp_time = seg.rf->ramp_time;
    rf.window_end = seg.duration;
    drive.rf = rf;
  }

  if (!seg.cpmg) return evolve_under(drive, r, seg.duration, exp.decay);

  const CpmgSpec& cpmg = *seg.cpmg;
  const Propagator flip = Propagator::rotation(kPi, cpmg.pulse_axis(prep_phase));
  double t = 0.0;
  for (double pulse : cpmg.pulse_times()) {
    r = evolve_under(drive.advanced(t), r, pulse - t, exp.decay, DecayChannel::spin_locked);
    r = evolve(r, flip);
    t = pulse;
  }
  return evolve_under(drive.advanced(t), r, seg.duration - t, exp.decay,
                      DecayChannel::spin_locked);
}

}  // namespace

BlochVector evolve_shot(const Experiment& exp, std::uint64_t n) {
  BlochVector r;
  double t = 0.0;
  double prep_phase = 0.0;
  const double reference_detuning = exp.transition_frequency - exp.reference.frequency;
  for (const auto& seg : exp.sequence.segments) {
    if (std::holds_alternative<segment::LaserInit>(seg)) {
      r = BlochVector{};
    } else if (const auto* pulse = std::get_if<segment::ReferencePulse>(&seg)) {
      prep_phase = pulse->phase;
      if (pulse->duration == 0.0) {
        r = evolve(r, Propagator::rotation(pulse->angle, pulse->phase));
      } else {
        Drive drive;
        drive.detuning = reference_detuning;
        drive.tones.push_back({pulse->angle / pulse->duration, 0.0, pulse->phase});
        r = evolve_under(drive, r, pulse->duration, exp.decay);
      }
    } else if (const auto* s = std::get_if<segment::Sense>(&seg)) {
      r = sense(exp, *s, n, t, prep_phase, r);
    }
    t += duration_of(seg);
  }
  return r;
}

double simulate_shot(const Experiment& exp, std::uint64_t n) {
  return expect_sz(evolve_shot(exp, n));
}

ShotResult run_shot(const Experiment& exp, std::uint64_t n) {
  ShotResult out;
  out.true_sz = simulate_shot(exp, n);
  Philox4x32 rng(exp.readout.rng_seed, n);
  out.count = exp.readout.sample(out.true_sz, rng);
  return out;
}

MeasurementRecord run_series(const Experiment& exp, std::uint64_t shots, unsigned threads) {
  if (shots < 1) throw std::invalid_argument("run_series: at least one shot is required");
  exp.validate();
  MeasurementRecord record;
  record.sampling_interval = exp.sampling_interval();
  record.seed = exp.readout.rng_seed;
  record.counts.resize(shots);
  record.true_sz.resize(shots);
  parallel_for(shots, threads, [&](std::size_t i) {
    const ShotResult shot = run_shot(exp, i);
    record.counts[i] = shot.count;
    record.true_sz[i] = shot.true_sz;
  });
  return record;
}

}  // namespace qudyne
