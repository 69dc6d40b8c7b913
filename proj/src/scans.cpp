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

#include <algorithm>
#include <cmath>

#include "qudyne/experiment.hpp"

namespace qudyne {

namespace {

double transfer(const BlochVector& r) { return 0.5 * (1.0 - r.z); }

double transfer(const SpinState& s) { return std::norm(s.c1); }

void require_sorted(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument(std::string(what) + ": grid must be sorted");
  }
}

}  // namespace

OdmrSpectrum odmr_scan(const std::vector<double>& probe_offsets,
                       const std::optional<RfDriveSpec>& rf, double probe_duration,
                       double probe_amplitude, unsigned threads) {
  require_sorted(probe_offsets, "odmr_scan");
  if (!(probe_duration >= 0.0)) throw std::invalid_argument("odmr_scan: negative probe duration");
  if (rf) rf->validate();
  OdmrSpectrum out{probe_offsets, std::vector<double>(probe_offsets.size(), 0.0)};
  parallel_for(probe_offsets.size(), threads, [&](std::size_t i) {
    // frame rotating at the probe frequency
    Drive drive;
    drive.detuning = -probe_offsets[i];
    drive.tones.push_back({probe_amplitude, 0.0, 0.0});
    if (rf) {
      drive.rf = RfModulation{rf->amplitude, rf->omega_rf, rf->phase, rf->ramp_time,
                              probe_duration, 0.0};
    }
    out.transfer[i] = transfer(evolve(BlochVector{}, drive_propagator(drive, probe_duration)));
  });
  return out;
}

RabiTrace rabi_scan(const std::vector<double>& durations, int k, const FloquetDressing& d,
                    double omega1, const RabiScanOptions& options) {
  require_sorted(durations, "rabi_scan");
  if (durations.front() < 0.0) throw std::invalid_argument("rabi_scan: negative duration");
  d.validate();
  RabiTrace trace;
  trace.sideband = k;
  trace.times = durations;
  trace.population.assign(durations.size(), 0.0);
  if (std::abs(k) > kSidebandTruncation) return trace;

  if (options.method == RabiMethod::effective) {
    const auto h = floquet_effective_hamiltonian(d, k, omega1, 0.0, 0.0).h;
    for (std::size_t i = 0; i < durations.size(); ++i) {
      trace.population[i] =
          transfer(evolve(SpinState::ground(), closed_form_propagator(h, durations[i])));
    }
  } else {
    LabDrive lab;
    lab.transition_frequency = options.transition_frequency;
    lab.tones.push_back({omega1, options.transition_frequency + k * d.omega_rf, 0.0});
    lab.rf = LongitudinalDrive{d.amplitude_rf, d.omega_rf, 0.0};
    const double dt = kTwoPi / lab.fastest_frequency() / options.steps_per_period;
    const auto states = lab_frame_trajectory(lab, dt, durations);
    for (std::size_t i = 0; i < states.size(); ++i) trace.population[i] = transfer(states[i]);
  }

  const auto [lo, hi] = std::minmax_element(trace.population.begin(), trace.population.end());
  const double span = durations.back() - durations.front();
  if (*hi - *lo < 1e-6 || durations.size() < 4 || span <= 0.0) return trace;

  const double spacing = span / static_cast<double>(durations.size() - 1);
  const double f_min = 0.25 * kTwoPi / span;
  const double f_max = kPi / spacing;
  const auto grid = static_cast<std::size_t>(std::clamp((f_max - f_min) / (0.1 * kTwoPi / span), 100.0, 20000.0));
  trace.fit = fit_sinusoid(durations, trace.population, f_min, f_max, grid);
  return trace;
}

PhaseSweep phase_sweep(const Experiment& exp, const std::vector<double>& phases,
                       std::uint64_t shots_per_point, unsigned threads) {
  if (phases.size() < 3) throw std::invalid_argument("phase_sweep: need at least 3 phases");
  if (exp.tones.empty()) throw std::invalid_argument("phase_sweep: no signal tone to sweep");
  for (double p : phases) {
    if (!(p >= 0.0 && p < kTwoPi)) throw std::invalid_argument("phase_sweep: phases must lie in [0, 2 pi)");
  }
  exp.validate();
  PhaseSweep out;
  out.phases = phases;
  out.true_sz.assign(phases.size(), 0.0);
  out.mean_counts.assign(phases.size(), 0.0);
  parallel_for(phases.size(), threads, [&](std::size_t i) {
    Experiment e = exp;
    e.tones.front().initial_phase = phases[i];
    const double sz = simulate_shot(e, 0);
    out.true_sz[i] = sz;
    if (shots_per_point == 0) {
      out.mean_counts[i] = e.readout.expected_counts(sz);
      return;
    }
    Philox4x32 rng(e.readout.rng_seed, i);
    double total = 0.0;
    for (std::uint64_t j = 0; j < shots_per_point; ++j) total += e.readout.sample(sz, rng);
    out.mean_counts[i] = total / static_cast<double>(shots_per_point);
  });
  out.fit_true_sz = fit_sinusoid_fixed_frequency(phases, out.true_sz, 1.0);
  out.fit_counts = fit_sinusoid_fixed_frequency(phases, out.mean_counts, 1.0);
  return out;
}

PhasePickup cpmg_phase_pickup(const Experiment& exp, std::uint64_t shot_index,
                              std::size_t samples_per_interval) {
  exp.validate();
  if (samples_per_interval < 1) throw std::invalid_argument("cpmg_phase_pickup: no samples");
  const auto& seg = exp.sequence.sense();
  if (!seg.cpmg) throw std::invalid_argument("cpmg_phase_pickup: sensing block has no CPMG");

  // prepared state: everything before the sensing block
  BlochVector r;
  double prep_phase = 0.0;
  for (const auto& s : exp.sequence.segments) {
    if (std::holds_alternative<segment::Sense>(s)) break;
    if (const auto* pulse = std::get_if<segment::ReferencePulse>(&s)) {
      prep_phase = pulse->phase;
      r = evolve(r, Propagator::rotation(pulse->angle, pulse->phase));
    } else if (std::holds_alternative<segment::LaserInit>(s)) {
      r = BlochVector{};
    }
  }
  const double norm = r.transverse();
  if (norm == 0.0) throw std::invalid_argument("cpmg_phase_pickup: prepared state has no coherence");
  const double px = r.x / norm, py = r.y / norm;

  const double period = exp.sampling_interval();
  const double offset = exp.sequence.sense_offset();
  Drive drive;
  if (seg.signals_active && !exp.tones.empty()) {
    drive = superpose(exp.tones, exp.reference, shot_index, period).advanced(offset);
  }
  drive.detuning = exp.transition_frequency - exp.reference.frequency;

  const CpmgSpec& cpmg = *seg.cpmg;
  const Propagator flip = Propagator::rotation(kPi, cpmg.pulse_axis(prep_phase));
  PhasePickup out;
  if (!exp.tones.empty()) out.signal_phase = exp.tones.front().initial_phase;
  out.times.push_back(0.0);
  out.angle.push_back(std::atan2(r.z, r.x * px + r.y * py));

  std::vector<double> edges{0.0};
  for (double p : cpmg.pulse_times()) edges.push_back(p);
  edges.push_back(seg.duration);
  bool toggled = false;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    if (j > 0) {
      r = evolve(r, flip);
      toggled = !toggled;
    }
    const double h = (edges[j + 1] - edges[j]) / static_cast<double>(samples_per_interval);
    for (std::size_t k = 0; k < samples_per_interval; ++k) {
      const double start = edges[j] + h * static_cast<double>(k);
      r = evolve_under(drive.advanced(start), r, h, exp.decay, DecayChannel::spin_locked);
      const BlochVector v = toggled ? evolve(r, flip) : r;
      double a = std::atan2(v.z, v.x * px + v.y * py);
      // unwrap against the previous sample
      const double prev = out.angle.back();
      a += kTwoPi * std::round((prev - a) / kTwoPi);
      out.times.push_back(start + h);
      out.angle.push_back(a);
    }
  }
  out.pickup = out.angle.back();
  return out;
}

PhasePickup max_cpmg_pickup(const Experiment& exp, std::size_t phase_grid) {
  if (exp.tones.empty()) throw std::invalid_argument("max_cpmg_pickup: no signal tone");
  if (phase_grid < 3) throw std::invalid_argument("max_cpmg_pickup: phase grid too small");
  auto evaluate = [&](double phase) {
    Experiment e = exp;
    e.tones.front().initial_phase = wrap_phase(phase);
    return cpmg_phase_pickup(e);
  };
  const double step = kTwoPi / static_cast<double>(phase_grid);
  double best_phase = 0.0;
  double best = -1.0;
  for (std::size_t i = 0; i < phase_grid; ++i) {
    const double phase = step * static_cast<double>(i);
    const double v = std::abs(evaluate(phase).pickup);
    if (v > best) {
      best = v;
      best_phase = phase;
    }
  }
  double lo = best_phase - step, hi = best_phase + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = std::abs(evaluate(x1).pickup), f2 = std::abs(evaluate(x2).pickup);
  for (int iter = 0; iter < 40; ++iter) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = std::abs(evaluate(x1).pickup);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = std::abs(evaluate(x2).pickup);
    }
  }
  return evaluate(0.5 * (lo + hi));
}

}  // namespace qudyne
