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

#include "qudyne/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qudyne {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double BlochVector::transverse() const { return std::hypot(x, y); }

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

SpinState SpinState::superposition(double phase) {
  const double s = 1.0 / std::sqrt(2.0);
  return {cplx{s, 0.0}, std::polar(s, phase)};
}

double SpinState::norm() const { return std::norm(c0) + std::norm(c1); }

BlochVector SpinState::bloch() const {
  const cplx coherence = std::conj(c0) * c1;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(c0) - std::norm(c1)};
}

RotatingFrameHamiltonian RotatingFrameHamiltonian::polar(double rabi, double phase,
                                                         double detuning) {
  return {detuning, rabi * std::cos(phase), rabi * std::sin(phase)};
}

double RotatingFrameHamiltonian::generalized_rabi() const {
  return std::sqrt(detuning * detuning + drive_x * drive_x + drive_y * drive_y);
}

double RotatingFrameHamiltonian::drive_amplitude() const { return std::hypot(drive_x, drive_y); }

Propagator Propagator::rotation(double angle, double phase) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  Propagator p;
  p.u << cplx{c, 0.0}, -kI * s * std::polar(1.0, -phase),
         -kI * s * std::polar(1.0, phase), cplx{c, 0.0};
  return p;
}

Propagator Propagator::z_rotation(double angle) {
  Propagator p;
  p.u << std::polar(1.0, -0.5 * angle), cplx{0.0, 0.0},
         cplx{0.0, 0.0}, std::polar(1.0, 0.5 * angle);
  return p;
}

bool Propagator::is_unitary(double tol) const {
  const Eigen::Matrix2cd residual = u.adjoint() * u - Eigen::Matrix2cd::Identity();
  if (residual.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(std::abs(u.determinant()) - 1.0) <= tol;
}

Propagator operator*(const Propagator& a, const Propagator& b) { return {a.u * b.u}; }

void DecayParams::validate() const {
  if (!enabled) return;
  if (!(t2_star > 0.0) || !(t2_star <= t2) || !(t2 <= 2.0 * t1)) {
    throw std::invalid_argument("decay lifetimes must satisfy 0 < T2* <= T2 <= 2 T1");
  }
  if (!(t1_rho > 0.0)) throw std::invalid_argument("T1rho must be positive");
}

Propagator closed_form_propagator(const RotatingFrameHamiltonian& h, double t) {
  if (!finite(h.detuning) || !finite(h.drive_x) || !finite(h.drive_y) || !finite(t)) {
    throw std::invalid_argument("closed_form_propagator: non-finite input");
  }
  if (t < 0.0) throw std::invalid_argument("closed_form_propagator: negative duration");

  const double rate = h.generalized_rabi();
  const double half_angle = 0.5 * rate * t;
  const double c = std::cos(half_angle);
  // sin(rate t / 2) / rate, with its series below rate t < 1e-6
  const double s = rate * t < 1e-6 ? 0.5 * t * (1.0 - half_angle * half_angle / 6.0)
                                   : std::sin(half_angle) / rate;

  Propagator p;
  p.u << cplx{c, -s * h.detuning}, cplx{-s * h.drive_y, -s * h.drive_x},
         cplx{s * h.drive_y, -s * h.drive_x}, cplx{c, s * h.detuning};
  return p;
}

SpinState evolve(const SpinState& state, const Propagator& u) {
  if (std::abs(state.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("evolve: state is not normalized");
  }
  if (!u.is_unitary(1e-9)) throw std::invalid_argument("evolve: propagator is not unitary");
  return {u.u(0, 0) * state.c0 + u.u(0, 1) * state.c1,
          u.u(1, 0) * state.c0 + u.u(1, 1) * state.c1};
}

BlochVector evolve(const BlochVector& r, const Propagator& u) {
  // rho' = U rho U^dagger with rho = (1 + r.sigma) / 2
  Eigen::Matrix2cd rho;
  rho << cplx{0.5 * (1.0 + r.z), 0.0}, cplx{0.5 * r.x, -0.5 * r.y},
         cplx{0.5 * r.x, 0.5 * r.y}, cplx{0.5 * (1.0 - r.z), 0.0};
  const Eigen::Matrix2cd out = u.u * rho * u.u.adjoint();
  return {2.0 * out(0, 1).real(), -2.0 * out(0, 1).imag(), (out(0, 0) - out(1, 1)).real()};
}

double expect_sz(const SpinState& state) {
  return 0.5 * (std::norm(state.c0) - std::norm(state.c1));
}

double phase_response(double omega, double detuning, double phi0, double phi_ref, double t,
                      ResponseForm form) {
  if (t < 0.0) throw std::invalid_argument("phase_response: negative duration");
  if (form == ResponseForm::small_angle) {
    return 0.5 * omega * t * std::sin(phi_ref - phi0);
  }
  const double rate = std::sqrt(omega * omega + detuning * detuning);
  if (rate == 0.0) return 0.0;
  const double half = std::sin(0.5 * rate * t);
  return half * half * omega * detuning * std::cos(phi0 - phi_ref) / (rate * rate) +
         0.5 * std::sin(rate * t) * omega / rate * std::sin(phi_ref - phi0);
}

RotatingFrameHamiltonian LabDrive::at(double t) const {
  double splitting = transition_frequency;
  if (rf) splitting += rf->amplitude * std::cos(rf->frequency * t + rf->phase);
  double transverse = 0.0;
  for (const auto& tone : tones) {
    transverse += tone.amplitude * std::cos(tone.frequency * t + tone.phase);
  }
  // amplitude cos(.) sigma_x == (2 amplitude cos(.)) / 2 sigma_x
  return {splitting, 2.0 * transverse, 0.0};
}

double LabDrive::fastest_frequency() const {
  double fastest = std::abs(transition_frequency);
  double total_drive = 0.0;
  if (rf) {
    fastest = std::abs(transition_frequency) + std::abs(rf->amplitude);
    fastest = std::max(fastest, std::abs(rf->frequency));
  }
  for (const auto& tone : tones) {
    fastest = std::max(fastest, std::abs(tone.frequency));
    total_drive += 2.0 * std::abs(tone.amplitude);
  }
  return std::max(fastest, total_drive);
}

double LabDrive::max_step() const {
  const double fastest = fastest_frequency();
  if (fastest == 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / fastest / 20.0;
}

std::vector<SpinState> lab_frame_trajectory(const LabDrive& drive, double dt,
                                            const std::vector<double>& times,
                                            const SpinState& initial) {
  if (!(dt > 0.0)) throw std::invalid_argument("lab_frame_integrate: dt must be positive");
  if (dt > drive.max_step() * (1.0 + 1e-12)) {
    throw StepSizeError("lab_frame_integrate: dt = " + std::to_string(dt) +
                        " s exceeds 1/20 of the fastest period (" +
                        std::to_string(drive.max_step()) + " s)");
  }
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw std::invalid_argument("lab_frame_integrate: sample times must be sorted and >= 0");
  }

  std::vector<SpinState> out;
  out.reserve(times.size());
  SpinState state = initial;
  double t = 0.0;
  for (double target : times) {
    while (t < target) {
      const double step = std::min(dt, target - t);
      const Propagator u = closed_form_propagator(drive.at(t + 0.5 * step), step);
      state = {u.u(0, 0) * state.c0 + u.u(0, 1) * state.c1,
               u.u(1, 0) * state.c0 + u.u(1, 1) * state.c1};
      t += step;
      // avoid a sliver step from accumulated rounding
      if (target - t < 1e-9 * dt) t = target;
    }
    out.push_back(state);
  }
  return out;
}

SpinState lab_frame_integrate(const LabDrive& drive, double dt, double duration,
                              const SpinState& initial) {
  if (duration < 0.0) throw std::invalid_argument("lab_frame_integrate: negative duration");
  return lab_frame_trajectory(drive, dt, {duration}, initial).front();
}

SpinState to_rotating_frame(const SpinState& lab, double frame_frequency, double t) {
  const double half = 0.5 * frame_frequency * t;
  return {lab.c0 * std::polar(1.0, half), lab.c1 * std::polar(1.0, -half)};
}

BlochVector apply_decay(const BlochVector& r, const DecayParams& decay, double t,
                        DecayChannel channel, double equilibrium_z) {
  if (!decay.enabled || t == 0.0) return r;
  const double transverse_time =
      channel == DecayChannel::spin_locked ? decay.t1_rho : decay.t2_star;
  const double keep = std::exp(-t / transverse_time);
  const double relax = std::exp(-t / decay.t1);
  return {r.x * keep, r.y * keep, equilibrium_z + (r.z - equilibrium_z) * relax};
}

BlochVector apply_decay(const SpinState& state, const DecayParams& decay, double t,
                        DecayChannel channel, double equilibrium_z) {
  return apply_decay(state.bloch(), decay, t, channel, equilibrium_z);
}

}  // namespace qudyne
