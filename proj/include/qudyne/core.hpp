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

// Two-level sensor dynamics.
//
// Conventions used throughout the library:
//
//   * |0> is the sigma_z = +1 eigenstate, |-1> the sigma_z = -1 eigenstate.
//   * S_z = sigma_z / 2, so <S_z> lies in [-1/2, +1/2] and |0> reads +1/2.
//   * A rotating-frame Hamiltonian is stored as three rates in rad/s,
//       H = detuning/2 sigma_z + drive_x/2 sigma_x + drive_y/2 sigma_y,
//     i.e. every rate is a Bloch-sphere rotation rate and a drive of
//     amplitude Omega produces a pi pulse after Omega t = pi.
//   * A lab-frame tone enters as Omega cos(omega t + phi) sigma_x, which maps
//     onto drive amplitude Omega in the frame rotating at omega.
//   * Drives quoted for the spin-1 operator S_x = sigma_x / sqrt(2) convert
//     through spin1_drive_to_rabi().

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qudyne {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown by the lab-frame integrator when the requested step cannot resolve
// the fastest frequency present.
class StepSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double transverse() const;
  double length() const;
};

struct SpinState {
  cplx c0{1.0, 0.0};  // amplitude of |0>
  cplx c1{0.0, 0.0};  // amplitude of |-1>

  static SpinState ground() { return {}; }
  // (|0> + e^{i phase} |-1>) / sqrt(2)
  static SpinState superposition(double phase);

  double norm() const;
  BlochVector bloch() const;
};

struct RotatingFrameHamiltonian {
  double detuning = 0.0;
  double drive_x = 0.0;
  double drive_y = 0.0;

  // Drive of amplitude `rabi` along the axis at angle `phase` in the xy plane.
  static RotatingFrameHamiltonian polar(double rabi, double phase, double detuning = 0.0);

  double generalized_rabi() const;
  double drive_amplitude() const;
};

struct Propagator {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();

  static Propagator identity() { return {}; }
  // Instantaneous rotation by `angle` about the equatorial axis at `phase`.
  static Propagator rotation(double angle, double phase);
  // Rotation by `angle` about z.
  static Propagator z_rotation(double angle);

  bool is_unitary(double tol = 1e-10) const;
};

// Left operand acts last: (a * b) applies b first, then a.
Propagator operator*(const Propagator& a, const Propagator& b);

struct DecayParams {
  double t1 = 2e-3;
  double t2_star = 50e-6;
  double t2 = 300e-6;
  double t1_rho = 2e-3;
  bool enabled = false;

  // Throws std::invalid_argument when enabled and the lifetimes are inconsistent.
  void validate() const;
};

// Which transverse lifetime governs a stretch of evolution.
enum class DecayChannel { free_precession, spin_locked };

enum class ResponseForm { exact, small_angle };

// Scales a drive written against S_x = sigma_x / sqrt(2) onto the Rabi rate
// used by this library.
constexpr double spin1_drive_to_rabi(double omega_spin1) {
  return omega_spin1 / 1.41421356237309504880;
}

// exp(-i H t) for a time-independent rotating-frame Hamiltonian.
Propagator closed_form_propagator(const RotatingFrameHamiltonian& h, double t);

SpinState evolve(const SpinState& state, const Propagator& u);
BlochVector evolve(const BlochVector& r, const Propagator& u);

double expect_sz(const SpinState& state);
inline double expect_sz(const BlochVector& r) { return 0.5 * r.z; }

// <S_z> after evolving |psi_init(phi_ref)> for time t under a drive of
// amplitude omega at phase phi0 with the given detuning. The small-angle
// form is (omega t / 2) sin(phi_ref - phi0).
double phase_response(double omega, double detuning, double phi0, double phi_ref, double t,
                      ResponseForm form = ResponseForm::exact);

// Tone coupling as amplitude * cos(frequency t + phase) sigma_x.
struct LabTone {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

// Longitudinal modulation of the splitting: adds amplitude * cos(frequency t + phase)
// to the transition frequency.
struct LongitudinalDrive {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct LabDrive {
  double transition_frequency = 0.0;
  std::vector<LabTone> tones;
  std::optional<LongitudinalDrive> rf;

  RotatingFrameHamiltonian at(double t) const;
  double fastest_frequency() const;
  // Largest step accepted by the lab-frame integrator.
  double max_step() const;
};

// Integrates the lab-frame Schroedinger equation with midpoint-sampled
// piecewise-constant propagators. Throws StepSizeError if dt > max_step().
SpinState lab_frame_integrate(const LabDrive& drive, double dt, double duration,
                              const SpinState& initial = SpinState::ground());

// States at each requested (non-decreasing) time.
std::vector<SpinState> lab_frame_trajectory(const LabDrive& drive, double dt,
                                            const std::vector<double>& times,
                                            const SpinState& initial = SpinState::ground());

// Maps a lab-frame state at time t into the frame rotating at frame_frequency.
SpinState to_rotating_frame(const SpinState& lab, double frame_frequency, double t);

// Phenomenological relaxation: transverse components decay with T2* (or T1rho
// when spin locked), z relaxes towards equilibrium_z with T1.
BlochVector apply_decay(const BlochVector& r, const DecayParams& decay, double t,
                        DecayChannel channel = DecayChannel::free_precession,
                        double equilibrium_z = 0.0);
BlochVector apply_decay(const SpinState& state, const DecayParams& decay, double t,
                        DecayChannel channel = DecayChannel::free_precession,
                        double equilibrium_z = 0.0);

}  // namespace qudyne
