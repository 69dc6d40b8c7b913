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

// Dressed-state tools: Bessel sideband strengths, the Floquet picture of a
// longitudinally modulated sensor, and the doubly rotated Mollow frame.

#include <optional>
#include <string>
#include <vector>

#include "qudyne/core.hpp"

namespace qudyne {

inline constexpr int kBesselMaxOrder = 50;
inline constexpr double kBesselMaxArgument = 50.0;
inline constexpr int kSidebandTruncation = 40;

// First-kind Bessel function J_k(x) for |k| <= 50, |x| <= 50. Throws
// std::range_error outside that range.
double bessel_j(int k, double x);

// dJ_k/dx = (J_{k-1} - J_{k+1}) / 2
double bessel_j_derivative(int k, double x);

// J_{-kmax..kmax}(x) for one argument, computed in a single recurrence pass.
class BesselTable {
 public:
  explicit BesselTable(double x, int kmax = kSidebandTruncation);

  double operator()(int k) const;
  double argument() const { return x_; }
  int max_order() const { return kmax_; }
  // sum_k J_k(x)^2 over the table, 1 for a complete table
  double completeness() const;

 private:
  double x_;
  int kmax_;
  std::vector<double> values_;  // index k + kmax
};

struct FloquetDressing {
  double omega_rf = 0.0;      // rad/s
  double amplitude_rf = 0.0;  // rad/s

  static FloquetDressing from_index(double omega_rf, double modulation_index);

  double modulation_index() const { return amplitude_rf / omega_rf; }
  double sideband_strength(int k) const { return bessel_j(k, modulation_index()); }
  void validate() const;
};

struct FloquetLevel {
  int level = 0;  // 0 for |0>-like, 1 for the excited manifold
  int m = 0;      // photon-number index
  double energy = 0.0;
};

struct FloquetTransition {
  int dm = 0;
  double frequency = 0.0;  // omega_s + dm omega_rf
  double strength = 0.0;   // J_dm(x)
};

// Quasi-levels E_{0,m} = m omega_rf and E_{1,m} = omega_s + m omega_rf.
std::vector<FloquetLevel> floquet_levels(const FloquetDressing& d, double omega_s, int m_min,
                                         int m_max);
std::vector<FloquetTransition> floquet_transitions(const FloquetDressing& d, double omega_s,
                                                   int dm_max);

// An effective Hamiltonian with the approximation caveat, if any.
struct EffectiveHamiltonian {
  RotatingFrameHamiltonian h;
  std::optional<std::string> warning;
};

// Sideband-k Hamiltonian for a probe of Rabi amplitude omega1 at detuning
// delta_prime = omega_mw - (omega_s + k omega_rf) from the sideband. Stored in
// the library's sigma/2 convention, so the sigma_z coefficient is -delta_prime/2
// and the drive is J_k(x) omega1 along phi0 - k rf_phase + x sin(rf_phase),
// the last term coming from the RF switching on at t = 0. Warns when
// omega1 / omega_rf >= 0.1.
EffectiveHamiltonian floquet_effective_hamiltonian(const FloquetDressing& d, int k,
                                                   double omega1, double delta_prime,
                                                   double phi0, double rf_phase = 0.0);

// dJ_k(Omega_rf / omega_rf) / dOmega_rf at the operating point.
double sideband_strength_sensitivity(const FloquetDressing& d, int k);

// Mollow dressing: a strong resonant drive G cos(omega0 t) sigma_x plus a probe
// gamma cos(omega1 t + phi) sigma_x, detuning = omega1 - omega0.
struct MollowDressing {
  double drive_amplitude = 0.0;  // G, rad/s
  double detuning = 0.0;         // rad/s
  double probe_amplitude = 0.0;  // gamma, rad/s
  double probe_phase = 0.0;      // rad
  double validity_ratio = 10.0;

  // (G - detuning) / 2, the energy splitting of the dressed frame
  double dressed_detuning() const { return 0.5 * (drive_amplitude - detuning); }
  // |2 detuning| > validity_ratio |dressed_detuning|
  bool valid() const;
};

// Second-rotating-frame Hamiltonian. Its quantisation axis is x:
// drive_x = G - detuning, drive_y = (gamma/2) sin(phi), detuning term
// -(gamma/2) cos(phi).
EffectiveHamiltonian mollow_effective_hamiltonian(const MollowDressing& m);

// Basis changes between the lab frame, the frame rotating about z at omega0,
// and the second frame rotating about x at the probe detuning.
struct MollowFrames {
  double omega0 = 0.0;
  double detuning = 0.0;

  // psi_lab = V(t) psi_first with V = exp(-i omega0 t sigma_z / 2)
  SpinState lab_to_first(const SpinState& lab, double t) const;
  SpinState first_to_lab(const SpinState& first, double t) const;
  // psi_first = W(t) psi_second with W = exp(-i detuning t sigma_x / 2)
  SpinState first_to_second(const SpinState& first, double t) const;
  SpinState second_to_first(const SpinState& second, double t) const;
  SpinState lab_to_second(const SpinState& lab, double t) const;
  SpinState second_to_lab(const SpinState& second, double t) const;
};

}  // namespace qudyne
