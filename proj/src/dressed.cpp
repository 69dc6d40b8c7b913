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

#include "qudyne/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qudyne {

namespace {

void check_range(int k, double x) {
  if (!std::isfinite(x) || std::abs(x) > kBesselMaxArgument || std::abs(k) > kBesselMaxOrder) {
    std::ostringstream msg;
    msg << "bessel_j: order " << k << " / argument " << x << " outside |k| <= "
        << kBesselMaxOrder << ", |x| <= " << kBesselMaxArgument;
    throw std::range_error(msg.str());
  }
}

// J_0..J_kmax at x > 0 by Miller's downward recurrence, normalised with
// J_0 + 2 sum J_2m = 1.
std::vector<double> miller(double x, int kmax) {
  const double scale = std::max<double>(std::max(kmax, 1), x);
  int start = static_cast<int>(std::ceil(scale + 20.0 + std::sqrt(160.0 * scale)));
  start += start % 2;

  std::vector<double> j(static_cast<std::size_t>(kmax) + 1, 0.0);
  double above = 0.0;   // J_{n+1}
  double current = 1e-300;  // J_n, arbitrary seed
  double norm = 0.0;
  for (int n = start; n >= 0; --n) {
    if (n <= kmax) j[static_cast<std::size_t>(n)] = current;
    if (n % 2 == 0) norm += (n == 0 ? 1.0 : 2.0) * current;
    if (n == 0) break;
    const double below = 2.0 * n / x * current - above;
    above = current;
    current = below;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      for (auto& v : j) v *= 1e-250;
    }
  }
  for (auto& v : j) v /= norm;
  return j;
}

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double bessel_j(int k, double x) {
  check_range(k, x);
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  const int order = std::abs(k);
  double sign = k < 0 ? parity(order) : 1.0;
  if (x < 0.0) sign *= parity(order);
  return sign * miller(std::abs(x), order)[static_cast<std::size_t>(order)];
}

double bessel_j_derivative(int k, double x) {
  check_range(k, x);
  // the neighbouring orders may sit one past the table edge
  auto at = [x](int n) {
    return std::abs(n) > kBesselMaxOrder ? 0.0 : bessel_j(n, x);
  };
  return 0.5 * (at(k - 1) - at(k + 1));
}

BesselTable::BesselTable(double x, int kmax) : x_(x), kmax_(kmax) {
  check_range(kmax, x);
  if (kmax < 0) throw std::range_error("BesselTable: negative order bound");
  values_.assign(2 * static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<double> positive(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (x == 0.0) {
    positive[0] = 1.0;
  } else {
    positive = miller(std::abs(x), kmax);
    if (x < 0.0) {
      for (int k = 1; k <= kmax; k += 2) positive[static_cast<std::size_t>(k)] *= -1.0;
    }
  }
  for (int k = 0; k <= kmax; ++k) {
    const double v = positive[static_cast<std::size_t>(k)];
    values_[static_cast<std::size_t>(kmax + k)] = v;
    values_[static_cast<std::size_t>(kmax - k)] = parity(k) * v;
  }
}

double BesselTable::operator()(int k) const {
  if (std::abs(k) > kmax_) return 0.0;
  return values_[static_cast<std::size_t>(k + kmax_)];
}

double BesselTable::completeness() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return sum;
}

FloquetDressing FloquetDressing::from_index(double omega_rf, double modulation_index) {
  FloquetDressing d{omega_rf, modulation_index * omega_rf};
  d.validate();
  return d;
}

void FloquetDressing::validate() const {
  if (!(omega_rf > 0.0)) throw std::invalid_argument("FloquetDressing: omega_rf must be positive");
  if (!(amplitude_rf >= 0.0)) {
    throw std::invalid_argument("FloquetDressing: RF amplitude must be non-negative");
  }
}

std::vector<FloquetLevel> floquet_levels(const FloquetDressing& d, double omega_s, int m_min,
                                         int m_max) {
  d.validate();
  if (m_max < m_min) throw std::invalid_argument("floquet_levels: empty m range");
  std::vector<FloquetLevel> levels;
  for (int level = 0; level <= 1; ++level) {
    for (int m = m_min; m <= m_max; ++m) {
      levels.push_back({level, m, level * omega_s + m * d.omega_rf});
    }
  }
  return levels;
}

std::vector<FloquetTransition> floquet_transitions(const FloquetDressing& d, double omega_s,
                                                   int dm_max) {
  d.validate();
  if (dm_max < 0 || dm_max > kBesselMaxOrder) {
    throw std::range_error("floquet_transitions: dm_max outside [0, 50]");
  }
  const BesselTable table(d.modulation_index(), dm_max);
  std::vector<FloquetTransition> out;
  for (int dm = -dm_max; dm <= dm_max; ++dm) {
    out.push_back({dm, omega_s + dm * d.omega_rf, table(dm)});
  }
  return out;
}

EffectiveHamiltonian floquet_effective_hamiltonian(const FloquetDressing& d, int k,
                                                   double omega1, double delta_prime,
                                                   double phi0, double rf_phase) {
  d.validate();
  const double x = d.modulation_index();
  const double rate = (std::abs(k) > kSidebandTruncation) ? 0.0 : bessel_j(k, x) * omega1;
  const double phase = phi0 - k * rf_phase + x * std::sin(rf_phase);
  EffectiveHamiltonian out{RotatingFrameHamiltonian::polar(rate, phase, -delta_prime), {}};
  if (std::abs(omega1) >= 0.1 * d.omega_rf) {
    std::ostringstream msg;
    msg << "probe/RF ratio " << std::abs(omega1) / d.omega_rf
        << " >= 0.1: neighbouring sidebands are not well separated";
    out.warning = msg.str();
  }
  return out;
}

double sideband_strength_sensitivity(const FloquetDressing& d, int k) {
  d.validate();
  return bessel_j_derivative(k, d.modulation_index()) / d.omega_rf;
}

bool MollowDressing::valid() const {
  return std::abs(2.0 * detuning) > validity_ratio * std::abs(dressed_detuning());
}

EffectiveHamiltonian mollow_effective_hamiltonian(const MollowDressing& m) {
  EffectiveHamiltonian out;
  out.h.drive_x = m.drive_amplitude - m.detuning;
  out.h.drive_y = 0.5 * m.probe_amplitude * std::sin(m.probe_phase);
  out.h.detuning = -0.5 * m.probe_amplitude * std::cos(m.probe_phase);
  if (!m.valid()) {
    std::ostringstream msg;
    msg << "|2 detuning| / |dressed detuning| = "
        << std::abs(2.0 * m.detuning) / std::abs(m.dressed_detuning()) << " is below "
        << m.validity_ratio << ": the second rotating-wave step is not justified";
    out.warning = msg.str();
  }
  return out;
}

namespace {

SpinState apply(const Propagator& p, const SpinState& s) {
  return {p.u(0, 0) * s.c0 + p.u(0, 1) * s.c1, p.u(1, 0) * s.c0 + p.u(1, 1) * s.c1};
}

Propagator x_rotation(double angle) { return Propagator::rotation(angle, 0.0); }

}  // namespace

SpinState MollowFrames::lab_to_first(const SpinState& lab, double t) const {
  return apply(Propagator::z_rotation(-omega0 * t), lab);
}

SpinState MollowFrames::first_to_lab(const SpinState& first, double t) const {
  return apply(Propagator::z_rotation(omega0 * t), first);
}

SpinState MollowFrames::first_to_second(const SpinState& first, double t) const {
  return apply(x_rotation(-detuning * t), first);
}

SpinState MollowFrames::second_to_first(const SpinState& second, double t) const {
  return apply(x_rotation(detuning * t), second);
}

SpinState MollowFrames::lab_to_second(const SpinState& lab, double t) const {
  return first_to_second(lab_to_first(lab, t), t);
}

SpinState MollowFrames::second_to_lab(const SpinState& second, double t) const {
  return first_to_lab(second_to_first(second, t), t);
}

}  // namespace qudyne
