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

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qudyne/dressed.hpp"
#include "qudyne/signals.hpp"

using namespace qudyne;

namespace {
constexpr double kMHz = kTwoPi * 1e6;
constexpr double kKHz = kTwoPi * 1e3;
}  // namespace

TEST_CASE("Bessel values at the working point") {
  CHECK(bessel_j(0, 1.72) == doctest::Approx(0.386418).epsilon(1e-5));
  CHECK(bessel_j(1, 1.72) == doctest::Approx(0.578845).epsilon(1e-5));
  CHECK(bessel_j(2, 1.72) == doctest::Approx(0.286657).epsilon(1e-5));
  CHECK(bessel_j(3, 1.72) == doctest::Approx(0.087800).epsilon(1e-4));
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-12);
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
}

TEST_CASE("Bessel function against the 50-digit series") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const int k = static_cast<int>(std::floor(-50 + 101 * u(rng)));
    const double x = (2 * u(rng) - 1) * 50.0;
    REQUIRE(std::abs(bessel_j(k, x) - oracle::bessel_series(k, x)) < 1e-10);
  }
}

TEST_CASE("Bessel symmetries") {
  for (int k = 0; k <= 10; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    CHECK(bessel_j(-k, 3.3) == doctest::Approx(sign * bessel_j(k, 3.3)));
    CHECK(bessel_j(k, -3.3) == doctest::Approx(sign * bessel_j(k, 3.3)));
  }
}

TEST_CASE("Bessel range is enforced") {
  CHECK_THROWS_AS(bessel_j(51, 1.0), std::range_error);
  CHECK_THROWS_AS(bessel_j(0, 50.5), std::range_error);
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), std::range_error);
  CHECK_THROWS_AS(BesselTable(60.0, 5), std::range_error);
}

TEST_CASE("table, completeness and Jacobi-Anger") {
  for (double x = 0.0; x <= 10.0; x += 0.25) {
    const BesselTable table(x);
    CHECK(std::abs(table.completeness() - 1.0) < 1e-10);
    for (int k = -10; k <= 10; ++k) CHECK(table(k) == doctest::Approx(bessel_j(k, x)).epsilon(1e-12));
    CHECK(table(kSidebandTruncation + 1) == 0.0);
  }
  for (double x : {0.0, 0.3, 1.72, 2.405, 4.0, 5.0}) {
    const BesselTable table(x);
    for (int j = 0; j < 32; ++j) {
      const double theta = kTwoPi * j / 32.0;
      cplx sum = 0.0;
      for (int k = -kSidebandTruncation; k <= kSidebandTruncation; ++k) sum += table(k) * std::polar(1.0, k * theta);
      CHECK(std::abs(sum - std::polar(1.0, x * std::sin(theta))) < 1e-8);
    }
  }
}

TEST_CASE("Bessel derivative against finite differences") {
  for (int k : {-3, 0, 1, 4}) {
    for (double x : {0.5, 1.72, 6.0}) {
      const double h = 1e-5;
      const double fd = (bessel_j(k, x + h) - bessel_j(k, x - h)) / (2 * h);
      CHECK(bessel_j_derivative(k, x) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
  const auto d = FloquetDressing::from_index(kMHz, 1.0);
  CHECK(sideband_strength_sensitivity(d, 0) == doctest::Approx(-bessel_j(1, 1.0) / kMHz));
}

TEST_CASE("Floquet ladder and transitions") {
  const auto d = FloquetDressing::from_index(1.45 * kMHz, 1.72);
  CHECK(d.modulation_index() == doctest::Approx(1.72));
  const auto levels = floquet_levels(d, 100.0 * kMHz, -2, 2);
  CHECK(levels.size() == 10);
  CHECK(levels.back().energy == doctest::Approx(100.0 * kMHz + 2 * 1.45 * kMHz));
  const auto lines = floquet_transitions(d, 100.0 * kMHz, 3);
  REQUIRE(lines.size() == 7);
  CHECK(lines[4].dm == 1);
  CHECK(lines[4].frequency == doctest::Approx(101.45 * kMHz));
  CHECK(lines[4].strength == doctest::Approx(bessel_j(1, 1.72)));
  CHECK_THROWS_AS(floquet_transitions(d, 0.0, 51), std::range_error);
  CHECK_THROWS_AS(FloquetDressing::from_index(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(floquet_levels(d, 0.0, 2, 1), std::invalid_argument);
}

TEST_CASE("effective sideband Hamiltonian") {
  const auto d = FloquetDressing::from_index(1.45 * kMHz, 1.72);
  const auto eff = floquet_effective_hamiltonian(d, 1, 100.0 * kKHz, 2.0 * kKHz, 0.3);
  CHECK(eff.h.drive_amplitude() == doctest::Approx(bessel_j(1, 1.72) * 100.0 * kKHz));
  CHECK(eff.h.detuning == doctest::Approx(-2.0 * kKHz));
  CHECK(std::atan2(eff.h.drive_y, eff.h.drive_x) == doctest::Approx(0.3));
  CHECK_FALSE(eff.warning.has_value());
  CHECK(floquet_effective_hamiltonian(d, 1, 200.0 * kKHz, 0.0, 0.0).warning.has_value());
  CHECK(floquet_effective_hamiltonian(d, 45, 10.0 * kKHz, 0.0, 0.0).h.drive_amplitude() == 0.0);
  // RF phase enters as -k phi_rf + x sin(phi_rf)
  const auto shifted = floquet_effective_hamiltonian(d, 2, 10.0 * kKHz, 0.0, 0.0, 0.5);
  const double expected = wrap_phase(-2 * 0.5 + 1.72 * std::sin(0.5));
  CHECK(wrap_phase(std::atan2(shifted.h.drive_y, shifted.h.drive_x)) == doctest::Approx(expected));
}

TEST_CASE("sideband Rabi flop follows the effective Hamiltonian") {
  const auto d = FloquetDressing::from_index(1.0 * kMHz, 1.72);
  const double omega1 = 20.0 * kKHz;
  for (int k : {0, 1, 2}) {
    Drive drive;
    drive.tones.push_back({omega1, k * d.omega_rf, 0.0});
    drive.rf = RfModulation{d.amplitude_rf, d.omega_rf, 0.0, 0.0, 0.0, 0.0};
    const auto eff = floquet_effective_hamiltonian(d, k, omega1, 0.0, 0.0);
    const double t = 0.5 * kPi / eff.h.drive_amplitude();  // half a flop
    const SpinState full = evolve(SpinState::ground(), drive_propagator(drive, t));
    const SpinState approx = evolve(SpinState::ground(), closed_form_propagator(eff.h, t));
    CHECK(std::abs(expect_sz(full) - expect_sz(approx)) < 0.02);
  }
}

TEST_CASE("Mollow dressed frame at resonance rotates at gamma / 2") {
  MollowDressing m{10.0 * kMHz, 10.0 * kMHz, 0.2 * kMHz, 0.7};
  CHECK(m.dressed_detuning() == 0.0);
  const auto eff = mollow_effective_hamiltonian(m);
  CHECK(eff.h.generalized_rabi() == doctest::Approx(0.1 * kMHz));
  CHECK_FALSE(eff.warning.has_value());
  m.detuning = 0.1 * kMHz;
  CHECK(mollow_effective_hamiltonian(m).warning.has_value());
}

TEST_CASE("Mollow effective Hamiltonian tracks the first-frame evolution") {
  const double g = 10.0 * kMHz, delta = 9.9 * kMHz, gamma = 0.2 * kMHz;
  for (double phi : {0.0, 0.9, 2.5}) {
    MollowDressing m{g, delta, gamma, phi};
    Drive first;
    first.tones.push_back({g, 0.0, 0.0});
    first.tones.push_back({gamma, delta, phi});
    const MollowFrames frames{0.0, delta};
    for (double t : {1e-6, 3e-6}) {
      const SpinState exact = frames.first_to_second(evolve(SpinState::ground(), drive_propagator(first, t)), t);
      const SpinState eff = evolve(SpinState::ground(), closed_form_propagator(mollow_effective_hamiltonian(m).h, t));
      const BlochVector a = exact.bloch(), b = eff.bloch();
      CHECK(std::hypot(a.x - b.x, a.y - b.y, a.z - b.z) < 0.05);
    }
  }
}

TEST_CASE("Mollow frame changes invert each other") {
  const MollowFrames f{kTwoPi * 100e6, 2.0 * kMHz};
  const SpinState s = SpinState::superposition(0.4);
  for (double t : {0.0, 1e-7, 3.3e-6}) {
    const SpinState back = f.second_to_lab(f.lab_to_second(s, t), t);
    CHECK(std::abs(back.c0 - s.c0) < 1e-12);
    CHECK(std::abs(back.c1 - s.c1) < 1e-12);
  }
  // the first frame only adds a relative phase: populations unchanged
  CHECK(expect_sz(f.lab_to_first(s, 1e-6)) == doctest::Approx(expect_sz(s)));
}
