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
#include "qudyne/core.hpp"

using namespace qudyne;

namespace {

constexpr double kMHz = kTwoPi * 1e6;

RotatingFrameHamiltonian random_h(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("ground state reads +1/2 and a pi pulse flips it") {
  CHECK(expect_sz(SpinState::ground()) == doctest::Approx(0.5));
  const auto h = RotatingFrameHamiltonian::polar(2.0 * kMHz, 0.3);
  const double t_pi = kPi / (2.0 * kMHz);
  const SpinState s = evolve(SpinState::ground(), closed_form_propagator(h, t_pi));
  CHECK(expect_sz(s) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("pi/2 about x takes |0> to -y") {
  const BlochVector r = evolve(BlochVector{}, Propagator::rotation(0.5 * kPi, 0.0));
  CHECK(r.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(-1.0));
  CHECK(r.z == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("superposition phase sets the equatorial direction") {
  for (double phase : {0.0, 0.7, 2.0, -1.2}) {
    const BlochVector r = SpinState::superposition(phase).bloch();
    CHECK(r.x == doctest::Approx(std::cos(phase)));
    CHECK(r.y == doctest::Approx(std::sin(phase)));
    CHECK(std::abs(r.z) < 1e-12);
  }
}

TEST_CASE("closed-form propagator matches the matrix exponential") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(0.0, 2e-6);
  for (int i = 0; i < 1000; ++i) {
    const auto h = random_h(rng, 30.0 * kMHz);
    const double dt = t(rng);
    const double err = (closed_form_propagator(h, dt).u - oracle::propagator(h, dt)).cwiseAbs().maxCoeff();
    REQUIRE(err < 1e-9);
  }
}

TEST_CASE("closed-form propagator stays accurate for tiny rotation angles") {
  const RotatingFrameHamiltonian h{1e-3, 2e-3, -1e-3};
  const double err = (closed_form_propagator(h, 1e-6).u - oracle::propagator(h, 1e-6)).cwiseAbs().maxCoeff();
  CHECK(err < 1e-15);
  CHECK(closed_form_propagator({}, 1.0).u.isIdentity());
}

TEST_CASE("propagators compose and stay unitary") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto h = random_h(rng, 10.0 * kMHz);
    const auto a = closed_form_propagator(h, 0.3e-6);
    const auto b = closed_form_propagator(h, 0.5e-6);
    CHECK((a * b).is_unitary());
    CHECK(((a * b).u - closed_form_propagator(h, 0.8e-6).u).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("z rotation advances the azimuth") {
  const BlochVector r = evolve(BlochVector{1.0, 0.0, 0.0}, Propagator::z_rotation(0.4));
  CHECK(r.x == doctest::Approx(std::cos(0.4)));
  CHECK(r.y == doctest::Approx(std::sin(0.4)));
}

TEST_CASE("evolve rejects a non-normalised state") {
  SpinState s{cplx{1.0, 0.0}, cplx{1.0, 0.0}};
  CHECK_THROWS_AS(evolve(s, Propagator::identity()), std::invalid_argument);
}

TEST_CASE("spin and Bloch evolution agree") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto u = closed_form_propagator(random_h(rng, 5.0 * kMHz), 1e-6);
    const SpinState s = evolve(SpinState::superposition(0.3 * i), u);
    const BlochVector r = evolve(SpinState::superposition(0.3 * i).bloch(), u);
    const BlochVector b = s.bloch();
    CHECK(std::abs(b.x - r.x) < 1e-12);
    CHECK(std::abs(b.y - r.y) < 1e-12);
    CHECK(std::abs(b.z - r.z) < 1e-12);
  }
}

TEST_CASE("exact phase response equals propagating the prepared state") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double omega = 3.0 * kMHz * u(rng), detuning = kMHz * (2 * u(rng) - 1);
    const double phi0 = kTwoPi * u(rng), phi_ref = kTwoPi * u(rng), t = 1e-6 * u(rng);
    const SpinState s = evolve(SpinState::superposition(phi_ref),
                               closed_form_propagator(RotatingFrameHamiltonian::polar(omega, phi0, detuning), t));
    CHECK(std::abs(expect_sz(s) - phase_response(omega, detuning, phi0, phi_ref, t)) < 1e-12);
  }
}

TEST_CASE("small-angle response") {
  // zero when the drive is along the prepared axis
  CHECK(phase_response(1e6, 0.0, 0.4, 0.4, 1e-8, ResponseForm::small_angle) == 0.0);
  const double omega = 1e6, t = 5e-8;
  CHECK(phase_response(omega, 0.0, 0.0, 0.5 * kPi, t, ResponseForm::small_angle) ==
        doctest::Approx(0.5 * omega * t));
  CHECK(phase_response(omega, 0.0, 0.0, 0.5 * kPi, t) ==
        doctest::Approx(0.5 * std::sin(omega * t)));
  CHECK_THROWS_AS(phase_response(omega, 0.0, 0.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("spin-1 drive conversion") {
  CHECK(spin1_drive_to_rabi(std::sqrt(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("decay relaxes coherence and population") {
  DecayParams d;
  d.enabled = true;
  d.t1 = 1e-3;
  d.t2_star = 10e-6;
  d.t1_rho = 0.5e-3;
  const BlochVector r{1.0, 0.0, 0.0};
  CHECK(apply_decay(r, d, 10e-6).x == doctest::Approx(std::exp(-1.0)));
  CHECK(apply_decay(r, d, 10e-6, DecayChannel::spin_locked).x ==
        doctest::Approx(std::exp(-10e-6 / 0.5e-3)));
  CHECK(apply_decay(BlochVector{}, d, 1e-3).z == doctest::Approx(std::exp(-1.0)));
  d.enabled = false;
  CHECK(apply_decay(r, d, 1.0).x == 1.0);
}

TEST_CASE("inconsistent lifetimes are rejected") {
  DecayParams d;
  d.enabled = true;
  d.t2 = 5e-3;
  d.t1 = 1e-3;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  d.t2 = -1.0;
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("lab-frame integration reproduces the rotating-wave result") {
  // weak resonant drive: RWA error is of order Omega / omega
  const double omega_s = kTwoPi * 200e6, omega = kTwoPi * 1e6;
  LabDrive lab{omega_s, {{omega, omega_s, 0.0}}, std::nullopt};
  const double t = 0.25e-6;  // quarter period of the Rabi cycle
  const SpinState s = lab_frame_integrate(lab, lab.max_step() / 4.0, t);
  const SpinState rwa = evolve(SpinState::ground(),
                               closed_form_propagator(RotatingFrameHamiltonian::polar(omega, 0.0), t));
  CHECK(std::abs(expect_sz(s) - expect_sz(rwa)) < 0.01);
  const SpinState rot = to_rotating_frame(s, omega_s, t);
  CHECK(std::abs(rot.bloch().y - rwa.bloch().y) < 0.02);
}

TEST_CASE("lab-frame integrator refuses a step that cannot resolve the carrier") {
  LabDrive lab{kTwoPi * 100e6, {}, std::nullopt};
  CHECK_THROWS_AS(lab_frame_integrate(lab, 1e-8, 1e-6), StepSizeError);
}

TEST_CASE("lab-frame trajectory samples the requested times") {
  LabDrive lab{kTwoPi * 50e6, {{kTwoPi * 1e6, kTwoPi * 50e6, 0.0}}, std::nullopt};
  const std::vector<double> times{0.0, 0.1e-6, 0.2e-6};
  const auto traj = lab_frame_trajectory(lab, lab.max_step() / 2.0, times);
  REQUIRE(traj.size() == 3);
  CHECK(expect_sz(traj[0]) == doctest::Approx(0.5));
  const SpinState direct = lab_frame_integrate(lab, lab.max_step() / 2.0, 0.2e-6);
  CHECK(std::abs(expect_sz(traj[2]) - expect_sz(direct)) < 1e-6);
}
