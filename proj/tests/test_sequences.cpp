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

#include "qudyne/sequences.hpp"

using namespace qudyne;

namespace {
constexpr double kMHz = kTwoPi * 1e6;
}

TEST_CASE("plain heterodyne shot layout and clock") {
  ReferenceSpec ref{4139.4 * kMHz, 0.0, 0.0};
  const PulseSequence seq = build_plain_heterodyne(34.2e-9, ref, {1e-6, 0.5e-6, 0.2898e-6});
  REQUIRE(seq.segments.size() == 4);
  CHECK(name_of(seq.segments[0]) == "laser_init");
  CHECK(name_of(seq.segments[1]) == "reference_pulse");
  CHECK(name_of(seq.segments[2]) == "sense");
  CHECK(name_of(seq.segments[3]) == "readout");
  CHECK(seq.sampling_interval() == doctest::Approx(1.824e-6));
  CHECK(seq.sense_offset() == doctest::Approx(1e-6));
  CHECK(seq.sense().duration == doctest::Approx(34.2e-9));
  CHECK_FALSE(seq.sense().cpmg.has_value());
}

TEST_CASE("zero-length sensing is allowed for the plain protocol") {
  CHECK_NOTHROW(build_plain_heterodyne(0.0, {}, {}));
  CHECK_THROWS_AS(build_plain_heterodyne(-1e-9, {}, {}), std::invalid_argument);
}

TEST_CASE("CPMG pulses sit at the centres of the tau slots") {
  CpmgSpec c{6.8e-6, 10, CpmgPhase::y_relative};
  const auto times = c.pulse_times();
  REQUIRE(times.size() == 10);
  CHECK(times.front() == doctest::Approx(3.4e-6));
  CHECK(times.back() == doctest::Approx(64.6e-6));
  CHECK(c.total_time() == doctest::Approx(68e-6));
  CHECK(c.sideband_frequency() / kTwoPi == doctest::Approx(73529.41).epsilon(1e-6));
  CHECK(c.pulse_axis(0.0) == doctest::Approx(0.5 * kPi));
  c.pulse_phase_convention = CpmgPhase::x_relative;
  CHECK(c.pulse_axis(0.3) == doctest::Approx(0.3));
  const PulseSequence seq = build_cpmg_heterodyne(c, {}, {});
  CHECK(seq.sense().duration == doctest::Approx(68e-6));
}

TEST_CASE("invalid CPMG and RF specs are rejected") {
  CHECK_THROWS_AS(build_cpmg_heterodyne(CpmgSpec{6.8e-6, 0, CpmgPhase::y_relative}, {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_cpmg_heterodyne(CpmgSpec{0.0, 4, CpmgPhase::y_relative}, {}, {}),
                  std::invalid_argument);
  RfDriveSpec rf;
  CHECK_THROWS_AS(build_floquet_heterodyne(rf, 1e-6, {}, {}), std::invalid_argument);
  rf.omega_rf = kMHz;
  CHECK_THROWS_AS(build_floquet_heterodyne(rf, 0.0, {}, {}), std::invalid_argument);
  rf.ramp_time = 0.6e-6;
  CHECK_THROWS_AS(build_floquet_heterodyne(rf, 1e-6, {}, {}), std::invalid_argument);
}

TEST_CASE("hand-built sequences are validated") {
  PulseSequence seq;
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.segments = {segment::LaserInit{1e-6}, segment::Readout{1e-6}};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);  // no sensing block
  seq.segments = {segment::LaserInit{1e-6}, segment::Sense{1e-6, true, {}, {}},
                  segment::Sense{1e-6, true, {}, {}}, segment::Readout{1e-6}};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
  seq.segments = {segment::LaserInit{1e-6},
                  segment::Sense{10e-6, true, CpmgSpec{1e-6, 4, CpmgPhase::y_relative}, {}},
                  segment::Readout{1e-6}};
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);  // CPMG shorter than the block
  seq.segments[1] = segment::Sense{4e-6, true, CpmgSpec{1e-6, 4, CpmgPhase::y_relative}, {}};
  CHECK_NOTHROW(seq.validate());
  seq.dead_time = -1.0;
  CHECK_THROWS_AS(seq.validate(), std::invalid_argument);
}

TEST_CASE("RF phase per shot combines the coherent advance and the programmed step") {
  RfDriveSpec rf;
  rf.omega_rf = 1.45 * kMHz;
  rf.amplitude = 1.72 * rf.omega_rf;
  rf.per_shot_phase_step = 0.25 * kPi;
  CHECK(rf.modulation_index() == doctest::Approx(1.72));
  CHECK(rf.strong_drive());
  // 14.5 RF periods per 10 us shot: half a turn plus the 45 degree step
  CHECK(rf.phase_at_shot(1, 10e-6) == doctest::Approx(1.25 * kPi));
  CHECK(rf.phase_at_shot(2, 10e-6) == doctest::Approx(0.5 * kPi).epsilon(1e-9));
}

TEST_CASE("describe and JSON list every segment") {
  RfDriveSpec rf;
  rf.omega_rf = 1.45 * kMHz;
  rf.amplitude = 2.0 * kMHz;
  const PulseSequence seq = build_floquet_heterodyne(rf, 3e-6, {}, {1e-6, 0.5e-6, 1e-6});
  const std::string text = seq.describe();
  CHECK(text.find("sense") != std::string::npos);
  CHECK(text.find("RF 1.45 MHz") != std::string::npos);
  const auto j = seq.to_json();
  CHECK(j["segments"].size() == 4);
  CHECK(j["segments"][2]["rf"]["modulation_index"].get<double>() == doctest::Approx(2.0 / 1.45));
  CHECK(j["sampling_interval_s"].get<double>() == doctest::Approx(5.5e-6));
}

TEST_CASE("Floquet demodulated frequency and aliasing") {
  CHECK(floquet_demodulated_frequency(10.0, 1, 3.0, 5.0) == doctest::Approx(2.0));
  CHECK(alias_frequency(1200.0, 1000.0) == doctest::Approx(200.0));
  CHECK(alias_frequency(800.0, 1000.0) == doctest::Approx(200.0));
  CHECK(alias_frequency(-300.0, 1000.0) == doctest::Approx(300.0));
  CHECK(alias_frequency(73566.4, 1.0 / 81.6e-6) == doctest::Approx(37.0).epsilon(1e-3));
}
