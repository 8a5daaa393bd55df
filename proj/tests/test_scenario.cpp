// SPDX-License-Identifier: Apache-2.0
//
// scft: sparse coding Fourier transform swarm spectrum acquisition
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "doctest.h"

#include "scft/error.hpp"
#include "scft/sampler.hpp"
#include "scft/scenario.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numeric>

using namespace scft;

TEST_CASE("compute_delay: plane-wave geometry")
{
  SwarmConfig s = fixtures::reference_swarm();
  s.nodes[0].position = {0.0, 0.0};
  s.nodes[1].position = {1.5, 0.0};

  CHECK(compute_delay(s, 1, 0.7) == 0.0);
  CHECK(compute_delay(s, 2, 0.0) == doctest::Approx(0.0));
  CHECK(compute_delay(s, 2, kPi / 6.0) == doctest::Approx(-2.5017307139861402e-09).epsilon(1e-12));

  CHECK_THROWS_AS(compute_delay(s, 9, 0.0), ConfigError);
  CHECK_THROWS_AS(compute_delay(s, 1, 1.2), ValidationError);
}

TEST_CASE("synthesize_emitter: on-grid tone")
{
  // f_c = resolution, one snapshot window of 16 samples
  const double fs = 16.0;
  EmitterSpec e = fixtures::tone(1.0);
  const auto x = synthesize_emitter(e, 16, fs, 0.0);
  for (const auto & v : x) {
    CHECK(std::abs(v) == doctest::Approx(1.0));
  }
  const auto X = oracle::dft(x);
  CHECK(std::abs(X[1]) == doctest::Approx(16.0));
  for (std::size_t k = 0; k < X.size(); ++k) {
    if (k != 1) {
      CHECK(std::abs(X[k]) < 1e-9);
    }
  }
}

TEST_CASE("synthesize_emitter: monopulse gate")
{
  EmitterSpec e = fixtures::tone(3.0);
  e.modulation = Modulation::monopulse;
  e.pulse_start_s = 0.25;
  e.pulse_width_s = 0.0;
  const auto x = synthesize_emitter(e, 64, 64.0, 0.0);
  for (const auto & v : x) {
    CHECK(v == cplx{});
  }

  e.pulse_width_s = 0.25;
  const auto y = synthesize_emitter(e, 64, 64.0, 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    const bool inside = n >= 16 && n < 32;
    CHECK((std::abs(y[n]) > 0.5) == inside);
  }
}

TEST_CASE("synthesize_emitter: lfm instantaneous frequency")
{
  // 1 GHz over 1 us starting at 3.37 GHz, sampled at 12 GHz
  EmitterSpec e;
  e.carrier_hz = 3.37e9;
  e.modulation = Modulation::lfm;
  e.bandwidth_hz = 1e9;
  const double fs = 12e9;
  const double duration = 1e-6;
  const auto n = static_cast<std::size_t>(duration * fs) + 2;

  CHECK(instantaneous_frequency(e, 1e-6, duration) == doctest::Approx(4.37e9));

  // independent route: finite difference of the analytic phase
  const double k = 1e9 / duration;
  auto cycles = [&](double t) { return e.carrier_hz * t + 0.5 * k * t * t; };
  CHECK(oracle::inst_freq_fd(cycles, 1e-6, 1e-12) == doctest::Approx(4.37e9).epsilon(1e-6));

  // and from the synthesized samples: phase step between adjacent samples
  // around t = 1 us (nominal duration is overridden by an explicit rate)
  e.sweep_rate_hz_per_s = k;
  const auto x = synthesize_emitter(e, n, fs, 0.0);
  const std::size_t i = static_cast<std::size_t>(1e-6 * fs);
  const double step =
    0.5 * (std::arg(x[i + 1] * std::conj(x[i])) + std::arg(x[i] * std::conj(x[i - 1])));
  CHECK(step * fs / (2.0 * kPi) == doctest::Approx(4.37e9).epsilon(1e-4));
}

TEST_CASE("synthesize_emitter: validation")
{
  EmitterSpec e = fixtures::tone(1.0);
  CHECK_THROWS_AS(synthesize_emitter(e, 0, 8.0, 0.0), ValidationError);
  CHECK_THROWS_AS(synthesize_emitter(e, 8, 0.0, 0.0), ValidationError);
  e.modulation = Modulation::bpsk;
  e.chip_rate_hz = 0.0;
  CHECK_THROWS_AS(synthesize_emitter(e, 8, 8.0, 0.0), ValidationError);
  e.modulation = Modulation::lfm;
  CHECK_THROWS_AS(synthesize_emitter(e, 8, 8.0, 0.0), ValidationError);
}

TEST_CASE("synthesize_emitter: bpsk chips are +-1 and seed-determined")
{
  EmitterSpec e = fixtures::tone(2.0);
  e.modulation = Modulation::bpsk;
  e.chip_rate_hz = 4.0;
  const auto a = synthesize_emitter(e, 64, 64.0, 0.0, 0, 7);
  const auto b = synthesize_emitter(e, 64, 64.0, 0.0, 0, 7);
  const auto c = synthesize_emitter(e, 64, 64.0, 0.0, 0, 8);
  CHECK(a == b);
  CHECK(a != c);
  const auto ref = synthesize_emitter(fixtures::tone(2.0), 64, 64.0, 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const cplx ratio = a[n] / ref[n];
    CHECK(std::abs(std::abs(ratio.real()) - 1.0) < 1e-12);
    CHECK(std::abs(ratio.imag()) < 1e-12);
    // constant within a 16-sample chip
    if (n % 16 != 0) {
      CHECK(std::abs(a[n] / ref[n] - a[n - 1] / ref[n - 1]) < 1e-12);
    }
  }
}

TEST_CASE("compose_capture: noiseless path equals the delayed tone")
{
  auto swarm = fixtures::reference_swarm();
  auto sc = fixtures::scene({fixtures::tone(3.37e9, 1.0, 0.4)}, 1e-6);
  const auto cap = compose_capture(sc, swarm, 2);
  CHECK(cap.noise_variance == 0.0);
  CHECK(cap.samples.size() == 12000);
  const double tau = compute_delay(swarm, 2, 0.4);
  const auto ref = synthesize_emitter(sc.emitters[0], cap.samples.size(), 12e9, tau);
  for (std::size_t n = 0; n < ref.size(); ++n) {
    REQUIRE(std::abs(cap.samples[n] - ref[n]) < 1e-12);
  }
}

TEST_CASE("compose_capture: noise variance")
{
  auto swarm = fixtures::reference_swarm(1e6);
  ScenarioConfig sc = fixtures::scene({}, 1e-5, 0.0, 42);
  sc.reference_power = 1.0;
  const auto cap = compose_capture(sc, swarm, 1);
  REQUIRE(cap.samples.size() >= 100000);
  CHECK(cap.noise_variance == 1.0);
  double acc = 0.0;
  for (const auto & v : cap.samples) {
    acc += std::norm(v);
  }
  const double var = acc / static_cast<double>(cap.samples.size());
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
  // three standard errors of the sample variance of |x|^2 ~ Exp(1)
  CHECK(std::abs(var - 1.0) < 3.0 / std::sqrt(static_cast<double>(cap.samples.size())));
}

TEST_CASE("compose_capture: linearity over emitter sets")
{
  auto swarm = fixtures::reference_swarm();
  EmitterSpec chips;
  chips.carrier_hz = 7.56e9;
  chips.modulation = Modulation::bpsk;
  chips.chip_rate_hz = 50e6;
  chips.azimuth_rad = -0.5;
  const auto carrier = fixtures::tone(0.95e9, 2.0, 0.1);

  // chip sequences are keyed by emitter position, so the bpsk emitter stays first
  const auto ca = compose_capture(fixtures::scene({chips}, 1e-6), swarm, 2);
  const auto cb = compose_capture(fixtures::scene({carrier}, 1e-6), swarm, 2);
  const auto cab = compose_capture(fixtures::scene({chips, carrier}, 1e-6), swarm, 2);
  for (std::size_t n = 0; n < cab.samples.size(); ++n) {
    REQUIRE(std::abs(cab.samples[n] - (ca.samples[n] + cb.samples[n])) < 1e-12);
  }
}

TEST_CASE("compose_capture: delay consistency across nodes")
{
  auto swarm = fixtures::reference_swarm();
  swarm.nodes[1].position = {2.0, -0.7};
  const double f = 10.5e9;
  const double theta = 0.8;
  auto sc = fixtures::scene({fixtures::tone(f, 1.0, theta)}, 1e-6);
  const auto c0 = compose_capture(sc, swarm, 1);
  const auto c1 = compose_capture(sc, swarm, 2);
  const double dtau = compute_delay(swarm, 2, theta) - compute_delay(swarm, 1, theta);
  const cplx rot = std::polar(1.0, -2.0 * kPi * f * dtau);
  for (std::size_t n = 0; n < c0.samples.size(); ++n) {
    REQUIRE(std::abs(c1.samples[n] - c0.samples[n] * rot) <= 1e-9 * std::abs(c0.samples[n]));
  }
}

TEST_CASE("compose_capture: determinism and per-node streams")
{
  auto swarm = fixtures::reference_swarm();
  swarm.clock_offset_policy = ClockOffsetPolicy::random_integer_sample;
  auto sc = fixtures::scene(fixtures::reference_tones(10e6), 1e-6, 0.0, 99);
  const auto a = compose_capture(sc, swarm, 1);
  (void)compose_capture(sc, swarm, 2);
  const auto b = compose_capture(sc, swarm, 1);
  CHECK(a.samples == b.samples);
  CHECK(a.clock_offset_samples == b.clock_offset_samples);
  CHECK(a.clock_offset_samples >= 0);
  CHECK(a.clock_offset_samples <= 64);

  sc.seed = 100;
  const auto c = compose_capture(sc, swarm, 1);
  CHECK(c.samples != a.samples);
}

TEST_CASE("compose_capture: clock offset shifts the synthesis origin")
{
  auto swarm = fixtures::reference_swarm();
  swarm.clock_offset_policy = ClockOffsetPolicy::random_integer_sample;
  auto sc = fixtures::scene({fixtures::tone(3.37e9)}, 1e-6, std::nullopt, 5);
  const auto cap = compose_capture(sc, swarm, 1);
  const auto ref = synthesize_emitter(sc.emitters[0], cap.samples.size(), 12e9, 0.0, cap.clock_offset_samples);
  for (std::size_t n = 0; n < ref.size(); ++n) {
    REQUIRE(std::abs(cap.samples[n] - ref[n]) < 1e-12);
  }
}

TEST_CASE("compose_capture: carrier past the unambiguous span is rejected")
{
  auto swarm = fixtures::reference_swarm();
  auto sc = fixtures::scene({fixtures::tone(12.5e9)}, 1e-6);
  CHECK_THROWS_AS(compose_capture(sc, swarm, 1), ValidationError);
}

TEST_CASE("compose_capture: four reference carriers at 0 dB")
{
  auto swarm = fixtures::reference_swarm();
  auto sc = fixtures::scene(fixtures::reference_tones(10e6), 2e-5, 0.0, 3);
  const auto cap = compose_capture(sc, swarm, 1);
  CHECK(cap.samples.size() == 240000);
  CHECK(cap.noise_variance == doctest::Approx(1.0));
}
