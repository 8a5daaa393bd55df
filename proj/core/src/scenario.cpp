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


#include "scft/scenario.hpp"

#include "scft/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace scft
{

namespace
{

constexpr std::uint64_t kChipStream = 0xB95Cu;
constexpr std::uint64_t kNoiseStream = 0x4015Eu;
constexpr std::uint64_t kClockStream = 0xC10Cu;

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

cplx unit_phasor(double cycles)
{
  const double frac = cycles - std::floor(cycles);
  const double ph = 2.0 * kPi * frac;
  return {std::cos(ph), std::sin(ph)};
}

double chip_sign(std::uint64_t chip_seed, std::int64_t chip)
{
  return (splitmix64(chip_seed ^ splitmix64(static_cast<std::uint64_t>(chip))) & 1u) ? 1.0 : -1.0;
}

void check_modulation(const EmitterSpec & spec)
{
  switch (spec.modulation) {
    case Modulation::tone:
      break;
    case Modulation::monopulse:
      if (spec.pulse_width_s < 0.0) {
        throw ValidationError("monopulse: pulse_width_s must be non-negative");
      }
      break;
    case Modulation::bpsk:
      if (!(spec.chip_rate_hz > 0.0)) {
        throw ValidationError("bpsk: chip_rate_hz must be positive");
      }
      break;
    case Modulation::lfm:
      if (spec.sweep_rate_hz_per_s == 0.0 && !(spec.bandwidth_hz > 0.0)) {
        throw ValidationError("lfm: needs bandwidth_hz > 0 or a nonzero sweep_rate_hz_per_s");
      }
      break;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

double compute_delay(const SwarmConfig & swarm, NodeId node_id, double azimuth_rad)
{
  const auto & n = swarm.node(node_id);
  if (std::abs(azimuth_rad) > kPi / 3.0 + 1e-12) {
    throw ValidationError("azimuth must lie in [-pi/3, pi/3]");
  }
  return -(n.position.x_m * std::sin(azimuth_rad) + n.position.y_m * std::cos(azimuth_rad)) /
         kSpeedOfLight;
}

double effective_sweep_rate(const EmitterSpec & spec, double capture_duration_s)
{
  if (spec.sweep_rate_hz_per_s != 0.0) {
    return spec.sweep_rate_hz_per_s;
  }
  return capture_duration_s > 0.0 ? spec.bandwidth_hz / capture_duration_s : 0.0;
}

double instantaneous_frequency(const EmitterSpec & spec, double t_s, double capture_duration_s)
{
  if (spec.modulation == Modulation::lfm) {
    return spec.carrier_hz + effective_sweep_rate(spec, capture_duration_s) * t_s;
  }
  return spec.carrier_hz;
}

std::vector<cplx> synthesize_emitter(
  const EmitterSpec & spec, std::size_t n_samples, double fs_hz, double delay_s,
  std::int64_t origin_samples, std::uint64_t chip_seed)
{
  if (n_samples == 0) {
    throw ValidationError("synthesize_emitter: n_samples must be positive");
  }
  if (!(fs_hz > 0.0)) {
    throw ValidationError("synthesize_emitter: fs_hz must be positive");
  }
  check_modulation(spec);

  const double amp = std::sqrt(spec.power);
  const double f_norm = spec.carrier_hz / fs_hz;
  const double delay_cycles = spec.carrier_hz * delay_s;
  const double sweep = effective_sweep_rate(spec, static_cast<double>(n_samples) / fs_hz);

  std::vector<cplx> out(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto k = static_cast<std::int64_t>(n) + origin_samples;
    const double t = static_cast<double>(k) / fs_hz - delay_s;
    // carrier cycles split so the large term stays an exact-ish product
    double cycles = f_norm * static_cast<double>(k);
    cycles -= std::floor(cycles);
    cycles -= delay_cycles;

    double gain = amp;
    switch (spec.modulation) {
      case Modulation::tone:
        break;
      case Modulation::monopulse:
        if (t < spec.pulse_start_s || t >= spec.pulse_start_s + spec.pulse_width_s) {
          gain = 0.0;
        }
        break;
      case Modulation::bpsk:
        gain *= chip_sign(chip_seed, static_cast<std::int64_t>(std::floor(t * spec.chip_rate_hz)));
        break;
      case Modulation::lfm:
        cycles += 0.5 * sweep * t * t;
        break;
    }
    out[n] = gain == 0.0 ? cplx{} : gain * unit_phasor(cycles);
  }
  return out;
}

double noise_variance(const ScenarioConfig & scenario)
{
  if (!scenario.snr_db) {
    return 0.0;
  }
  double ref = 1.0;
  if (scenario.reference_power) {
    ref = *scenario.reference_power;
  } else if (!scenario.emitters.empty()) {
    ref = 0.0;
    for (const auto & e : scenario.emitters) {
      ref += e.power;
    }
    ref /= static_cast<double>(scenario.emitters.size());
  }
  return ref * std::pow(10.0, -*scenario.snr_db / 10.0);
}

std::int64_t clock_offset(const ScenarioConfig & scenario, const SwarmConfig & swarm, NodeId node_id)
{
  (void)swarm.node(node_id);
  if (swarm.clock_offset_policy == ClockOffsetPolicy::none) {
    return 0;
  }
  std::mt19937_64 rng(derive_seed(scenario.seed, kClockStream, node_id));
  std::uniform_int_distribution<std::int64_t> dist(0, swarm.max_clock_offset_samples);
  return dist(rng);
}

NodeCapture compose_capture(
  const ScenarioConfig & scenario, const SwarmConfig & swarm, NodeId node_id)
{
  validate(scenario, swarm);
  (void)swarm.node(node_id);

  const double fs = swarm.nyquist_rate_hz;
  const auto n = static_cast<std::size_t>(std::llround(scenario.capture_duration_s * fs));
  if (n == 0) {
    throw ValidationError("scenario.capture_duration_s yields an empty capture");
  }

  NodeCapture cap;
  cap.node_id = node_id;
  cap.sample_rate_hz = fs;
  cap.clock_offset_samples = clock_offset(scenario, swarm, node_id);
  cap.noise_variance = noise_variance(scenario);
  cap.samples.assign(n, cplx{});

  for (std::size_t i = 0; i < scenario.emitters.size(); ++i) {
    const auto & e = scenario.emitters[i];
    const double tau = compute_delay(swarm, node_id, e.azimuth_rad);
    const auto s = synthesize_emitter(e, n, fs, tau, cap.clock_offset_samples,
      derive_seed(scenario.seed, kChipStream, i));
    for (std::size_t k = 0; k < n; ++k) {
      cap.samples[k] += s[k];
    }
  }

  if (cap.noise_variance > 0.0) {
    std::mt19937_64 rng(derive_seed(scenario.seed, kNoiseStream, node_id));
    std::normal_distribution<double> gauss(0.0, std::sqrt(cap.noise_variance / 2.0));
    for (auto & x : cap.samples) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      x += cplx{re, im};
    }
  }
  return cap;
}

}  // namespace scft
