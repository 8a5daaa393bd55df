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


#ifndef SCFT_SCENARIO_HPP_
#define SCFT_SCENARIO_HPP_

#include "scft/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace scft
{

/// Full-rate capture at one node: x_p[n] at f_s, with the noise variance
/// used and the integer clock offset applied to the synthesis time origin.
struct NodeCapture
{
  NodeId node_id{0};
  double sample_rate_hz{0.0};
  std::vector<cplx> samples;
  double noise_variance{0.0};
  std::int64_t clock_offset_samples{0};
};

/// Plane-wave delay of a node relative to the coordinate origin:
/// tau = -(x sin(theta) + y cos(theta)) / c.
double compute_delay(const SwarmConfig & swarm, NodeId node_id, double azimuth_rad);

/// Complex analytic waveform s(t - delay) sampled at t_n = (n + origin) / fs.
///
/// `chip_seed` selects the BPSK chip sequence; every node must use the same
/// value for a given emitter so that all nodes observe the same chips.
std::vector<cplx> synthesize_emitter(
  const EmitterSpec & spec, std::size_t n_samples, double fs_hz, double delay_s,
  std::int64_t origin_samples = 0, std::uint64_t chip_seed = 0);

/// Instantaneous frequency of the emitter at time t (seconds, delay already
/// removed). For lfm the sweep rate is resolved against `capture_duration_s`.
double instantaneous_frequency(const EmitterSpec & spec, double t_s, double capture_duration_s);

/// Sweep rate actually used for an lfm emitter over a capture.
double effective_sweep_rate(const EmitterSpec & spec, double capture_duration_s);

/// Noise variance sigma^2 = reference_power * 10^(-snr/10); 0 when noiseless.
double noise_variance(const ScenarioConfig & scenario);

/// Clock offset for a node, deterministic in (seed, node_id).
std::int64_t clock_offset(const ScenarioConfig & scenario, const SwarmConfig & swarm, NodeId node_id);

/// Sum of all emitters (with per-node delays) plus circular complex AWGN.
/// Deterministic given (scenario.seed, node_id); independent of the order
/// in which nodes are composed.
NodeCapture compose_capture(
  const ScenarioConfig & scenario, const SwarmConfig & swarm, NodeId node_id);

/// Seed for a named random stream derived from a base seed and stream ids.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace scft

#endif  // SCFT_SCENARIO_HPP_
