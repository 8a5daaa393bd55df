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


#include "scft/types.hpp"

#include "scft/codebook.hpp"
#include "scft/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace scft
{

namespace
{

// Ratio a/b as an integer when it is one up to rounding, else nullopt.
std::optional<std::uint64_t> integral_ratio(double a, double b)
{
  if (!(a > 0.0) || !(b > 0.0)) {
    return std::nullopt;
  }
  const double r = a / b;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * n) {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(n);
}

}  // namespace

std::string_view to_string(Modulation m) noexcept
{
  switch (m) {
    case Modulation::tone: return "tone";
    case Modulation::monopulse: return "monopulse";
    case Modulation::bpsk: return "bpsk";
    case Modulation::lfm: return "lfm";
  }
  return "unknown";
}

std::optional<Modulation> parse_modulation(std::string_view name) noexcept
{
  if (name == "tone") return Modulation::tone;
  if (name == "monopulse") return Modulation::monopulse;
  if (name == "bpsk") return Modulation::bpsk;
  if (name == "lfm") return Modulation::lfm;
  return std::nullopt;
}

const NodeConfig & SwarmConfig::node(NodeId id) const
{
  return nodes[node_index(id)];
}

std::size_t SwarmConfig::node_index(NodeId id) const
{
  const auto it = std::find_if(nodes.begin(), nodes.end(),
    [id](const NodeConfig & n) { return n.node_id == id; });
  if (it == nodes.end()) {
    throw ConfigError("unknown node_id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - nodes.begin());
}

std::uint64_t SwarmConfig::nyquist_channels() const
{
  const auto q = integral_ratio(nyquist_rate_hz, resolution_hz);
  if (!q) {
    throw ConfigError("nyquist_rate_hz / resolution_hz is not a positive integer");
  }
  return *q;
}

std::uint64_t SwarmConfig::channel_total() const
{
  return channel_count ? *channel_count : nyquist_channels();
}

double SwarmConfig::node_rate_hz(const NodeConfig & n) const
{
  return nyquist_rate_hz / static_cast<double>(n.decimation);
}

std::uint32_t SwarmConfig::m_points(const NodeConfig & n) const
{
  if (n.decimation == 0) {
    throw ConfigError("node " + std::to_string(n.node_id) + ": decimation must be positive");
  }
  const std::uint64_t q = nyquist_channels();
  if (q % n.decimation != 0) {
    throw ConfigError("node " + std::to_string(n.node_id) +
      ": f_s / r_p is not a multiple of resolution_hz");
  }
  return static_cast<std::uint32_t>(q / n.decimation);
}

void validate(const SwarmConfig & swarm)
{
  if (!(swarm.nyquist_rate_hz > 0.0)) {
    throw ConfigError("swarm.nyquist_rate_hz must be positive");
  }
  if (!(swarm.resolution_hz > 0.0)) {
    throw ConfigError("swarm.resolution_hz must be positive");
  }
  if (swarm.nodes.size() < 2) {
    throw ConfigError("swarm.nodes: at least two nodes are required");
  }
  std::set<NodeId> ids;
  std::set<std::uint32_t> rates;
  for (const auto & n : swarm.nodes) {
    if (!ids.insert(n.node_id).second) {
      throw ConfigError("swarm.nodes: duplicate node_id " + std::to_string(n.node_id));
    }
    if (!rates.insert(n.decimation).second) {
      throw ConfigError("swarm.nodes: decimation " + std::to_string(n.decimation) +
        " used by more than one node");
    }
    (void)swarm.m_points(n);
  }
  const auto q = swarm.channel_total();
  if (q == 0) {
    throw ConfigError("swarm.channel_count must be positive");
  }
  std::vector<std::uint32_t> ms;
  for (const auto & n : swarm.nodes) {
    ms.push_back(swarm.m_points(n));
  }
  if (q > span_channels(ms) && !swarm.allow_ambiguous) {
    throw ConfigError("swarm: " + std::to_string(q) + " channels exceed the unambiguous span of " +
      std::to_string(span_channels(ms)) + "; set allow_ambiguous to accept aliased channels");
  }
}

std::uint32_t snapshot_count(const ScenarioConfig & scenario, const SwarmConfig & swarm)
{
  const auto l = integral_ratio(scenario.capture_duration_s * swarm.resolution_hz, 1.0);
  if (!l) {
    throw ConfigError("scenario.capture_duration_s * resolution_hz must be a positive integer");
  }
  return static_cast<std::uint32_t>(*l);
}

void validate(const ScenarioConfig & scenario, const SwarmConfig & swarm)
{
  (void)snapshot_count(scenario, swarm);
  const double span = unambiguous_span(swarm);
  for (std::size_t i = 0; i < scenario.emitters.size(); ++i) {
    const auto & e = scenario.emitters[i];
    const std::string where = "scenario.emitters[" + std::to_string(i) + "]";
    if (!(e.carrier_hz > 0.0) || e.carrier_hz > span) {
      throw ConfigError(where + ".carrier_hz: must lie in (0, " + std::to_string(span) + "] Hz");
    }
    if (!(e.power > 0.0)) {
      throw ConfigError(where + ".power: must be positive");
    }
    if (e.bandwidth_hz < 0.0) {
      throw ConfigError(where + ".bandwidth_hz: must be non-negative");
    }
    if (std::abs(e.azimuth_rad) > kPi / 3.0 + 1e-12) {
      throw ConfigError(where + ".azimuth_rad: must lie in [-pi/3, pi/3]");
    }
  }
  if (scenario.reference_power && !(*scenario.reference_power > 0.0)) {
    throw ConfigError("scenario.reference_power: must be positive");
  }
}

double snap_to_grid(double f_hz, double resolution_hz)
{
  return std::round(f_hz / resolution_hz) * resolution_hz;
}

}  // namespace scft
