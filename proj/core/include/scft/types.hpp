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

#ifndef SCFT_TYPES_HPP_
#define SCFT_TYPES_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace scft
{

using cplx = std::complex<double>;
using NodeId = std::uint16_t;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

enum class Modulation
{
  tone,
  monopulse,
  bpsk,
  lfm,
};

std::string_view to_string(Modulation m) noexcept;
std::optional<Modulation> parse_modulation(std::string_view name) noexcept;

/// One far-field emitter. Units are SI throughout (Hz, s, rad).
///
/// Only the fields relevant to `modulation` are read: pulse timing for
/// monopulse, chip rate for bpsk, bandwidth or sweep rate for lfm. An lfm
/// with sweep_rate_hz_per_s == 0 sweeps bandwidth_hz over the capture,
/// starting at carrier_hz.
struct EmitterSpec
{
  double carrier_hz{0.0};
  Modulation modulation{Modulation::tone};
  double bandwidth_hz{0.0};
  double power{1.0};
  double azimuth_rad{0.0};
  double pulse_start_s{0.0};
  double pulse_width_s{0.0};
  double chip_rate_hz{0.0};
  double sweep_rate_hz_per_s{0.0};
};

struct ScenarioConfig
{
  std::vector<EmitterSpec> emitters;
  /// Per-emitter SNR against the per-sample noise variance at the Nyquist
  /// rate. Empty means noiseless.
  std::optional<double> snr_db{0.0};
  std::uint64_t seed{0};
  double capture_duration_s{0.0};
  /// Power the SNR is referred to. Defaults to the mean emitter power, or
  /// 1 for an empty scene.
  std::optional<double> reference_power;
};

struct Position
{
  double x_m{0.0};
  double y_m{0.0};
};

struct NodeConfig
{
  NodeId node_id{0};
  Position position{};
  std::uint32_t decimation{1};
};

enum class ClockOffsetPolicy
{
  none,
  random_integer_sample,
};

struct SwarmConfig
{
  double nyquist_rate_hz{0.0};
  std::vector<NodeConfig> nodes;
  double resolution_hz{0.0};
  ClockOffsetPolicy clock_offset_policy{ClockOffsetPolicy::none};
  /// Upper bound (inclusive) for random clock offsets, in Nyquist samples.
  std::uint32_t max_clock_offset_samples{64};
  /// Overrides Q = f_s / resolution. Values past the unambiguous span need
  /// allow_ambiguous.
  std::optional<std::uint64_t> channel_count;
  bool allow_ambiguous{false};

  const NodeConfig & node(NodeId id) const;
  std::size_t node_index(NodeId id) const;

  /// f_s / resolution, exact; throws ConfigError when not integral.
  std::uint64_t nyquist_channels() const;
  /// Q: channel_count when set, else nyquist_channels().
  std::uint64_t channel_total() const;
  /// f_s / r_p.
  double node_rate_hz(const NodeConfig & n) const;
  /// M_p = f_sp / resolution; throws ConfigError when not integral.
  std::uint32_t m_points(const NodeConfig & n) const;
};

/// Structural checks for running the pipeline: P >= 2, distinct ids and
/// decimations, integral M_p, positive rates.
void validate(const SwarmConfig & swarm);

/// Scenario checks against a swarm: carriers inside the unambiguous span,
/// azimuths in [-pi/3, pi/3], whole snapshots in the capture.
void validate(const ScenarioConfig & scenario, const SwarmConfig & swarm);

/// Number of snapshots L = capture_duration * resolution; throws when the
/// product is not a positive integer.
std::uint32_t snapshot_count(const ScenarioConfig & scenario, const SwarmConfig & swarm);

/// Nearest point of the resolution grid.
double snap_to_grid(double f_hz, double resolution_hz);

}  // namespace scft

#endif  // SCFT_TYPES_HPP_
