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


#ifndef SCFT_EVAL_HARNESS_HPP_
#define SCFT_EVAL_HARNESS_HPP_

#include "scft/codebook.hpp"
#include "scft/decoder.hpp"
#include "scft/sampler.hpp"
#include "scft/scenario.hpp"
#include "scft/swarm_link.hpp"
#include "scft/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace scft
{

struct Policies
{
  PeakPolicy peak{};
  DetectPolicy detect{};
  /// A detection matches a truth only within this many channels.
  double match_gate_bins{1.0};
  /// Also decode with every bucket reported, to measure the decoded floor.
  bool measure_floor{false};
};

/// Everything one acquisition produces, node reports through detections.
struct PipelineResult
{
  Codebook codebook;
  std::vector<SpectralReport> reports;
  CodedSpectrum coded;
  SpectrumEstimate estimate;
};

/// Per-node front end: subsample, snapshot FFTs, periodogram, peak search.
SpectralReport process_node(const NodeCapture & capture, const SwarmConfig & swarm,
  const PeakPolicy & policy);

/// Synthesize every node, report, fuse, decode and detect.
PipelineResult run_pipeline(const ScenarioConfig & scenario, const SwarmConfig & swarm,
  const Policies & policies);

struct TrialResult
{
  std::uint64_t trial{0};
  std::vector<double> truths;
  /// Matched estimate per truth (same order); empty for a miss.
  std::vector<std::optional<double>> estimates;
  std::size_t detection_count{0};
  std::size_t false_alarm_count{0};
  std::size_t miss_count{0};
  /// Q minus the number of true channels; the false-alarm opportunities.
  std::uint64_t empty_channels{0};
  /// Median full-occupancy power of non-signal channels over the peak
  /// power; only set when Policies::measure_floor.
  std::optional<double> decoded_floor;
};

/// Greedy one-to-one matching, closest pair first. Returns, per truth, the
/// index of its estimate; pairs further apart than gate_hz stay unmatched.
/// With span_hz > 0 distances are taken modulo the span.
std::vector<std::optional<std::size_t>> match_greedy(std::span<const double> truths,
  std::span<const double> estimates, double gate_hz, double span_hz = 0.0);

/// (1/f_s) sqrt(mean squared error over matched pairs). Throws MetricError
/// without any matched pair.
double relative_rmse(std::span<const TrialResult> trials, double fs_hz);

/// One Monte-Carlo trial with the scenario reseeded to `seed`.
TrialResult run_trial(const ScenarioConfig & scenario, const SwarmConfig & swarm,
  const Policies & policies, std::uint64_t seed, std::uint64_t trial_index = 0);

enum class SweepAxis
{
  snr,
  resolution,
};

std::string_view to_string(SweepAxis axis) noexcept;

struct SweepOptions
{
  /// Draw continuous carriers instead of grid points.
  bool off_grid{false};
  /// Carrier band as fractions of the unambiguous span.
  double band_low_fraction{0.35 / 12.0};
  double band_high_fraction{1.0};
  /// Keep the base scenario's carriers instead of redrawing them (snapped
  /// to the grid unless off_grid).
  bool fixed_carriers{false};
  /// 0 = hardware concurrency.
  unsigned threads{0};
};

struct EvalPoint
{
  double axis_value{0.0};
  /// Empty when no pair matched at this point.
  std::optional<double> rmse_relative;
  double p_detect{0.0};
  double p_false_alarm{0.0};
  std::uint64_t k_trials{0};
  std::size_t matched{0};
  std::size_t misses{0};
  std::size_t false_alarms{0};
  /// Median of the per-trial decoded floors; empty unless measured.
  std::optional<double> decoded_floor;
};

struct EvalReport
{
  SweepAxis axis{SweepAxis::snr};
  std::vector<EvalPoint> points;
  std::uint64_t k_trials{0};
  std::uint64_t base_seed{0};
  double capture_duration_s{0.0};
  double runtime_s{0.0};
};

/// Emitters of `base` with carriers redrawn uniformly inside the band,
/// distinct channels, on the grid unless off_grid.
ScenarioConfig draw_carriers(const ScenarioConfig & base, const SwarmConfig & swarm,
  const SweepOptions & options, std::uint64_t seed);

/// K trials per axis value. Trial seeds come from (base_seed, point, k), so
/// results do not depend on scheduling.
EvalReport sweep(SweepAxis axis, std::span<const double> values, const ScenarioConfig & base_scenario,
  const SwarmConfig & base_swarm, const Policies & policies, std::uint64_t k_trials,
  std::uint64_t base_seed, const SweepOptions & options = {});

/// Ground truth without bucketization: node 0's full-rate capture,
/// snapshot FFTs at `resolution_hz`, averaged periodogram, same peak rule.
std::vector<std::uint64_t> nyquist_oracle(const ScenarioConfig & scenario, const SwarmConfig & swarm,
  double resolution_hz, const PeakPolicy & policy);

}  // namespace scft

#endif  // SCFT_EVAL_HARNESS_HPP_
