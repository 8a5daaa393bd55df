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


#ifndef SCFT_DECODER_HPP_
#define SCFT_DECODER_HPP_

#include "scft/codebook.hpp"
#include "scft/swarm_link.hpp"
#include "scft/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace scft
{

/// Snapshot-averaged P x P covariance of one channel across nodes.
struct ChannelCovariance
{
  std::uint64_t channel{0};
  std::size_t size{0};
  std::vector<cplx> matrix;  // row-major

  const cplx & operator()(std::size_t i, std::size_t j) const { return matrix[i * size + j]; }
};

struct Detection
{
  std::uint64_t channel{0};
  double frequency_hz{0.0};
  double power{0.0};

  bool operator==(const Detection &) const = default;
};

struct SpectrumEstimate
{
  double resolution_hz{0.0};
  std::vector<double> powers;
  /// Sorted by descending power.
  std::vector<Detection> detections;
};

enum class ThresholdMode
{
  relative,
  absolute,
};

struct DetectPolicy
{
  ThresholdMode mode{ThresholdMode::relative};
  /// Relative mode: keep channels within this many dB of the strongest.
  double threshold_db{10.0};
  /// Absolute mode: keep channels with power >= this value.
  double absolute_threshold{0.0};
};

/// R_q = (1/L) sum_l v_l v_l^H with v_l the node values of channel q.
ChannelCovariance channel_covariance(const CodedSpectrum & ys, std::uint64_t q);

/// Smallest |entry| of R_q.
double channel_power(const ChannelCovariance & r);

/// powers[q] = channel_power(R_q); channels missing from any node's report
/// decode to exactly 0 without forming R_q. Detections are left empty.
SpectrumEstimate decode_spectrum(const CodedSpectrum & ys, const Codebook & cb);

/// Channels above the threshold, strongest first (ties by channel).
/// A relative threshold over an all-zero spectrum yields nothing.
std::vector<Detection> detect(const SpectrumEstimate & est, const DetectPolicy & policy);

}  // namespace scft

#endif  // SCFT_DECODER_HPP_
