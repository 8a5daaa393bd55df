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


#ifndef SCFT_CODEBOOK_HPP_
#define SCFT_CODEBOOK_HPP_

#include "scft/types.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace scft
{

struct CodebookNode
{
  NodeId node_id{0};
  std::uint32_t m_points{0};
  /// Number of Nyquist zones folded onto this node's buckets (Q / M_p when
  /// integral, otherwise ceil(f_s / f_sp)).
  std::uint64_t zone_count{0};
  double rate_hz{0.0};
};

/// Sensing codes c_{p,q} for every node p and channel q in [0, Q).
///
/// Codes are the channel index reduced into (-M_p/2, M_p/2]; a channel's
/// column of codes is what distinguishes it from every other channel.
/// Immutable after construction.
class Codebook
{
public:
  Codebook(double resolution_hz, std::uint64_t q_total, std::vector<CodebookNode> nodes);

  std::uint64_t q_total() const noexcept { return q_total_; }
  double resolution_hz() const noexcept { return resolution_hz_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<CodebookNode> & nodes() const noexcept { return nodes_; }
  const CodebookNode & node(std::size_t p) const { return nodes_.at(p); }
  std::vector<NodeId> node_ids() const;

  /// lcm of M_p, in channels.
  std::uint64_t span_channels() const noexcept { return span_channels_; }
  double unambiguous_span_hz() const noexcept { return span_channels_ * resolution_hz_; }
  bool ambiguous() const noexcept { return q_total_ > span_channels_; }

  std::int64_t code(std::size_t p, std::uint64_t q) const
  {
    return codes_[p * q_total_ + q];
  }
  /// Row p of the code matrix, length Q.
  std::span<const std::int64_t> row(std::size_t p) const
  {
    return {codes_.data() + p * q_total_, q_total_};
  }

  /// FFT bin of node p that channel q folds into.
  std::uint32_t bin(std::size_t p, std::uint64_t q) const;

  /// Rows for the listed nodes only (in the given order); the span is
  /// recomputed from the remaining nodes.
  Codebook restrict_to(std::span<const NodeId> ids) const;

private:
  double resolution_hz_;
  std::uint64_t q_total_;
  std::uint64_t span_channels_;
  std::vector<CodebookNode> nodes_;
  std::vector<std::int64_t> codes_;
};

/// Pairs of channels (q < q') whose full code columns are identical.
struct CollisionReport
{
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;

  bool empty() const noexcept { return pairs.empty(); }
  /// Symmetric lookup.
  bool collides(std::uint64_t a, std::uint64_t b) const;
};

/// Signed reduction of q into (-M/2, M/2].
std::int64_t signed_code(std::uint64_t q, std::uint32_t m_points);

/// c mod M in [0, M); c must lie in (-M/2, M/2].
std::uint32_t signed_code_to_bin(std::int64_t c, std::uint32_t m_points);

Codebook build_codebook(const SwarmConfig & swarm);

/// lcm of the node rates on the resolution grid, Hz.
double unambiguous_span(const SwarmConfig & swarm);
std::uint64_t span_channels(std::span<const std::uint32_t> m_points);

/// Exhaustive column comparison over [0, Q), by sorting columns.
CollisionReport verify_code_uniqueness(const Codebook & cb);

}  // namespace scft

#endif  // SCFT_CODEBOOK_HPP_
