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


#ifndef SCFT_SWARM_LINK_HPP_
#define SCFT_SWARM_LINK_HPP_

#include "scft/codebook.hpp"
#include "scft/sampler.hpp"
#include "scft/types.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace scft
{

/// What one node shares with the swarm: its occupied buckets and the
/// complex amplitude of each in every snapshot.
struct SpectralReport
{
  NodeId node_id{0};
  std::uint64_t f_sp_hz{0};
  std::uint32_t m_points{0};
  std::uint32_t snapshot_count{0};
  std::vector<std::uint32_t> occupied_bins;
  /// snapshot_count x occupied_bins.size(), snapshot-major.
  std::vector<cplx> amplitudes;

  const cplx & amplitude(std::uint32_t l, std::size_t slot) const
  {
    return amplitudes[static_cast<std::size_t>(l) * occupied_bins.size() + slot];
  }

  bool operator==(const SpectralReport &) const = default;
};

/// Throws ValidationError on unsorted bins, out-of-range bins, or an
/// amplitude block of the wrong size.
void validate(const SpectralReport & report);

/// Report for the given bins, amplitudes copied from the snapshot spectra.
SpectralReport make_report(const SnapshotSpectra & spectra, std::uint64_t f_sp_hz,
  std::span<const std::uint32_t> occupied_bins);

inline constexpr std::uint16_t kWireVersion = 1;
inline constexpr std::size_t kWireHeaderSize = 28;

/// Little-endian: "SCFT", u16 version, u16 node_id, u64 f_sp_hz,
/// u32 m_points, u32 snapshot_count, u32 bin_count, bin_count x u32 bins,
/// then L*bin_count (f64 re, f64 im) pairs, snapshot-major.
std::vector<std::uint8_t> encode_report(const SpectralReport & report);

/// Parses a whole record or throws WireError; trailing bytes are rejected.
SpectralReport decode_report(std::span<const std::uint8_t> bytes);

void write_report_file(const std::filesystem::path & path, const SpectralReport & report);
SpectralReport read_report_file(const std::filesystem::path & path);

/// The coded spectrum Y_C = B o c for the nodes that reported.
///
/// Stored compactly: per node a P x Q slot table (-1 where the channel's
/// bucket is unoccupied) plus the node's own L x |S_p| amplitude block, so
/// values are zero exactly where occupancy is zero.
class CodedSpectrum
{
public:
  CodedSpectrum(std::uint64_t q_total, std::uint32_t snapshot_count, std::vector<NodeId> node_ids,
    std::vector<std::int32_t> slots, std::vector<std::vector<cplx>> amplitudes,
    std::vector<std::size_t> bin_counts);

  std::uint64_t q_total() const noexcept { return q_total_; }
  std::uint32_t snapshot_count() const noexcept { return snapshot_count_; }
  std::size_t node_count() const noexcept { return node_ids_.size(); }
  const std::vector<NodeId> & node_ids() const noexcept { return node_ids_; }

  bool occupied(std::size_t p, std::uint64_t q) const { return slot(p, q) >= 0; }
  cplx value(std::size_t p, std::uint64_t q, std::uint32_t l) const
  {
    const auto s = slot(p, q);
    if (s < 0) {
      return {};
    }
    return amplitudes_[p][static_cast<std::size_t>(l) * bin_counts_[p] + static_cast<std::size_t>(s)];
  }
  /// True when every node's bucket for q is occupied.
  bool fully_occupied(std::uint64_t q) const;

  /// Dense P x Q occupancy mask (the binary matrix c), row-major.
  std::vector<std::uint8_t> occupancy() const;

private:
  std::int32_t slot(std::size_t p, std::uint64_t q) const { return slots_[p * q_total_ + q]; }

  std::uint64_t q_total_;
  std::uint32_t snapshot_count_;
  std::vector<NodeId> node_ids_;
  std::vector<std::int32_t> slots_;
  std::vector<std::vector<cplx>> amplitudes_;
  std::vector<std::size_t> bin_counts_;
};

struct FuseOptions
{
  /// Drop codebook rows of nodes without a report instead of failing.
  bool allow_missing{false};
};

/// Merge reports by node id into the coded spectrum. Output does not
/// depend on report order. With allow_missing the result only has rows for
/// reporting nodes; decode it with cb.restrict_to(result.node_ids()).
CodedSpectrum fuse(std::span<const SpectralReport> reports, const Codebook & cb,
  const FuseOptions & options = {});

}  // namespace scft

#endif  // SCFT_SWARM_LINK_HPP_
