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


#ifndef SCFT_SAMPLER_HPP_
#define SCFT_SAMPLER_HPP_

#include "scft/scenario.hpp"
#include "scft/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace scft
{

struct SubNyquistStream
{
  NodeId node_id{0};
  std::vector<cplx> samples;
  double rate_hz{0.0};
};

/// L x M_p snapshot spectra, row-major (snapshot-major).
struct SnapshotSpectra
{
  NodeId node_id{0};
  std::uint32_t m_points{0};
  std::uint32_t snapshot_count{0};
  double resolution_hz{0.0};
  std::vector<cplx> spectra;

  std::span<const cplx> snapshot(std::uint32_t l) const
  {
    return {spectra.data() + static_cast<std::size_t>(l) * m_points, m_points};
  }
  const cplx & at(std::uint32_t l, std::uint32_t m) const
  {
    return spectra[static_cast<std::size_t>(l) * m_points + m];
  }
};

struct FoldResult
{
  double folded_hz{0.0};
  std::int64_t zone{0};
};

struct PeakPolicy
{
  /// Occupancy threshold above the median floor, dB. Must be > 0.
  double threshold_factor_db{10.0};
  std::optional<std::size_t> max_peaks;
  /// Floor is clamped to max(periodogram) * 10^(-dynamic_range_db/10) so a
  /// noiseless periodogram (median ~ rounding error) does not flag every
  /// leakage bin.
  double dynamic_range_db{120.0};
};

/// y[n] = x[n r]; no anti-alias filtering.
SubNyquistStream subsample(const NodeCapture & capture, std::uint32_t r);
SubNyquistStream subsample(const SubNyquistStream & stream, std::uint32_t r);

/// Contiguous M_p-sample windows, unnormalized forward DFT each, no taper.
/// A trailing partial window is discarded.
SnapshotSpectra snapshot_spectra(const SubNyquistStream & stream, double resolution_hz);

/// Unnormalized forward DFTs of consecutive `m`-sample windows of `samples`.
/// L = samples.size() / m; returns L*m values.
std::vector<cplx> windowed_dft(std::span<const cplx> samples, std::uint32_t m);

/// P[m] = (1/L) sum_l |Y_l[m]|^2.
std::vector<double> average_periodogram(const SnapshotSpectra & spectra);

/// Occupied bins: P[m] >= floor * 10^(gamma/10) with a median floor.
/// Capped to the max_peaks largest when set; returned ascending.
std::vector<std::uint32_t> peak_search(std::span<const double> periodogram, const PeakPolicy & policy);

/// Unique (f_l, k) with f_l in (-f_sp/2, f_sp/2] and f = f_l + k f_sp.
FoldResult fold_frequency(double f_hz, double f_sp_hz);

}  // namespace scft

#endif  // SCFT_SAMPLER_HPP_
