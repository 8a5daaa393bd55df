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


#include "scft/decoder.hpp"

#include "scft/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace scft
{

ChannelCovariance channel_covariance(const CodedSpectrum & ys, std::uint64_t q)
{
  if (q >= ys.q_total()) {
    throw ValidationError("channel_covariance: channel " + std::to_string(q) + " out of range");
  }
  const std::size_t p = ys.node_count();
  const std::uint32_t l_count = ys.snapshot_count();
  ChannelCovariance r;
  r.channel = q;
  r.size = p;
  r.matrix.assign(p * p, cplx{});
  if (l_count == 0) {
    return r;
  }

  std::vector<cplx> v(p);
  for (std::uint32_t l = 0; l < l_count; ++l) {
    for (std::size_t i = 0; i < p; ++i) {
      v[i] = ys.value(i, q, l);
    }
    for (std::size_t i = 0; i < p; ++i) {
      r.matrix[i * p + i] += std::norm(v[i]);
      for (std::size_t j = i + 1; j < p; ++j) {
        r.matrix[i * p + j] += v[i] * std::conj(v[j]);
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(l_count);
  for (std::size_t i = 0; i < p; ++i) {
    r.matrix[i * p + i] *= inv;
    for (std::size_t j = i + 1; j < p; ++j) {
      r.matrix[i * p + j] *= inv;
      r.matrix[j * p + i] = std::conj(r.matrix[i * p + j]);
    }
  }
  return r;
}

double channel_power(const ChannelCovariance & r)
{
  if (r.matrix.empty()) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto & e : r.matrix) {
    best = std::min(best, std::abs(e));
  }
  return best;
}

SpectrumEstimate decode_spectrum(const CodedSpectrum & ys, const Codebook & cb)
{
  if (ys.q_total() != cb.q_total()) {
    throw DecodeError("coded spectrum has " + std::to_string(ys.q_total()) +
      " channels, codebook has " + std::to_string(cb.q_total()));
  }
  if (ys.node_ids() != cb.node_ids()) {
    throw DecodeError("coded spectrum rows do not match the codebook nodes");
  }
  SpectrumEstimate est;
  est.resolution_hz = cb.resolution_hz();
  est.powers.assign(ys.q_total(), 0.0);
  for (std::uint64_t q = 0; q < ys.q_total(); ++q) {
    if (ys.fully_occupied(q)) {
      est.powers[q] = channel_power(channel_covariance(ys, q));
    }
  }
  return est;
}

std::vector<Detection> detect(const SpectrumEstimate & est, const DetectPolicy & policy)
{
  double threshold = 0.0;
  if (policy.mode == ThresholdMode::relative) {
    const double peak = est.powers.empty() ? 0.0 : *std::max_element(est.powers.begin(), est.powers.end());
    if (!(peak > 0.0)) {
      return {};
    }
    threshold = peak * std::pow(10.0, -policy.threshold_db / 10.0);
  } else {
    threshold = policy.absolute_threshold;
  }

  std::vector<Detection> out;
  for (std::uint64_t q = 0; q < est.powers.size(); ++q) {
    const double p = est.powers[q];
    if (p > 0.0 && p >= threshold) {
      out.push_back({q, static_cast<double>(q) * est.resolution_hz, p});
    }
  }
  std::stable_sort(out.begin(), out.end(),
    [](const Detection & a, const Detection & b) { return a.power > b.power; });
  return out;
}

}  // namespace scft
