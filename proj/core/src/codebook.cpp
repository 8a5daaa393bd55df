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


#include "scft/codebook.hpp"

#include "scft/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace scft
{

std::int64_t signed_code(std::uint64_t q, std::uint32_t m_points)
{
  const auto r = static_cast<std::int64_t>(q % m_points);
  const auto m = static_cast<std::int64_t>(m_points);
  return 2 * r > m ? r - m : r;
}

std::uint32_t signed_code_to_bin(std::int64_t c, std::uint32_t m_points)
{
  const auto m = static_cast<std::int64_t>(m_points);
  // c in (-M/2, M/2]  <=>  -M < 2c <= M
  if (m_points == 0 || 2 * c <= -m || 2 * c > m) {
    throw ValidationError("signed code " + std::to_string(c) + " outside (-M/2, M/2] for M = " +
      std::to_string(m_points));
  }
  return static_cast<std::uint32_t>(((c % m) + m) % m);
}

std::uint64_t span_channels(std::span<const std::uint32_t> m_points)
{
  std::uint64_t l = 1;
  for (const auto m : m_points) {
    if (m == 0) {
      throw ConfigError("span_channels: zero FFT size");
    }
    const std::uint64_t g = std::gcd(l, static_cast<std::uint64_t>(m));
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(l / g, static_cast<std::uint64_t>(m), &next)) {
      throw ConfigError("span_channels: lcm overflows 64 bits");
    }
    l = next;
  }
  return l;
}

double unambiguous_span(const SwarmConfig & swarm)
{
  std::vector<std::uint32_t> ms;
  ms.reserve(swarm.nodes.size());
  for (const auto & n : swarm.nodes) {
    ms.push_back(swarm.m_points(n));
  }
  return static_cast<double>(span_channels(ms)) * swarm.resolution_hz;
}

Codebook::Codebook(double resolution_hz, std::uint64_t q_total, std::vector<CodebookNode> nodes)
: resolution_hz_(resolution_hz), q_total_(q_total), span_channels_(1), nodes_(std::move(nodes))
{
  if (q_total_ == 0) {
    throw ConfigError("codebook: Q must be positive");
  }
  std::vector<std::uint32_t> ms;
  for (const auto & n : nodes_) {
    if (n.m_points == 0) {
      throw ConfigError("codebook: node " + std::to_string(n.node_id) + " has M_p = 0");
    }
    ms.push_back(n.m_points);
  }
  span_channels_ = scft::span_channels(ms);

  codes_.resize(nodes_.size() * q_total_);
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    const auto m = nodes_[p].m_points;
    auto * row = codes_.data() + p * q_total_;
    for (std::uint64_t q = 0; q < q_total_; ++q) {
      row[q] = signed_code(q, m);
    }
  }
}

std::vector<NodeId> Codebook::node_ids() const
{
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto & n : nodes_) {
    ids.push_back(n.node_id);
  }
  return ids;
}

std::uint32_t Codebook::bin(std::size_t p, std::uint64_t q) const
{
  return signed_code_to_bin(code(p, q), nodes_[p].m_points);
}

Codebook Codebook::restrict_to(std::span<const NodeId> ids) const
{
  std::vector<CodebookNode> kept;
  for (const auto id : ids) {
    const auto it = std::find_if(nodes_.begin(), nodes_.end(),
      [id](const CodebookNode & n) { return n.node_id == id; });
    if (it == nodes_.end()) {
      throw ConfigError("codebook has no node " + std::to_string(id));
    }
    kept.push_back(*it);
  }
  return Codebook(resolution_hz_, q_total_, std::move(kept));
}

bool CollisionReport::collides(std::uint64_t a, std::uint64_t b) const
{
  const auto key = std::minmax(a, b);
  return std::binary_search(pairs.begin(), pairs.end(), std::pair{key.first, key.second});
}

Codebook build_codebook(const SwarmConfig & swarm)
{
  if (swarm.nodes.empty()) {
    throw ConfigError("build_codebook: no nodes");
  }
  const std::uint64_t q_total = swarm.channel_total();
  std::vector<CodebookNode> nodes;
  for (const auto & n : swarm.nodes) {
    CodebookNode cn;
    cn.node_id = n.node_id;
    cn.m_points = swarm.m_points(n);
    cn.rate_hz = swarm.node_rate_hz(n);
    cn.zone_count = q_total % cn.m_points == 0
      ? q_total / cn.m_points
      : static_cast<std::uint64_t>(std::ceil(swarm.nyquist_rate_hz / cn.rate_hz - 1e-9));
    nodes.push_back(cn);
  }
  return Codebook(swarm.resolution_hz, q_total, std::move(nodes));
}

CollisionReport verify_code_uniqueness(const Codebook & cb)
{
  const std::uint64_t q_total = cb.q_total();
  const std::size_t p_count = cb.node_count();
  std::vector<std::uint64_t> order(q_total);
  std::iota(order.begin(), order.end(), std::uint64_t{0});

  auto column_less = [&](std::uint64_t a, std::uint64_t b) {
    for (std::size_t p = 0; p < p_count; ++p) {
      const auto ca = cb.code(p, a);
      const auto cbv = cb.code(p, b);
      if (ca != cbv) {
        return ca < cbv;
      }
    }
    return a < b;
  };
  auto column_equal = [&](std::uint64_t a, std::uint64_t b) {
    for (std::size_t p = 0; p < p_count; ++p) {
      if (cb.code(p, a) != cb.code(p, b)) {
        return false;
      }
    }
    return true;
  };
  std::sort(order.begin(), order.end(), column_less);

  CollisionReport report;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && column_equal(order[start], order[end])) {
      ++end;
    }
    for (std::size_t i = start; i < end; ++i) {
      for (std::size_t j = i + 1; j < end; ++j) {
        report.pairs.emplace_back(std::min(order[i], order[j]), std::max(order[i], order[j]));
      }
    }
    start = end;
  }
  std::sort(report.pairs.begin(), report.pairs.end());
  return report;
}

}  // namespace scft
