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


#ifndef SCFT_TESTS_FIXTURES_HPP_
#define SCFT_TESTS_FIXTURES_HPP_

#include "scft/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace fixtures
{

// Swarm whose nodes have FFT sizes `ms`: f_s = resolution * q_total and
// r_p = q_total / M_p (q_total must be a multiple of every M_p).
inline scft::SwarmConfig swarm_with_m(std::initializer_list<std::uint32_t> ms, std::uint64_t q_total,
  double resolution_hz = 1.0)
{
  scft::SwarmConfig s;
  s.resolution_hz = resolution_hz;
  s.nyquist_rate_hz = resolution_hz * static_cast<double>(q_total);
  scft::NodeId id = 1;
  double x = 0.0;
  for (auto m : ms) {
    scft::NodeConfig n;
    n.node_id = id++;
    n.decimation = static_cast<std::uint32_t>(q_total / m);
    n.position = {x, 0.0};
    x += 1.5;
    s.nodes.push_back(n);
  }
  return s;
}

// 12 GHz Nyquist rate, nodes at 3 GHz (r = 4) and 4 GHz (r = 3).
inline scft::SwarmConfig reference_swarm(double resolution_hz = 10e6)
{
  scft::SwarmConfig s;
  s.nyquist_rate_hz = 12e9;
  s.resolution_hz = resolution_hz;
  s.nodes = {
    scft::NodeConfig{1, {0.0, 0.0}, 4},
    scft::NodeConfig{2, {1.5, 0.0}, 3},
  };
  return s;
}

inline scft::EmitterSpec tone(double f_hz, double power = 1.0, double azimuth = 0.0)
{
  scft::EmitterSpec e;
  e.carrier_hz = f_hz;
  e.modulation = scft::Modulation::tone;
  e.power = power;
  e.azimuth_rad = azimuth;
  return e;
}

inline scft::ScenarioConfig scene(std::vector<scft::EmitterSpec> emitters, double duration_s,
  std::optional<double> snr_db = std::nullopt, std::uint64_t seed = 1)
{
  scft::ScenarioConfig sc;
  sc.emitters = std::move(emitters);
  sc.capture_duration_s = duration_s;
  sc.snr_db = snr_db;
  sc.seed = seed;
  return sc;
}

// The four carriers of the bucketization-bandwidth study, snapped to the grid.
inline std::vector<scft::EmitterSpec> reference_tones(double resolution_hz)
{
  std::vector<scft::EmitterSpec> out;
  for (double f : {0.95e9, 3.37e9, 7.56e9, 10.5e9}) {
    out.push_back(tone(scft::snap_to_grid(f, resolution_hz), 1.0, 0.3));
  }
  return out;
}

}  // namespace fixtures

#endif  // SCFT_TESTS_FIXTURES_HPP_
