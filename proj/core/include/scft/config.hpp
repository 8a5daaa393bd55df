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


#ifndef SCFT_CONFIG_HPP_
#define SCFT_CONFIG_HPP_

#include "scft/eval_harness.hpp"
#include "scft/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scft
{

struct SweepSettings
{
  /// +inf marks a noiseless point ("inf" or null in JSON).
  std::vector<double> snr_db{-10.0, -5.0, 0.0, 5.0, 10.0, 20.0};
  std::vector<double> resolution_hz{100e6, 10e6, 1e6};
  std::uint64_t k_trials{50};
  SweepOptions options{};
};

/// One JSON document with `swarm`, `scenario`, `policies` and optional
/// `sweep` sections. See README for the schema.
struct RunConfig
{
  SwarmConfig swarm;
  ScenarioConfig scenario;
  Policies policies;
  SweepSettings sweep;
};

/// Parse only (commands validate what they use); errors are ConfigError naming the offending key
/// path (e.g. "swarm.nodes[1].decimation").
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path & path);

}  // namespace scft

#endif  // SCFT_CONFIG_HPP_
