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


#include "doctest.h"

#include "scft/config.hpp"
#include "scft/error.hpp"

#include <string>

using namespace scft;

namespace
{

const char * kMinimal = R"({
  "swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1,
            "nodes": [{"node_id": 1, "decimation": 4}, {"node_id": 2, "decimation": 3}]},
  "scenario": {"capture_duration_s": 8}
})";

std::string message_of(const std::string & text)
{
  try {
    (void)parse_config(text);
  } catch (const ConfigError & e) {
    return e.what();
  }
  return {};
}

std::string with_scenario(const std::string & body)
{
  return R"({"swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1,
    "nodes": [{"node_id": 1, "decimation": 4}, {"node_id": 2, "decimation": 3}]},
    "scenario": )" + body + "}";
}

}  // namespace

TEST_CASE("parse_config: minimal document and defaults")
{
  const auto cfg = parse_config(kMinimal);
  CHECK(cfg.swarm.nyquist_rate_hz == 12.0);
  REQUIRE(cfg.swarm.nodes.size() == 2);
  CHECK(cfg.swarm.nodes[1].decimation == 3);
  CHECK(cfg.swarm.clock_offset_policy == ClockOffsetPolicy::none);
  CHECK_FALSE(cfg.swarm.allow_ambiguous);
  CHECK(cfg.scenario.emitters.empty());
  CHECK(cfg.scenario.snr_db == std::optional<double>{0.0});  // absent means 0 dB, not noiseless
  CHECK(cfg.policies.peak.threshold_factor_db == 10.0);
  CHECK(cfg.policies.detect.mode == ThresholdMode::relative);
  CHECK(cfg.policies.detect.threshold_db == 10.0);
  CHECK(cfg.sweep.k_trials == 50);
}

TEST_CASE("parse_config: snr forms")
{
  CHECK(parse_config(with_scenario(R"({"capture_duration_s": 1, "snr_db": -3.5})")).scenario.snr_db ==
        std::optional<double>{-3.5});
  CHECK_FALSE(parse_config(with_scenario(R"({"capture_duration_s": 1, "snr_db": null})")).scenario.snr_db);
  CHECK_FALSE(parse_config(with_scenario(R"({"capture_duration_s": 1, "snr_db": "inf"})")).scenario.snr_db);
  CHECK(message_of(with_scenario(R"({"capture_duration_s": 1, "snr_db": "loud"})")).find("scenario.snr_db") == 0);
}

TEST_CASE("parse_config: emitters")
{
  const auto cfg = parse_config(with_scenario(R"({"capture_duration_s": 1, "emitters": [
    {"carrier_hz": 5, "modulation": "lfm", "bandwidth_hz": 2, "power": 3, "azimuth_rad": 0.1},
    {"carrier_hz": 2, "modulation": "bpsk", "chip_rate_hz": 0.5}]})"));
  REQUIRE(cfg.scenario.emitters.size() == 2);
  CHECK(cfg.scenario.emitters[0].modulation == Modulation::lfm);
  CHECK(cfg.scenario.emitters[0].bandwidth_hz == 2.0);
  CHECK(cfg.scenario.emitters[0].power == 3.0);
  CHECK(cfg.scenario.emitters[1].modulation == Modulation::bpsk);
  CHECK(cfg.scenario.emitters[1].chip_rate_hz == 0.5);
}

TEST_CASE("parse_config: errors name the offending key")
{
  CHECK(message_of("{").find("not valid JSON") != std::string::npos);
  CHECK(message_of(R"({"scenario": {"capture_duration_s": 1}})").find("swarm") == 0);
  CHECK(message_of(R"({"swarm": {}, "scenario": {"capture_duration_s": 1}})").find("swarm.nyquist_rate_hz") == 0);
  CHECK(message_of(std::string(kMinimal).replace(1, 0, R"("extra": 1,)")).find("config.extra") == 0);
  CHECK(message_of(with_scenario(R"({"capture_duration_s": 1, "emitters": [{"carrier_hz": 1, "colour": 2}]})"))
          .find("scenario.emitters[0].colour") == 0);
  CHECK(message_of(with_scenario(R"({"capture_duration_s": 1, "emitters": [{"carrier_hz": 1, "modulation": "am"}]})"))
          .find("scenario.emitters[0].modulation") == 0);
  CHECK(message_of(with_scenario(R"({"emitters": []})")).find("scenario.capture_duration_s") == 0);
  CHECK(message_of(R"({"swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1,
    "nodes": [{"node_id": 1, "decimation": 0}]}, "scenario": {"capture_duration_s": 1}})")
          .find("swarm.nodes[0].decimation") == 0);
  CHECK(message_of(R"({"swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1,
    "nodes": [{"node_id": 70000, "decimation": 2}]}, "scenario": {"capture_duration_s": 1}})")
          .find("swarm.nodes[0].node_id") == 0);
  CHECK(message_of(R"({"swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1, "clock_offset_policy": "gps",
    "nodes": []}, "scenario": {"capture_duration_s": 1}})")
          .find("swarm.clock_offset_policy") == 0);
  CHECK(message_of(std::string(kMinimal).replace(1, 0, R"("policies": {"peak": {"floor_estimator": "mean"}},)"))
          .find("policies.peak.floor_estimator") == 0);
  CHECK(message_of(std::string(kMinimal).replace(1, 0, R"("policies": {"detect": {"mode": "cfar"}},)"))
          .find("policies.detect.mode") == 0);
  CHECK(message_of(std::string(kMinimal).replace(1, 0, R"("sweep": {"k": -1},)")).find("sweep.k") == 0);
  CHECK(message_of(std::string(kMinimal).replace(1, 0, R"("sweep": {"snr_db": [1, "x"]},)"))
          .find("sweep.snr_db[1]") == 0);
}

TEST_CASE("load_config: shipped configs and missing files")
{
  for (const char * name : {"four_tone.json", "snr_sweep.json", "toy_3x4.json", "toy_2x4_q8.json", "empty_noiseless.json"}) {
    CAPTURE(name);
    RunConfig cfg;
    CHECK_NOTHROW(cfg = load_config(std::string(SCFT_CONFIG_DIR) + "/" + name));
    CHECK_NOTHROW(validate(cfg.swarm));
    CHECK_NOTHROW(validate(cfg.scenario, cfg.swarm));
  }
  const auto four = load_config(std::string(SCFT_CONFIG_DIR) + "/four_tone.json");
  REQUIRE(four.scenario.emitters.size() == 4);
  CHECK(four.scenario.emitters[1].carrier_hz == 3.37e9);
  CHECK(four.swarm.m_points(four.swarm.nodes[0]) == 300);
  CHECK(four.swarm.m_points(four.swarm.nodes[1]) == 400);

  try {
    (void)load_config("/nonexistent/scft.json");
    FAIL("expected an error");
  } catch (const ConfigError & e) {
    CHECK(std::string(e.what()).find("file not found") != std::string::npos);
  }
}
