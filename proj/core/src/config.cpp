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


#include "scft/config.hpp"

#include "scft/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

namespace scft
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string & path, const std::string & msg)
{
  throw ConfigError(path + ": " + msg);
}

void check_keys(const json & obj, const std::string & path, std::initializer_list<const char *> allowed)
{
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  for (const auto & [key, value] : obj.items()) {
    bool ok = false;
    for (const char * a : allowed) {
      ok = ok || key == a;
    }
    if (!ok) {
      fail(path + "." + key, "unknown key");
    }
  }
}

double get_number(const json & obj, const std::string & path, const char * key, double fallback, bool required = false)
{
  if (!obj.contains(key)) {
    if (required) {
      fail(path + "." + key, "missing required key");
    }
    return fallback;
  }
  const auto & v = obj.at(key);
  if (!v.is_number()) {
    fail(path + "." + key, "expected a number");
  }
  return v.get<double>();
}

std::uint64_t get_uint(const json & obj, const std::string & path, const char * key, std::uint64_t fallback,
  bool required = false)
{
  if (!obj.contains(key)) {
    if (required) {
      fail(path + "." + key, "missing required key");
    }
    return fallback;
  }
  const auto & v = obj.at(key);
  if (v.is_number_unsigned()) {
    return v.get<std::uint64_t>();
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) {
      return static_cast<std::uint64_t>(d);
    }
  }
  fail(path + "." + key, "expected a non-negative integer");
}

bool get_bool(const json & obj, const std::string & path, const char * key, bool fallback)
{
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj.at(key).is_boolean()) {
    fail(path + "." + key, "expected true or false");
  }
  return obj.at(key).get<bool>();
}

std::vector<double> get_number_list(const json & obj, const std::string & path, const char * key,
  std::vector<double> fallback, bool allow_inf = false)
{
  if (!obj.contains(key)) {
    return fallback;
  }
  const auto & v = obj.at(key);
  if (!v.is_array()) {
    fail(path + "." + key, "expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (allow_inf && (v[i].is_null() || (v[i].is_string() && v[i].get<std::string>() == "inf"))) {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    if (!v[i].is_number()) {
      fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

NodeConfig parse_node(const json & j, const std::string & path)
{
  check_keys(j, path, {"node_id", "position_m", "decimation"});
  NodeConfig n;
  const auto id = get_uint(j, path, "node_id", 0, true);
  if (id > std::numeric_limits<NodeId>::max()) {
    fail(path + ".node_id", "must fit in 16 bits");
  }
  n.node_id = static_cast<NodeId>(id);
  const auto r = get_uint(j, path, "decimation", 0, true);
  if (r == 0 || r > std::numeric_limits<std::uint32_t>::max()) {
    fail(path + ".decimation", "must be a positive integer");
  }
  n.decimation = static_cast<std::uint32_t>(r);
  if (j.contains("position_m")) {
    const auto & p = j.at("position_m");
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      fail(path + ".position_m", "expected [x, y] in meters");
    }
    n.position = {p[0].get<double>(), p[1].get<double>()};
  }
  return n;
}

SwarmConfig parse_swarm(const json & j)
{
  const std::string path = "swarm";
  check_keys(j, path, {"nyquist_rate_hz", "resolution_hz", "nodes", "clock_offset_policy",
    "max_clock_offset_samples", "channel_count", "allow_ambiguous"});
  SwarmConfig s;
  s.nyquist_rate_hz = get_number(j, path, "nyquist_rate_hz", 0.0, true);
  s.resolution_hz = get_number(j, path, "resolution_hz", 0.0, true);
  if (!j.contains("nodes") || !j.at("nodes").is_array()) {
    fail(path + ".nodes", "expected an array of nodes");
  }
  const auto & nodes = j.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.nodes.push_back(parse_node(nodes[i], path + ".nodes[" + std::to_string(i) + "]"));
  }
  if (j.contains("clock_offset_policy")) {
    const auto & v = j.at("clock_offset_policy");
    const auto name = v.is_string() ? v.get<std::string>() : std::string{};
    if (name == "none") {
      s.clock_offset_policy = ClockOffsetPolicy::none;
    } else if (name == "random-integer-sample") {
      s.clock_offset_policy = ClockOffsetPolicy::random_integer_sample;
    } else {
      fail(path + ".clock_offset_policy", "expected \"none\" or \"random-integer-sample\"");
    }
  }
  s.max_clock_offset_samples =
    static_cast<std::uint32_t>(get_uint(j, path, "max_clock_offset_samples", s.max_clock_offset_samples));
  if (j.contains("channel_count")) {
    s.channel_count = get_uint(j, path, "channel_count", 0);
  }
  s.allow_ambiguous = get_bool(j, path, "allow_ambiguous", false);
  return s;
}

EmitterSpec parse_emitter(const json & j, const std::string & path)
{
  check_keys(j, path, {"carrier_hz", "modulation", "bandwidth_hz", "power", "azimuth_rad",
    "pulse_start_s", "pulse_width_s", "chip_rate_hz", "sweep_rate_hz_per_s"});
  EmitterSpec e;
  e.carrier_hz = get_number(j, path, "carrier_hz", 0.0, true);
  if (j.contains("modulation")) {
    const auto & v = j.at("modulation");
    const auto m = v.is_string() ? parse_modulation(v.get<std::string>()) : std::nullopt;
    if (!m) {
      fail(path + ".modulation", "expected one of tone, monopulse, bpsk, lfm");
    }
    e.modulation = *m;
  }
  e.bandwidth_hz = get_number(j, path, "bandwidth_hz", e.bandwidth_hz);
  e.power = get_number(j, path, "power", e.power);
  e.azimuth_rad = get_number(j, path, "azimuth_rad", e.azimuth_rad);
  e.pulse_start_s = get_number(j, path, "pulse_start_s", e.pulse_start_s);
  e.pulse_width_s = get_number(j, path, "pulse_width_s", e.pulse_width_s);
  e.chip_rate_hz = get_number(j, path, "chip_rate_hz", e.chip_rate_hz);
  e.sweep_rate_hz_per_s = get_number(j, path, "sweep_rate_hz_per_s", e.sweep_rate_hz_per_s);
  return e;
}

ScenarioConfig parse_scenario(const json & j)
{
  const std::string path = "scenario";
  check_keys(j, path, {"emitters", "snr_db", "seed", "capture_duration_s", "reference_power"});
  ScenarioConfig s;
  if (j.contains("emitters")) {
    const auto & em = j.at("emitters");
    if (!em.is_array()) {
      fail(path + ".emitters", "expected an array");
    }
    for (std::size_t i = 0; i < em.size(); ++i) {
      s.emitters.push_back(parse_emitter(em[i], path + ".emitters[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("snr_db")) {
    const auto & v = j.at("snr_db");
    if (v.is_null() || (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "+inf"))) {
      s.snr_db = std::nullopt;
    } else if (v.is_number()) {
      s.snr_db = v.get<double>();
    } else {
      fail(path + ".snr_db", "expected a number, null or \"inf\" (noiseless)");
    }
  }
  s.seed = get_uint(j, path, "seed", 0);
  s.capture_duration_s = get_number(j, path, "capture_duration_s", 0.0, true);
  if (j.contains("reference_power")) {
    s.reference_power = get_number(j, path, "reference_power", 1.0);
  }
  return s;
}

Policies parse_policies(const json & j)
{
  const std::string path = "policies";
  check_keys(j, path, {"peak", "detect", "match_gate_bins", "measure_floor"});
  Policies p;
  if (j.contains("peak")) {
    const auto & pk = j.at("peak");
    const std::string pp = path + ".peak";
    check_keys(pk, pp, {"floor_estimator", "threshold_factor_db", "max_peaks", "dynamic_range_db"});
    if (pk.contains("floor_estimator") && pk.at("floor_estimator") != "median") {
      fail(pp + ".floor_estimator", "only \"median\" is supported");
    }
    p.peak.threshold_factor_db = get_number(pk, pp, "threshold_factor_db", p.peak.threshold_factor_db);
    if (!(p.peak.threshold_factor_db > 0.0)) {
      fail(pp + ".threshold_factor_db", "must be positive");
    }
    if (pk.contains("max_peaks") && !pk.at("max_peaks").is_null()) {
      p.peak.max_peaks = get_uint(pk, pp, "max_peaks", 0);
    }
    p.peak.dynamic_range_db = get_number(pk, pp, "dynamic_range_db", p.peak.dynamic_range_db);
  }
  if (j.contains("detect")) {
    const auto & d = j.at("detect");
    const std::string dp = path + ".detect";
    check_keys(d, dp, {"mode", "threshold_db", "absolute_threshold"});
    if (d.contains("mode")) {
      const auto mode = d.at("mode").is_string() ? d.at("mode").get<std::string>() : std::string{};
      if (mode == "relative") {
        p.detect.mode = ThresholdMode::relative;
      } else if (mode == "absolute") {
        p.detect.mode = ThresholdMode::absolute;
      } else {
        fail(dp + ".mode", "expected \"relative\" or \"absolute\"");
      }
    }
    p.detect.threshold_db = get_number(d, dp, "threshold_db", p.detect.threshold_db);
    p.detect.absolute_threshold = get_number(d, dp, "absolute_threshold", p.detect.absolute_threshold);
  }
  p.match_gate_bins = get_number(j, path, "match_gate_bins", p.match_gate_bins);
  p.measure_floor = get_bool(j, path, "measure_floor", p.measure_floor);
  return p;
}

SweepSettings parse_sweep(const json & j)
{
  const std::string path = "sweep";
  check_keys(j, path, {"snr_db", "resolution_hz", "k", "off_grid", "band_low_fraction",
    "band_high_fraction", "fixed_carriers", "threads"});
  SweepSettings s;
  s.snr_db = get_number_list(j, path, "snr_db", s.snr_db, true);
  s.resolution_hz = get_number_list(j, path, "resolution_hz", s.resolution_hz);
  s.k_trials = get_uint(j, path, "k", s.k_trials);
  s.options.off_grid = get_bool(j, path, "off_grid", false);
  s.options.fixed_carriers = get_bool(j, path, "fixed_carriers", false);
  s.options.band_low_fraction = get_number(j, path, "band_low_fraction", s.options.band_low_fraction);
  s.options.band_high_fraction = get_number(j, path, "band_high_fraction", s.options.band_high_fraction);
  s.options.threads = static_cast<unsigned>(get_uint(j, path, "threads", 0));
  return s;
}

}  // namespace

RunConfig parse_config(std::string_view json_text)
{
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error & e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config", {"swarm", "scenario", "policies", "sweep"});
  if (!root.contains("swarm")) {
    fail("swarm", "missing required section");
  }
  if (!root.contains("scenario")) {
    fail("scenario", "missing required section");
  }
  RunConfig cfg;
  cfg.swarm = parse_swarm(root.at("swarm"));
  cfg.scenario = parse_scenario(root.at("scenario"));
  if (root.contains("policies")) {
    cfg.policies = parse_policies(root.at("policies"));
  }
  if (root.contains("sweep")) {
    cfg.sweep = parse_sweep(root.at("sweep"));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path & path)
{
  std::ifstream f(path);
  if (!f) {
    throw ConfigError(path.string() + ": file not found or unreadable");
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace scft
