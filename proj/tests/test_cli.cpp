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

#include "cli.hpp"

#include "scft/swarm_link.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "scft");
  std::vector<const char *> argv;
  for (const auto & a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = scft::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config(const char * name)
{
  return std::string(SCFT_CONFIG_DIR) + "/" + name;
}

std::string slurp(const fs::path & p)
{
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Rows below the comment block and header line.
std::vector<std::vector<std::string>> rows(const fs::path & p)
{
  std::istringstream in(slurp(p));
  std::string line;
  std::vector<std::vector<std::string>> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    out.push_back(cells);
  }
  return out;
}

std::string data_part(const fs::path & p)
{
  const auto text = slurp(p);
  const auto pos = text.find("\n", text.rfind("# seed:"));
  return text.substr(pos + 1);
}

struct TempDir
{
  fs::path path;
  TempDir()
  {
    static int counter = 0;
    path = fs::temp_directory_path() / ("scft_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char * name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("codebook: 3 x 4 toy table")
{
  TempDir dir;
  const auto r = run({"codebook", "--config", config("toy_3x4.json"), "--out", dir.path.string()});
  CHECK(r.code == 0);
  const auto table = rows(dir.path / "codebook.csv");
  REQUIRE(table.size() == 12);
  const std::vector<std::string> c3{"0", "1", "-1", "0", "1", "-1", "0", "1", "-1", "0", "1", "-1"};
  const std::vector<std::string> c4{"0", "1", "2", "-1", "0", "1", "2", "-1", "0", "1", "2", "-1"};
  for (std::size_t q = 0; q < 12; ++q) {
    CHECK(table[q][0] == std::to_string(q));
    CHECK(table[q][2] == c3[q]);
    CHECK(table[q][3] == c4[q]);
  }
  CHECK(rows(dir.path / "collisions.csv").empty());
  const auto text = slurp(dir.path / "codebook.csv");
  CHECK(text.find("channel,frequency_hz,code_1,code_2") != std::string::npos);
}

TEST_CASE("codebook: ambiguous swarm exits 3 and lists the pairs")
{
  TempDir dir;
  const auto r = run({"codebook", "--config", config("toy_2x4_q8.json"), "--out", dir.path.string()});
  CHECK(r.code == 3);
  const auto pairs = rows(dir.path / "collisions.csv");
  REQUIRE(pairs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(pairs[i][0] == std::to_string(i));
    CHECK(pairs[i][1] == std::to_string(i + 4));
  }
}

TEST_CASE("missing config file is a validation failure")
{
  TempDir dir;
  const auto r = run({"codebook", "--config", dir / "absent.json", "--out", dir.path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("file not found") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.path));
}

TEST_CASE("invalid config surfaces the key path")
{
  TempDir dir;
  fs::create_directories(dir.path);
  std::ofstream(dir / "bad.json") << R"({"swarm": {"nyquist_rate_hz": 12, "resolution_hz": 1, "nodes": []},
    "scenario": {"capture_duration_s": 1, "emitters": [{"carrier_hz": 1, "phase": 0}]}})";
  const auto r = run({"simulate", "--config", dir / "bad.json", "--out", dir.path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("scenario.emitters[0].phase") != std::string::npos);
}

TEST_CASE("simulate: four-tone config, manifest and determinism")
{
  TempDir a;
  TempDir b;
  const auto ra = run({"simulate", "--config", config("four_tone.json"), "--out", a.path.string()});
  const auto rb = run({"simulate", "--config", config("four_tone.json"), "--out", b.path.string()});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);

  std::set<std::string> channels;
  for (const auto & row : rows(a.path / "detections.csv")) {
    channels.insert(row[0]);
  }
  CHECK(channels == std::set<std::string>{"95", "337", "756", "1050"});

  for (const char * f : {"spectrum.csv", "detections.csv", "node_1.scft", "node_2.scft"}) {
    CAPTURE(f);
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
  const auto text = slurp(a.path / "detections.csv");
  CHECK(text.rfind("# tool: scft ", 0) == 0);
  CHECK(text.find("# subcommand: simulate\n") != std::string::npos);
  CHECK(text.find("# seed: 1\n") != std::string::npos);
  CHECK(text.find("# config_fnv1a64: ") != std::string::npos);
  CHECK(fs::exists(a.path / "manifest.json"));

  const auto report = scft::read_report_file(a.path / "node_1.scft");
  CHECK(report.node_id == 1);
  CHECK(report.m_points == 300);
  CHECK(report.f_sp_hz == 3000000000ull);
  CHECK(report.snapshot_count == 200);

  TempDir c;
  const auto rc = run({"simulate", "--config", config("four_tone.json"), "--out", c.path.string(), "--seed", "7"});
  CHECK(rc.code == 0);
  CHECK(slurp(c.path / "spectrum.csv").find("# seed: 7\n") != std::string::npos);
  CHECK(data_part(c.path / "spectrum.csv") != data_part(a.path / "spectrum.csv"));
}

TEST_CASE("simulate: noiseless empty scene gives no detections")
{
  TempDir dir;
  const auto r = run({"simulate", "--config", config("empty_noiseless.json"), "--out", dir.path.string()});
  CHECK(r.code == 0);
  CHECK(rows(dir.path / "detections.csv").empty());
}

TEST_CASE("decode: reproduces simulate from the report files")
{
  TempDir sim;
  TempDir dec;
  REQUIRE(run({"simulate", "--config", config("four_tone.json"), "--out", sim.path.string()}).code == 0);
  const auto n1 = sim / "node_1.scft";
  const auto n2 = sim / "node_2.scft";
  const auto r = run({"decode", "--config", config("four_tone.json"), "--out", dec.path.string(), n2, n1});
  CHECK(r.code == 0);
  CHECK(data_part(dec.path / "spectrum.csv") == data_part(sim.path / "spectrum.csv"));
  CHECK(data_part(dec.path / "detections.csv") == data_part(sim.path / "detections.csv"));

  const auto missing = run({"decode", "--config", config("four_tone.json"), "--out", dec.path.string(), n1});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("missing report from node 2") != std::string::npos);

  const auto partial =
    run({"decode", "--config", config("four_tone.json"), "--out", dec.path.string(), "--allow-missing-node", n1});
  CHECK(partial.code == 0);
  CHECK(partial.err.find("warning") != std::string::npos);

  auto bytes = slurp(n1);
  bytes[0] = 'X';
  std::ofstream(dec / "bad.scft", std::ios::binary) << bytes;
  const auto corrupt = run({"decode", "--config", config("four_tone.json"), "--out", dec.path.string(), dec / "bad.scft", n2});
  CHECK(corrupt.code == 2);
  CHECK(corrupt.err.find("magic") != std::string::npos);
}

TEST_CASE("sweep: noiseless single point, usage errors, resolution floor column")
{
  TempDir dir;
  fs::create_directories(dir.path);
  std::ofstream(dir / "quiet.json") << R"({
    "swarm": {"nyquist_rate_hz": 35, "resolution_hz": 1,
              "nodes": [{"node_id": 1, "decimation": 7}, {"node_id": 2, "decimation": 5}]},
    "scenario": {"emitters": [{"carrier_hz": 9}], "capture_duration_s": 6, "seed": 3},
    "sweep": {"snr_db": ["inf"]}})";
  const auto r = run({"sweep", "--config", dir / "quiet.json", "--out", dir.path.string(), "--axis", "snr", "--k", "1"});
  REQUIRE(r.code == 0);
  const auto table = rows(dir.path / "sweep.csv");
  REQUIRE(table.size() == 1);
  CHECK(table[0][1] == "0");
  CHECK(table[0][4] == "1");
  CHECK(slurp(dir.path / "sweep.csv").find("axis_value,rmse_relative,p_detect,p_false_alarm,k_trials") !=
        std::string::npos);
  CHECK(slurp(dir.path / "sweep.dat").find("# axis_value rmse_relative") != std::string::npos);

  CHECK(run({"sweep", "--config", dir / "quiet.json", "--out", dir.path.string(), "--k", "0"}).code == 1);
  CHECK(run({"sweep", "--config", dir / "quiet.json", "--out", dir.path.string(), "--axis", "time"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);

  const auto res = run({"sweep", "--config", config("four_tone.json"), "--out", dir.path.string(), "--axis", "resolution",
    "--k", "3"});
  REQUIRE(res.code == 0);
  const auto pts = rows(dir.path / "sweep.csv");
  REQUIRE(pts.size() == 3);
  CHECK(std::stod(pts[0][5]) > std::stod(pts[1][5]));
  CHECK(std::stod(pts[1][5]) > std::stod(pts[2][5]));
}
