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


#include "cli.hpp"

#include "output.hpp"

#include "scft/codebook.hpp"
#include "scft/config.hpp"
#include "scft/decoder.hpp"
#include "scft/error.hpp"
#include "scft/eval_harness.hpp"
#include "scft/swarm_link.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef SCFT_TOOL_VERSION
#define SCFT_TOOL_VERSION "0.0.0"
#endif

namespace scft::cli
{

namespace
{

struct CommonArgs
{
  std::string config;
  std::string out{"out"};
  std::optional<std::uint64_t> seed;
};

struct Loaded
{
  RunConfig cfg;
  RunManifest manifest;
};

Loaded load(const CommonArgs & args, const std::string & subcommand)
{
  std::ifstream f(args.config, std::ios::binary);
  if (!f) {
    throw ConfigError(args.config + ": file not found or unreadable");
  }
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();

  Loaded l;
  l.cfg = parse_config(text);
  if (args.seed) {
    l.cfg.scenario.seed = *args.seed;
  }
  l.manifest.tool_version = SCFT_TOOL_VERSION;
  l.manifest.subcommand = subcommand;
  l.manifest.config_path = args.config;
  l.manifest.config_hash = fnv1a64(text);
  l.manifest.seed = l.cfg.scenario.seed;
  l.manifest.output_dir = args.out;
  return l;
}

std::string channel_frequency(std::uint64_t q, double df)
{
  return format_number(static_cast<double>(q) * df);
}

void write_spectrum(const RunManifest & m, const SpectrumEstimate & est, std::vector<std::string> & files)
{
  TableWriter spectrum({"channel", "frequency_hz", "power"});
  for (std::uint64_t q = 0; q < est.powers.size(); ++q) {
    spectrum.add_row({std::to_string(q), channel_frequency(q, est.resolution_hz), format_number(est.powers[q])});
  }
  write_output(m, "spectrum.csv", spectrum.csv(m));

  TableWriter det({"channel", "frequency_hz", "power"});
  for (const auto & d : est.detections) {
    det.add_row({std::to_string(d.channel), format_number(d.frequency_hz), format_number(d.power)});
  }
  write_output(m, "detections.csv", det.csv(m));
  files.push_back("spectrum.csv");
  files.push_back("detections.csv");
}

int cmd_codebook(const CommonArgs & args, std::ostream & out, std::ostream & err)
{
  auto l = load(args, "codebook");
  // Ambiguous swarms are the point of this command: report, don't reject.
  l.cfg.swarm.allow_ambiguous = true;
  validate(l.cfg.swarm);
  const auto cb = build_codebook(l.cfg.swarm);
  const auto collisions = verify_code_uniqueness(cb);

  std::vector<std::string> cols{"channel", "frequency_hz"};
  for (const auto id : cb.node_ids()) {
    cols.push_back("code_" + std::to_string(id));
  }
  TableWriter table(cols);
  for (std::uint64_t q = 0; q < cb.q_total(); ++q) {
    std::vector<std::string> row{std::to_string(q), channel_frequency(q, cb.resolution_hz())};
    for (std::size_t p = 0; p < cb.node_count(); ++p) {
      row.push_back(std::to_string(cb.code(p, q)));
    }
    table.add_row(std::move(row));
  }
  TableWriter pairs({"channel_a", "channel_b", "frequency_a_hz", "frequency_b_hz"});
  for (const auto & [a, b] : collisions.pairs) {
    pairs.add_row({std::to_string(a), std::to_string(b), channel_frequency(a, cb.resolution_hz()),
      channel_frequency(b, cb.resolution_hz())});
  }
  write_output(l.manifest, "codebook.csv", table.csv(l.manifest));
  write_output(l.manifest, "collisions.csv", pairs.csv(l.manifest));
  write_manifest_json(l.manifest, {"codebook.csv", "collisions.csv"});

  out << "codebook: Q = " << cb.q_total() << ", unambiguous span " << format_number(cb.unambiguous_span_hz())
      << " Hz, " << collisions.pairs.size() << " colliding pair(s)\n";
  if (!collisions.empty()) {
    err << "error: codes are not unique; " << collisions.pairs.size()
        << " channel pair(s) collide (see collisions.csv)\n";
    return kExitAmbiguous;
  }
  return kExitOk;
}

int cmd_simulate(const CommonArgs & args, std::ostream & out, std::ostream &)
{
  const auto l = load(args, "simulate");
  const auto res = run_pipeline(l.cfg.scenario, l.cfg.swarm, l.cfg.policies);

  std::vector<std::string> files;
  for (const auto & r : res.reports) {
    const std::string name = "node_" + std::to_string(r.node_id) + ".scft";
    const auto bytes = encode_report(r);
    write_output(l.manifest, name,
      std::string_view(reinterpret_cast<const char *>(bytes.data()), bytes.size()));
    files.push_back(name);
  }
  write_spectrum(l.manifest, res.estimate, files);
  write_manifest_json(l.manifest, files);

  out << "simulate: " << res.estimate.detections.size() << " detection(s)\n";
  for (const auto & d : res.estimate.detections) {
    out << "  channel " << d.channel << "  " << format_number(d.frequency_hz) << " Hz  power "
        << format_number(d.power) << '\n';
  }
  return kExitOk;
}

int cmd_decode(const CommonArgs & args, const std::vector<std::string> & report_paths, bool allow_missing,
  std::ostream & out, std::ostream & err)
{
  const auto l = load(args, "decode");
  validate(l.cfg.swarm);
  const auto cb = build_codebook(l.cfg.swarm);

  std::vector<SpectralReport> reports;
  for (const auto & p : report_paths) {
    reports.push_back(read_report_file(p));
  }
  FuseOptions opt;
  opt.allow_missing = allow_missing;
  const auto coded = fuse(reports, cb, opt);
  const auto used = cb.restrict_to(coded.node_ids());
  if (used.ambiguous()) {
    err << "warning: with " << used.node_count() << " node(s) the unambiguous span is "
        << format_number(used.unambiguous_span_hz()) << " Hz; detections alias\n";
  }
  auto est = decode_spectrum(coded, used);
  est.detections = detect(est, l.cfg.policies.detect);

  std::vector<std::string> files;
  write_spectrum(l.manifest, est, files);
  write_manifest_json(l.manifest, files);
  out << "decode: " << est.detections.size() << " detection(s) from " << reports.size() << " report(s)\n";
  return kExitOk;
}

int cmd_sweep(const CommonArgs & args, const std::string & axis_name, std::optional<std::uint64_t> k,
  bool off_grid, std::ostream & out, std::ostream &)
{
  const auto l = load(args, "sweep");
  const SweepAxis axis = axis_name == "resolution" ? SweepAxis::resolution : SweepAxis::snr;
  const auto & values = axis == SweepAxis::snr ? l.cfg.sweep.snr_db : l.cfg.sweep.resolution_hz;
  auto options = l.cfg.sweep.options;
  options.off_grid = options.off_grid || off_grid;
  auto policies = l.cfg.policies;
  if (axis == SweepAxis::resolution) {
    policies.measure_floor = true;
  }
  const std::uint64_t trials = k.value_or(l.cfg.sweep.k_trials);
  if (trials == 0) {
    throw ValidationError("sweep: K must be at least 1");
  }
  const auto rep = sweep(axis, values, l.cfg.scenario, l.cfg.swarm, policies, trials, l.cfg.scenario.seed, options);

  TableWriter table({"axis_value", "rmse_relative", "p_detect", "p_false_alarm", "k_trials", "decoded_floor",
    "matched", "misses", "false_alarms"});
  for (const auto & p : rep.points) {
    table.add_row({format_number(p.axis_value), format_optional(p.rmse_relative, "nan"), format_number(p.p_detect),
      format_number(p.p_false_alarm), std::to_string(p.k_trials), format_optional(p.decoded_floor, "nan"),
      std::to_string(p.matched), std::to_string(p.misses), std::to_string(p.false_alarms)});
  }
  auto m = l.manifest;
  write_output(m, "sweep.csv", table.csv(m));
  write_output(m, "sweep.dat", table.dat(m));
  write_manifest_json(m, {"sweep.csv", "sweep.dat"});
  out << "sweep: axis " << to_string(axis) << ", " << rep.points.size() << " point(s), K = " << trials
      << ", capture " << format_number(rep.capture_duration_s) << " s, " << format_number(rep.runtime_s) << " s\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Swarm sub-Nyquist spectrum acquisition simulator", "scft"};
  app.set_version_flag("--version", std::string("scft ") + SCFT_TOOL_VERSION);
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App * sub) {
    sub->add_option("--config", common.config, "JSON config with swarm, scenario and policies sections")
      ->required();
    sub->add_option("--out", common.out, "output directory")->capture_default_str();
    sub->add_option("--seed", common.seed, "override scenario.seed");
  };

  auto * codebook = app.add_subcommand("codebook", "dump the sensing codes and their collisions");
  add_common(codebook);

  auto * simulate = app.add_subcommand("simulate", "run the pipeline once and write node reports");
  add_common(simulate);

  auto * decode = app.add_subcommand("decode", "fuse node report files and decode the spectrum");
  add_common(decode);
  std::vector<std::string> report_paths;
  bool allow_missing = false;
  decode->add_option("reports", report_paths, "node report files (.scft)")->required();
  decode->add_flag("--allow-missing-node", allow_missing, "decode with the nodes that reported");

  auto * sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep over SNR or resolution");
  add_common(sweep_cmd);
  std::string axis = "snr";
  std::optional<std::uint64_t> k;
  bool off_grid = false;
  sweep_cmd->add_option("--axis", axis, "snr or resolution")
    ->check(CLI::IsMember({"snr", "resolution"}))
    ->capture_default_str();
  sweep_cmd->add_option("--k", k, "trials per point")->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  sweep_cmd->add_flag("--off-grid", off_grid, "draw continuous carriers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*codebook) {
      return cmd_codebook(common, out, err);
    }
    if (*simulate) {
      return cmd_simulate(common, out, err);
    }
    if (*decode) {
      return cmd_decode(common, report_paths, allow_missing, out, err);
    }
    return cmd_sweep(common, axis, k, off_grid, out, err);
  } catch (const ValidationError & e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace scft::cli
