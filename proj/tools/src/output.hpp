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


#ifndef SCFT_TOOLS_OUTPUT_HPP_
#define SCFT_TOOLS_OUTPUT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scft::cli
{

/// Provenance echoed into every text output.
struct RunManifest
{
  std::string tool_version;
  std::string subcommand;
  std::filesystem::path config_path;
  std::uint64_t config_hash{0};
  std::uint64_t seed{0};
  std::filesystem::path output_dir;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Shortest text that round-trips the double.
std::string format_number(double v);
std::string format_optional(const std::optional<double> & v, std::string_view missing);

/// Comment lines with the given prefix ("# " for CSV and gnuplot data).
std::string manifest_header(const RunManifest & m);

class TableWriter
{
public:
  explicit TableWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> row);

  std::string csv(const RunManifest & m) const;
  /// Whitespace-separated mirror for gnuplot; missing values become NaN.
  std::string dat(const RunManifest & m) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes under the output directory only; refuses paths that escape it.
void write_output(const RunManifest & m, const std::string & file_name, std::string_view content);

void write_manifest_json(const RunManifest & m, const std::vector<std::string> & files);

}  // namespace scft::cli

#endif  // SCFT_TOOLS_OUTPUT_HPP_
