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


#include "output.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scft::cli
{

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v)
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::string format_number(double v)
{
  if (std::isnan(v)) {
    return "nan";
  }
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double> & v, std::string_view missing)
{
  return v ? format_number(*v) : std::string(missing);
}

std::string manifest_header(const RunManifest & m)
{
  std::ostringstream os;
  os << "# tool: scft " << m.tool_version << '\n'
     << "# subcommand: " << m.subcommand << '\n'
     << "# config: " << m.config_path.generic_string() << '\n'
     << "# config_fnv1a64: " << hex64(m.config_hash) << '\n'
     << "# seed: " << m.seed << '\n';
  return os.str();
}

void TableWriter::add_row(std::vector<std::string> row)
{
  if (row.size() != columns_.size()) {
    throw std::logic_error("table row width does not match the header");
  }
  rows_.push_back(std::move(row));
}

std::string TableWriter::csv(const RunManifest & m) const
{
  std::string out = manifest_header(m);
  auto line = [&](const std::vector<std::string> & cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += i ? "," : "";
      out += cells[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto & r : rows_) {
    line(r);
  }
  return out;
}

std::string TableWriter::dat(const RunManifest & m) const
{
  std::string out = manifest_header(m);
  out += "#";
  for (const auto & c : columns_) {
    out += ' ' + c;
  }
  out += '\n';
  for (const auto & r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += i ? " " : "";
      out += (r[i].empty() || r[i] == "nan") ? "NaN" : r[i];
    }
    out += '\n';
  }
  return out;
}

void write_output(const RunManifest & m, const std::string & file_name, std::string_view content)
{
  const std::filesystem::path name(file_name);
  if (name.has_parent_path() || name.is_absolute()) {
    throw std::logic_error("output names must be plain file names: " + file_name);
  }
  std::filesystem::create_directories(m.output_dir);
  const auto path = m.output_dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

void write_manifest_json(const RunManifest & m, const std::vector<std::string> & files)
{
  nlohmann::ordered_json j;
  j["tool"] = "scft";
  j["tool_version"] = m.tool_version;
  j["subcommand"] = m.subcommand;
  j["config_path"] = m.config_path.generic_string();
  j["config_fnv1a64"] = hex64(m.config_hash);
  j["seed"] = m.seed;
  j["output_dir"] = m.output_dir.generic_string();
  j["files"] = files;
  write_output(m, "manifest.json", j.dump(2) + "\n");
}

}  // namespace scft::cli
