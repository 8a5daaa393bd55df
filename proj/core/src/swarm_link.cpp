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


#include "scft/swarm_link.hpp"

#include "scft/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace scft
{

const char * to_string(WireErrorKind kind) noexcept
{
  switch (kind) {
    case WireErrorKind::bad_magic: return "bad_magic";
    case WireErrorKind::unsupported_version: return "unsupported_version";
    case WireErrorKind::truncated: return "truncated";
    case WireErrorKind::non_increasing_bins: return "non_increasing_bins";
    case WireErrorKind::bin_out_of_range: return "bin_out_of_range";
    case WireErrorKind::trailing_data: return "trailing_data";
  }
  return "unknown";
}

namespace
{

constexpr std::uint8_t kMagic[4] = {'S', 'C', 'F', 'T'};

class Writer
{
public:
  explicit Writer(std::vector<std::uint8_t> & out) : out_(out) {}

  template <typename T>
  void put(T v)
  {
    static_assert(std::is_unsigned_v<T>);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  void put_f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }

private:
  std::vector<std::uint8_t> & out_;
};

class Reader
{
public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const { return in_.size() - pos_; }

  void need(std::size_t n, const char * what) const
  {
    if (remaining() < n) {
      throw WireError(WireErrorKind::truncated, std::string("truncated report: ") + what);
    }
  }

  template <typename T>
  T get()
  {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return v;
  }
  double get_f64() { return std::bit_cast<double>(get<std::uint64_t>()); }

private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_{0};
};

}  // namespace

void validate(const SpectralReport & report)
{
  for (std::size_t i = 0; i < report.occupied_bins.size(); ++i) {
    if (report.occupied_bins[i] >= report.m_points) {
      throw ValidationError("report: bin " + std::to_string(report.occupied_bins[i]) +
        " outside [0, " + std::to_string(report.m_points) + ")");
    }
    if (i > 0 && report.occupied_bins[i] <= report.occupied_bins[i - 1]) {
      throw ValidationError("report: occupied bins must be strictly increasing");
    }
  }
  const std::size_t expected =
    static_cast<std::size_t>(report.snapshot_count) * report.occupied_bins.size();
  if (report.amplitudes.size() != expected) {
    throw ValidationError("report: amplitude block has " + std::to_string(report.amplitudes.size()) +
      " values, expected " + std::to_string(expected));
  }
}

SpectralReport make_report(const SnapshotSpectra & spectra, std::uint64_t f_sp_hz,
  std::span<const std::uint32_t> occupied_bins)
{
  SpectralReport r;
  r.node_id = spectra.node_id;
  r.f_sp_hz = f_sp_hz;
  r.m_points = spectra.m_points;
  r.snapshot_count = spectra.snapshot_count;
  r.occupied_bins.assign(occupied_bins.begin(), occupied_bins.end());
  r.amplitudes.reserve(static_cast<std::size_t>(r.snapshot_count) * occupied_bins.size());
  for (std::uint32_t l = 0; l < spectra.snapshot_count; ++l) {
    for (const auto m : occupied_bins) {
      r.amplitudes.push_back(spectra.at(l, m));
    }
  }
  validate(r);
  return r;
}

std::vector<std::uint8_t> encode_report(const SpectralReport & report)
{
  validate(report);
  const std::size_t bins = report.occupied_bins.size();
  std::vector<std::uint8_t> out;
  out.reserve(kWireHeaderSize + 4 * bins + 16 * report.amplitudes.size());
  for (const auto b : kMagic) {
    out.push_back(b);
  }
  Writer w(out);
  w.put(kWireVersion);
  w.put(report.node_id);
  w.put(report.f_sp_hz);
  w.put(report.m_points);
  w.put(report.snapshot_count);
  w.put(static_cast<std::uint32_t>(bins));
  for (const auto b : report.occupied_bins) {
    w.put(b);
  }
  for (const auto & a : report.amplitudes) {
    w.put_f64(a.real());
    w.put_f64(a.imag());
  }
  return out;
}

SpectralReport decode_report(std::span<const std::uint8_t> bytes)
{
  Reader rd(bytes);
  rd.need(sizeof(kMagic), "magic");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw WireError(WireErrorKind::bad_magic, "not a report: bad magic");
  }
  (void)rd.get<std::uint32_t>();
  rd.need(kWireHeaderSize - sizeof(kMagic), "header");
  const auto version = rd.get<std::uint16_t>();
  if (version != kWireVersion) {
    throw WireError(WireErrorKind::unsupported_version,
      "unsupported report version " + std::to_string(version));
  }

  SpectralReport r;
  r.node_id = rd.get<std::uint16_t>();
  r.f_sp_hz = rd.get<std::uint64_t>();
  r.m_points = rd.get<std::uint32_t>();
  r.snapshot_count = rd.get<std::uint32_t>();
  const auto bin_count = rd.get<std::uint32_t>();

  rd.need(4ull * bin_count, "bin indices");
  r.occupied_bins.resize(bin_count);
  for (std::uint32_t i = 0; i < bin_count; ++i) {
    r.occupied_bins[i] = rd.get<std::uint32_t>();
    if (i > 0 && r.occupied_bins[i] <= r.occupied_bins[i - 1]) {
      throw WireError(WireErrorKind::non_increasing_bins, "bin indices not strictly increasing");
    }
    if (r.occupied_bins[i] >= r.m_points) {
      throw WireError(WireErrorKind::bin_out_of_range, "bin index outside [0, m_points)");
    }
  }

  const std::uint64_t pairs = static_cast<std::uint64_t>(r.snapshot_count) * bin_count;
  if (pairs > rd.remaining() / 16) {
    throw WireError(WireErrorKind::truncated, "truncated report: amplitude block");
  }
  r.amplitudes.resize(static_cast<std::size_t>(pairs));
  for (auto & a : r.amplitudes) {
    const double re = rd.get_f64();
    const double im = rd.get_f64();
    a = {re, im};
  }
  if (rd.remaining() != 0) {
    throw WireError(WireErrorKind::trailing_data,
      std::to_string(rd.remaining()) + " trailing bytes after report");
  }
  return r;
}

void write_report_file(const std::filesystem::path & path, const SpectralReport & report)
{
  const auto bytes = encode_report(report);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  f.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

SpectralReport read_report_file(const std::filesystem::path & path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open report " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_report(bytes);
}

CodedSpectrum::CodedSpectrum(std::uint64_t q_total, std::uint32_t snapshot_count,
  std::vector<NodeId> node_ids, std::vector<std::int32_t> slots,
  std::vector<std::vector<cplx>> amplitudes, std::vector<std::size_t> bin_counts)
: q_total_(q_total), snapshot_count_(snapshot_count), node_ids_(std::move(node_ids)),
  slots_(std::move(slots)), amplitudes_(std::move(amplitudes)), bin_counts_(std::move(bin_counts))
{
  const std::size_t p = node_ids_.size();
  if (slots_.size() != p * q_total_ || amplitudes_.size() != p || bin_counts_.size() != p) {
    throw ValidationError("coded spectrum: inconsistent shapes");
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (amplitudes_[i].size() != static_cast<std::size_t>(snapshot_count_) * bin_counts_[i]) {
      throw ValidationError("coded spectrum: amplitude block size mismatch");
    }
  }
}

bool CodedSpectrum::fully_occupied(std::uint64_t q) const
{
  for (std::size_t p = 0; p < node_ids_.size(); ++p) {
    if (slot(p, q) < 0) {
      return false;
    }
  }
  return !node_ids_.empty();
}

std::vector<std::uint8_t> CodedSpectrum::occupancy() const
{
  std::vector<std::uint8_t> mask(slots_.size());
  std::transform(slots_.begin(), slots_.end(), mask.begin(),
    [](std::int32_t s) { return static_cast<std::uint8_t>(s >= 0); });
  return mask;
}

CodedSpectrum fuse(std::span<const SpectralReport> reports, const Codebook & cb, const FuseOptions & options)
{
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      if (reports[i].node_id == reports[j].node_id) {
        throw FusionError("duplicate report from node " + std::to_string(reports[i].node_id));
      }
    }
    const auto ids = cb.node_ids();
    if (std::find(ids.begin(), ids.end(), reports[i].node_id) == ids.end()) {
      throw FusionError("report from node " + std::to_string(reports[i].node_id) +
        " which is not in the codebook");
    }
  }

  std::vector<const SpectralReport *> rows;
  std::vector<std::size_t> cb_rows;
  for (std::size_t p = 0; p < cb.node_count(); ++p) {
    const auto id = cb.node(p).node_id;
    const auto it = std::find_if(reports.begin(), reports.end(),
      [id](const SpectralReport & r) { return r.node_id == id; });
    if (it == reports.end()) {
      if (!options.allow_missing) {
        throw FusionError("missing report from node " + std::to_string(id));
      }
      continue;
    }
    rows.push_back(&*it);
    cb_rows.push_back(p);
  }
  if (rows.empty()) {
    throw FusionError("no reports to fuse");
  }

  const std::uint32_t l = rows.front()->snapshot_count;
  const std::uint64_t q_total = cb.q_total();
  std::vector<NodeId> ids;
  std::vector<std::int32_t> slots(rows.size() * q_total, -1);
  std::vector<std::vector<cplx>> amps;
  std::vector<std::size_t> counts;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto & r = *rows[i];
    const auto & node = cb.node(cb_rows[i]);
    try {
      validate(r);
    } catch (const ValidationError & e) {
      throw FusionError("node " + std::to_string(r.node_id) + ": " + e.what());
    }
    if (r.snapshot_count != l) {
      throw FusionError("node " + std::to_string(r.node_id) + " reports " +
        std::to_string(r.snapshot_count) + " snapshots, expected " + std::to_string(l));
    }
    if (r.m_points != node.m_points) {
      throw FusionError("node " + std::to_string(r.node_id) + " reports M = " +
        std::to_string(r.m_points) + ", codebook has " + std::to_string(node.m_points));
    }
    const double expected_rate = static_cast<double>(r.m_points) * cb.resolution_hz();
    if (std::abs(static_cast<double>(r.f_sp_hz) - expected_rate) > 0.5 + 1e-12 * expected_rate) {
      throw FusionError("node " + std::to_string(r.node_id) +
        ": f_sp does not equal m_points * resolution");
    }

    std::vector<std::int32_t> slot_of_bin(r.m_points, -1);
    for (std::size_t s = 0; s < r.occupied_bins.size(); ++s) {
      slot_of_bin[r.occupied_bins[s]] = static_cast<std::int32_t>(s);
    }
    auto * row = slots.data() + i * q_total;
    for (std::uint64_t q = 0; q < q_total; ++q) {
      row[q] = slot_of_bin[cb.bin(cb_rows[i], q)];
    }
    ids.push_back(r.node_id);
    amps.push_back(r.amplitudes);
    counts.push_back(r.occupied_bins.size());
  }
  return CodedSpectrum(q_total, l, std::move(ids), std::move(slots), std::move(amps), std::move(counts));
}

}  // namespace scft
