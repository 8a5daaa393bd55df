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


#include "scft/sampler.hpp"

#include "scft/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace scft
{

namespace
{

// FFTW's planner is not reentrant; execution on distinct arrays is.
std::mutex & planner_mutex()
{
  static std::mutex m;
  return m;
}

}  // namespace

SubNyquistStream subsample(const NodeCapture & capture, std::uint32_t r)
{
  SubNyquistStream in{capture.node_id, capture.samples, capture.sample_rate_hz};
  return subsample(in, r);
}

SubNyquistStream subsample(const SubNyquistStream & stream, std::uint32_t r)
{
  if (r == 0) {
    throw ValidationError("subsample: decimation must be a positive integer");
  }
  SubNyquistStream out;
  out.node_id = stream.node_id;
  out.rate_hz = stream.rate_hz / static_cast<double>(r);
  const std::size_t n = stream.samples.size() / r;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = stream.samples[i * r];
  }
  return out;
}

std::vector<cplx> windowed_dft(std::span<const cplx> samples, std::uint32_t m)
{
  if (m == 0) {
    throw ValidationError("windowed_dft: window length must be positive");
  }
  const std::size_t l = samples.size() / m;
  std::vector<cplx> out(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(l * m));
  if (l == 0) {
    return out;
  }
  auto * buf = reinterpret_cast<fftw_complex *>(out.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int n = static_cast<int>(m);
    plan = fftw_plan_many_dft(1, &n, static_cast<int>(l), buf, nullptr, 1, n, buf, nullptr, 1, n,
      FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (plan == nullptr) {
    throw std::runtime_error("windowed_dft: FFTW planning failed");
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

SnapshotSpectra snapshot_spectra(const SubNyquistStream & stream, double resolution_hz)
{
  if (!(resolution_hz > 0.0)) {
    throw ValidationError("snapshot_spectra: resolution must be positive");
  }
  const double ratio = stream.rate_hz / resolution_hz;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > 1e-9 * m) {
    throw ValidationError("snapshot_spectra: stream rate is not a multiple of the resolution");
  }
  const auto m_points = static_cast<std::uint32_t>(m);
  if (stream.samples.size() < m_points) {
    throw ValidationError("snapshot_spectra: stream shorter than one " +
      std::to_string(m_points) + "-sample window");
  }
  SnapshotSpectra out;
  out.node_id = stream.node_id;
  out.m_points = m_points;
  out.snapshot_count = static_cast<std::uint32_t>(stream.samples.size() / m_points);
  out.resolution_hz = resolution_hz;
  out.spectra = windowed_dft(stream.samples, m_points);
  return out;
}

std::vector<double> average_periodogram(const SnapshotSpectra & spectra)
{
  if (spectra.snapshot_count == 0 || spectra.m_points == 0) {
    throw ValidationError("average_periodogram: no snapshots");
  }
  std::vector<double> p(spectra.m_points, 0.0);
  for (std::uint32_t l = 0; l < spectra.snapshot_count; ++l) {
    const auto row = spectra.snapshot(l);
    for (std::uint32_t m = 0; m < spectra.m_points; ++m) {
      p[m] += std::norm(row[m]);
    }
  }
  const double inv = 1.0 / static_cast<double>(spectra.snapshot_count);
  for (auto & v : p) {
    v *= inv;
  }
  return p;
}

std::vector<std::uint32_t> peak_search(std::span<const double> periodogram, const PeakPolicy & policy)
{
  if (periodogram.empty()) {
    throw ValidationError("peak_search: empty periodogram");
  }
  if (!(policy.threshold_factor_db > 0.0)) {
    throw ValidationError("peak_search: threshold_factor_db must be positive");
  }
  const double peak = *std::max_element(periodogram.begin(), periodogram.end());
  if (!(peak > 0.0)) {
    return {};
  }

  std::vector<double> sorted(periodogram.begin(), periodogram.end());
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  double median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  const double floor = std::max(median, peak * std::pow(10.0, -policy.dynamic_range_db / 10.0));
  const double threshold = floor * std::pow(10.0, policy.threshold_factor_db / 10.0);

  std::vector<std::uint32_t> bins;
  for (std::size_t m = 0; m < periodogram.size(); ++m) {
    if (periodogram[m] >= threshold && periodogram[m] > 0.0) {
      bins.push_back(static_cast<std::uint32_t>(m));
    }
  }
  if (policy.max_peaks && bins.size() > *policy.max_peaks) {
    std::stable_sort(bins.begin(), bins.end(), [&](std::uint32_t a, std::uint32_t b) {
      return periodogram[a] > periodogram[b];
    });
    bins.resize(*policy.max_peaks);
    std::sort(bins.begin(), bins.end());
  }
  return bins;
}

FoldResult fold_frequency(double f_hz, double f_sp_hz)
{
  if (!(f_sp_hz > 0.0)) {
    throw ValidationError("fold_frequency: sampling rate must be positive");
  }
  auto k = static_cast<std::int64_t>(std::ceil(f_hz / f_sp_hz - 0.5));
  double fl = f_hz - static_cast<double>(k) * f_sp_hz;
  // nudge across the half-open boundary if rounding landed on the wrong side
  if (fl > f_sp_hz / 2.0) {
    ++k;
    fl = f_hz - static_cast<double>(k) * f_sp_hz;
  } else if (fl <= -f_sp_hz / 2.0) {
    --k;
    fl = f_hz - static_cast<double>(k) * f_sp_hz;
  }
  return {fl, k};
}

}  // namespace scft
