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


#include "scft/eval_harness.hpp"

#include "scft/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace scft
{

namespace
{

constexpr std::uint64_t kCarrierStream = 0xCA77u;

SnapshotSpectra node_spectra(const NodeCapture & capture, const SwarmConfig & swarm)
{
  const auto & node = swarm.node(capture.node_id);
  return snapshot_spectra(subsample(capture, node.decimation), swarm.resolution_hz);
}

std::uint64_t node_rate_u64(const SwarmConfig & swarm, NodeId id)
{
  return static_cast<std::uint64_t>(std::llround(swarm.node_rate_hz(swarm.node(id))));
}

// Signed difference a - b wrapped into (-span/2, span/2].
double circular_diff(double a, double b, double span)
{
  double d = std::fmod(a - b, span);
  if (d > span / 2.0) {
    d -= span;
  } else if (d <= -span / 2.0) {
    d += span;
  }
  return d;
}

double median_of(std::vector<double> v)
{
  if (v.empty()) {
    return 0.0;
  }
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn && fn)
{
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace

SpectralReport process_node(const NodeCapture & capture, const SwarmConfig & swarm, const PeakPolicy & policy)
{
  const auto spectra = node_spectra(capture, swarm);
  const auto bins = peak_search(average_periodogram(spectra), policy);
  return make_report(spectra, node_rate_u64(swarm, capture.node_id), bins);
}

PipelineResult run_pipeline(const ScenarioConfig & scenario, const SwarmConfig & swarm, const Policies & policies)
{
  validate(swarm);
  validate(scenario, swarm);
  auto cb = build_codebook(swarm);
  std::vector<SpectralReport> reports(swarm.nodes.size());
  parallel_for(swarm.nodes.size(), 1, [&](std::size_t i) {
    const auto cap = compose_capture(scenario, swarm, swarm.nodes[i].node_id);
    reports[i] = process_node(cap, swarm, policies.peak);
  });
  auto coded = fuse(reports, cb);
  auto est = decode_spectrum(coded, cb);
  est.detections = detect(est, policies.detect);
  return PipelineResult{std::move(cb), std::move(reports), std::move(coded), std::move(est)};
}

std::vector<std::optional<std::size_t>> match_greedy(
  std::span<const double> truths, std::span<const double> estimates, double gate_hz, double span_hz)
{
  struct Candidate
  {
    double distance;
    std::size_t truth;
    std::size_t estimate;
  };
  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < truths.size(); ++t) {
    for (std::size_t e = 0; e < estimates.size(); ++e) {
      const double d = span_hz > 0.0
        ? std::abs(circular_diff(estimates[e], truths[t], span_hz))
        : std::abs(estimates[e] - truths[t]);
      if (d <= gate_hz) {
        candidates.push_back({d, t, e});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate & a, const Candidate & b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.truth != b.truth) return a.truth < b.truth;
    return a.estimate < b.estimate;
  });

  std::vector<std::optional<std::size_t>> match(truths.size());
  std::vector<bool> used(estimates.size(), false);
  for (const auto & c : candidates) {
    if (!match[c.truth] && !used[c.estimate]) {
      match[c.truth] = c.estimate;
      used[c.estimate] = true;
    }
  }
  return match;
}

double relative_rmse(std::span<const TrialResult> trials, double fs_hz)
{
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto & t : trials) {
    for (std::size_t i = 0; i < t.truths.size(); ++i) {
      if (t.estimates[i]) {
        const double e = *t.estimates[i] - t.truths[i];
        sum += e * e;
        ++count;
      }
    }
  }
  if (count == 0) {
    throw MetricError("relative RMSE undefined: no matched estimate");
  }
  return std::sqrt(sum / static_cast<double>(count)) / fs_hz;
}

TrialResult run_trial(const ScenarioConfig & scenario, const SwarmConfig & swarm,
  const Policies & policies, std::uint64_t seed, std::uint64_t trial_index)
{
  ScenarioConfig sc = scenario;
  sc.seed = seed;
  validate(swarm);
  validate(sc, swarm);

  const auto cb = build_codebook(swarm);
  const double span = cb.unambiguous_span_hz();
  const double df = swarm.resolution_hz;

  std::vector<SnapshotSpectra> spectra(swarm.nodes.size());
  std::vector<SpectralReport> reports(swarm.nodes.size());
  for (std::size_t i = 0; i < swarm.nodes.size(); ++i) {
    const auto cap = compose_capture(sc, swarm, swarm.nodes[i].node_id);
    spectra[i] = node_spectra(cap, swarm);
    const auto bins = peak_search(average_periodogram(spectra[i]), policies.peak);
    reports[i] = make_report(spectra[i], node_rate_u64(swarm, cap.node_id), bins);
  }
  auto est = decode_spectrum(fuse(reports, cb), cb);
  est.detections = detect(est, policies.detect);

  TrialResult tr;
  tr.trial = trial_index;
  tr.detection_count = est.detections.size();
  for (const auto & e : sc.emitters) {
    tr.truths.push_back(e.carrier_hz);
  }

  // Frequencies are only defined modulo the span; errors are taken on the
  // branch nearest each truth.
  std::vector<double> freqs;
  for (const auto & d : est.detections) {
    freqs.push_back(d.frequency_hz);
  }
  const double gate = policies.match_gate_bins * df;
  std::vector<double> truths_folded;
  for (const auto t : tr.truths) {
    truths_folded.push_back(t - std::floor(t / span) * span);
  }
  const auto match = match_greedy(truths_folded, freqs, gate, span);
  tr.estimates.assign(tr.truths.size(), std::nullopt);
  std::size_t matched = 0;
  for (std::size_t t = 0; t < match.size(); ++t) {
    if (match[t]) {
      tr.estimates[t] = tr.truths[t] + circular_diff(freqs[*match[t]], truths_folded[t], span);
      ++matched;
    }
  }
  tr.miss_count = tr.truths.size() - matched;
  tr.false_alarm_count = freqs.size() - matched;

  std::set<std::uint64_t> true_channels;
  for (const auto t : truths_folded) {
    true_channels.insert(static_cast<std::uint64_t>(std::llround(t / df)) % cb.q_total());
  }
  tr.empty_channels = cb.q_total() - true_channels.size();

  if (policies.measure_floor) {
    std::vector<SpectralReport> full(spectra.size());
    for (std::size_t i = 0; i < spectra.size(); ++i) {
      std::vector<std::uint32_t> all(spectra[i].m_points);
      for (std::uint32_t m = 0; m < spectra[i].m_points; ++m) {
        all[m] = m;
      }
      full[i] = make_report(spectra[i], reports[i].f_sp_hz, all);
    }
    const auto floor_est = decode_spectrum(fuse(full, cb), cb);
    const double peak = *std::max_element(floor_est.powers.begin(), floor_est.powers.end());
    std::vector<double> noise;
    for (std::uint64_t q = 0; q < cb.q_total(); ++q) {
      const double f = static_cast<double>(q) * df;
      const bool signal = std::any_of(truths_folded.begin(), truths_folded.end(),
        [&](double t) { return std::abs(circular_diff(f, t, span)) <= gate; });
      if (!signal) {
        noise.push_back(floor_est.powers[q]);
      }
    }
    if (peak > 0.0 && !noise.empty()) {
      tr.decoded_floor = median_of(std::move(noise)) / peak;
    }
  }
  return tr;
}

std::string_view to_string(SweepAxis axis) noexcept
{
  return axis == SweepAxis::snr ? "snr" : "resolution";
}

ScenarioConfig draw_carriers(const ScenarioConfig & base, const SwarmConfig & swarm,
  const SweepOptions & options, std::uint64_t seed)
{
  ScenarioConfig sc = base;
  if (options.fixed_carriers) {
    if (!options.off_grid) {
      for (auto & e : sc.emitters) {
        e.carrier_hz = snap_to_grid(e.carrier_hz, swarm.resolution_hz);
      }
    }
    return sc;
  }
  if (sc.emitters.empty()) {
    return sc;
  }
  const double span = unambiguous_span(swarm);
  const double df = swarm.resolution_hz;
  const double lo = options.band_low_fraction * span;
  const double hi = options.band_high_fraction * span;
  // keep emitters a few channels apart so the one-bin match gate is unambiguous
  const double min_sep = 3.0 * df;

  std::mt19937_64 rng(seed);
  const auto q_lo = static_cast<std::uint64_t>(std::ceil(lo / df));
  const auto q_hi = std::min(static_cast<std::uint64_t>(std::floor(hi / df)), swarm.channel_total() - 1);
  if (q_hi < q_lo) {
    throw ConfigError("carrier band is empty on the configured grid");
  }
  std::uniform_int_distribution<std::uint64_t> pick_channel(q_lo, q_hi);
  std::uniform_real_distribution<double> pick_freq(lo, hi);

  std::vector<double> chosen;
  for (auto & e : sc.emitters) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) {
        throw ConfigError("cannot place emitters: band too narrow for the emitter count");
      }
      const double f = options.off_grid
        ? pick_freq(rng)
        : static_cast<double>(pick_channel(rng)) * df;
      if (f <= 0.0) {
        continue;
      }
      const bool clash = std::any_of(chosen.begin(), chosen.end(),
        [&](double g) { return std::abs(g - f) < min_sep; });
      if (!clash) {
        chosen.push_back(f);
        e.carrier_hz = f;
        break;
      }
    }
  }
  return sc;
}

EvalReport sweep(SweepAxis axis, std::span<const double> values, const ScenarioConfig & base_scenario,
  const SwarmConfig & base_swarm, const Policies & policies, std::uint64_t k_trials,
  std::uint64_t base_seed, const SweepOptions & options)
{
  if (k_trials == 0) {
    throw ValidationError("sweep: K must be at least 1");
  }
  const auto start = std::chrono::steady_clock::now();
  EvalReport report;
  report.axis = axis;
  report.k_trials = k_trials;
  report.base_seed = base_seed;
  report.capture_duration_s = base_scenario.capture_duration_s;

  for (std::size_t point = 0; point < values.size(); ++point) {
    ScenarioConfig sc = base_scenario;
    SwarmConfig sw = base_swarm;
    if (axis == SweepAxis::snr) {
      // +inf on the SNR axis is the noiseless point
      sc.snr_db = std::isinf(values[point]) && values[point] > 0.0 ? std::nullopt : std::optional<double>{values[point]};
    } else {
      sw.resolution_hz = values[point];
    }
    validate(sw);

    std::vector<TrialResult> trials(k_trials);
    parallel_for(k_trials, options.threads, [&](std::size_t k) {
      const std::uint64_t seed = derive_seed(base_seed, point, k);
      const auto trial_sc = draw_carriers(sc, sw, options, derive_seed(seed, kCarrierStream));
      trials[k] = run_trial(trial_sc, sw, policies, seed, k);
    });

    EvalPoint ep;
    ep.axis_value = values[point];
    ep.k_trials = k_trials;
    std::size_t truths = 0;
    std::uint64_t opportunities = 0;
    std::vector<double> floors;
    for (const auto & t : trials) {
      truths += t.truths.size();
      ep.misses += t.miss_count;
      ep.false_alarms += t.false_alarm_count;
      ep.matched += t.truths.size() - t.miss_count;
      opportunities += t.empty_channels;
      if (t.decoded_floor) {
        floors.push_back(*t.decoded_floor);
      }
    }
    if (ep.matched > 0) {
      ep.rmse_relative = relative_rmse(trials, sw.nyquist_rate_hz);
    }
    ep.p_detect = truths > 0 ? static_cast<double>(ep.matched) / static_cast<double>(truths) : 0.0;
    ep.p_false_alarm = opportunities > 0
      ? static_cast<double>(ep.false_alarms) / static_cast<double>(opportunities)
      : 0.0;
    if (!floors.empty()) {
      ep.decoded_floor = median_of(std::move(floors));
    }
    report.points.push_back(ep);
  }
  report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::uint64_t> nyquist_oracle(const ScenarioConfig & scenario, const SwarmConfig & swarm,
  double resolution_hz, const PeakPolicy & policy)
{
  if (swarm.nodes.empty()) {
    throw ConfigError("nyquist_oracle: swarm has no nodes");
  }
  const auto cap = compose_capture(scenario, swarm, swarm.nodes.front().node_id);
  SubNyquistStream full{cap.node_id, cap.samples, cap.sample_rate_hz};
  const auto spectra = snapshot_spectra(full, resolution_hz);
  const auto bins = peak_search(average_periodogram(spectra), policy);
  return {bins.begin(), bins.end()};
}

}  // namespace scft
