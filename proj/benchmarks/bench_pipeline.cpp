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


#include "scft/codebook.hpp"
#include "scft/decoder.hpp"
#include "scft/eval_harness.hpp"
#include "scft/sampler.hpp"
#include "scft/scenario.hpp"
#include "scft/swarm_link.hpp"

#include "support/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace scft;

namespace
{

ScenarioConfig reference_scene(double df)
{
  return fixtures::scene(fixtures::reference_tones(df), 20e-6, 0.0);
}

void BM_ComposeCapture(benchmark::State & state)
{
  const auto swarm = fixtures::reference_swarm(10e6);
  const auto sc = reference_scene(10e6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_capture(sc, swarm, 1));
  }
  state.SetItemsProcessed(state.iterations() * 240000);
}
BENCHMARK(BM_ComposeCapture)->Unit(benchmark::kMillisecond);

void BM_SnapshotSpectra(benchmark::State & state)
{
  const double df = static_cast<double>(state.range(0)) * 1e6;
  const auto swarm = fixtures::reference_swarm(df);
  const auto cap = compose_capture(reference_scene(df), swarm, 1);
  const auto stream = subsample(cap, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(snapshot_spectra(stream, df));
  }
}
BENCHMARK(BM_SnapshotSpectra)->Arg(100)->Arg(10)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_FuseDecode(benchmark::State & state)
{
  const double df = static_cast<double>(state.range(0)) * 1e6;
  const auto swarm = fixtures::reference_swarm(df);
  const auto res = run_pipeline(reference_scene(df), swarm, {});
  for (auto _ : state) {
    const auto coded = fuse(res.reports, res.codebook);
    benchmark::DoNotOptimize(decode_spectrum(coded, res.codebook));
  }
}
BENCHMARK(BM_FuseDecode)->Arg(100)->Arg(10)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_CodeUniqueness(benchmark::State & state)
{
  const auto swarm = fixtures::reference_swarm(static_cast<double>(state.range(0)) * 1e6);
  const auto cb = build_codebook(swarm);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_code_uniqueness(cb));
  }
}
BENCHMARK(BM_CodeUniqueness)->Arg(10)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_WireRoundTrip(benchmark::State & state)
{
  const auto swarm = fixtures::reference_swarm(10e6);
  const auto res = run_pipeline(reference_scene(10e6), swarm, {});
  const auto & r = res.reports.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_report(encode_report(r)));
  }
}
BENCHMARK(BM_WireRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_Trial(benchmark::State & state)
{
  const auto swarm = fixtures::reference_swarm(10e6);
  const auto sc = reference_scene(10e6);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(sc, swarm, {}, ++seed));
  }
}
BENCHMARK(BM_Trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
