// Copyright 2026 The dttc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <string>

#include "dttc/convexity.hpp"
#include "dttc/distribution.hpp"
#include "dttc/instance.hpp"
#include "dttc/ttc.hpp"
#include "dttc/verify.hpp"

namespace {

dttc::InstanceDocument fixture(const std::string& name) {
  return dttc::load_instance(std::string(DTTC_FIXTURE_DIR) + "/" + name + ".json");
}

void BM_FeasibleSet(benchmark::State& state) {
  const auto doc = fixture("example_1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dttc::make_feasible_set(doc.economy));
  }
}
BENCHMARK(BM_FeasibleSet)->Unit(benchmark::kMicrosecond);

void BM_RunTtc(benchmark::State& state) {
  const auto doc = fixture("appendix_a");
  const dttc::Objective f = dttc::build_objective(doc);
  dttc::TtcOptions opts;
  opts.master_list = doc.master_list;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dttc::run_ttc(doc.economy, f, doc.preferences, opts));
  }
}
BENCHMARK(BM_RunTtc)->Unit(benchmark::kMicrosecond);

void BM_MNatConvexGoal(benchmark::State& state) {
  const auto doc = fixture("example_1");
  const dttc::Objective f = dttc::build_objective(doc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dttc::is_mnat_convex(*f.goal()));
  }
}
BENCHMARK(BM_MNatConvexGoal)->Unit(benchmark::kMicrosecond);

void BM_PseudoMNatConcave(benchmark::State& state) {
  const auto doc = fixture("appendix_a");
  const dttc::Objective f = dttc::build_objective(doc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dttc::is_pseudo_mnat_concave(f));
  }
}
BENCHMARK(BM_PseudoMNatConcave)->Unit(benchmark::kMillisecond);

void BM_ConstrainedEfficientFrontier(benchmark::State& state) {
  const auto doc = fixture("example_1");
  const dttc::Objective f = dttc::build_objective(doc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dttc::enumerate_constrained_efficient_ir(doc.economy, f, doc.preferences));
  }
}
BENCHMARK(BM_ConstrainedEfficientFrontier)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveStrategyProofness(benchmark::State& state) {
  const auto doc = fixture("appendix_a");
  const dttc::Objective f = dttc::build_objective(doc);
  const auto mech = dttc::ttc_mechanism(doc.economy, f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dttc::verify_strategy_proofness(
        doc.economy, mech, doc.preferences, dttc::ExhaustiveMode{}));
  }
}
BENCHMARK(BM_ExhaustiveStrategyProofness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
