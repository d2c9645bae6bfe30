// Copyright 2026 The QLBM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qlbm/builders.hpp"
#include "qlbm/resources.hpp"
#include "qlbm/solver.hpp"
#include "qlbm/statevector.hpp"

namespace {

using namespace qlbm;

void BM_HadamardGate(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s(n);
  for (auto _ : st) {
    apply_gate(s, gates::h(n / 2));
    benchmark::DoNotOptimize(s.amplitudes.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_HadamardGate)->DenseRange(10, 20, 5);

void BM_ToffoliGate(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  QuantumState s(n);
  const auto g = gates::mcx(0, {{1, true}, {n - 1, false}});
  for (auto _ : st) {
    apply_gate(s, g);
    benchmark::DoNotOptimize(s.amplitudes.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.dimension()));
}
BENCHMARK(BM_ToffoliGate)->DenseRange(10, 20, 5);

void BM_BuildAndLowerSingleCircuit(benchmark::State& st) {
  const auto extent = static_cast<std::size_t>(st.range(0));
  const auto scheme = LatticeScheme::d2q5();
  const auto vel = VelocityField::uniform({extent, extent}, {0.1, 0.1});
  for (auto _ : st) {
    const auto c = build_single_circuit(scheme, layout_for(scheme, extent, true, true), vel);
    benchmark::DoNotOptimize(count_resources(decompose_to_basis(c)).cnot_count);
  }
}
BENCHMARK(BM_BuildAndLowerSingleCircuit)->RangeMultiplier(4)->Range(4, 64)->Unit(benchmark::kMillisecond);

void BM_AdvDiffStep(benchmark::State& st) {
  RunConfig c;
  c.scheme = LatticeScheme::d2q5();
  const auto n = static_cast<std::size_t>(st.range(0));
  c.extents = {n, n};
  c.steps = 1;
  c.params = FlowParams::standard(c.scheme);
  c.params.advection_velocity = {0.2, 0.2};
  c.initial = ScalarField(c.extents, 0.1);
  c.initial.at(n / 2, n / 2) = 0.3;
  for (auto _ : st) benchmark::DoNotOptimize(run_advdiff(c).back().field.values.data());
}
BENCHMARK(BM_AdvDiffStep)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_CavityFrugalStep(benchmark::State& st) {
  RunConfig c;
  c.scheme = LatticeScheme::d2q5();
  c.extents = {8, 8};
  c.steps = 1;
  c.params = FlowParams::standard(c.scheme);
  c.cavity.extent = 8;
  c.cavity.steps = 1;
  for (auto _ : st) benchmark::DoNotOptimize(run_cavity_frugal(c).back().omega.values.data());
}
BENCHMARK(BM_CavityFrugalStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
