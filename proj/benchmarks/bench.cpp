// Copyright 2026 The mqc authors
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

#include "mqc/compiler.hpp"
#include "mqc/gadgets.hpp"
#include "mqc/pauli.hpp"
#include "mqc/stabilizer.hpp"
#include "mqc/statevector.hpp"

namespace {

void PauliMultiply(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  mqc::Rng rng(1);
  mqc::PauliString a = mqc::PauliString::identity(n);
  mqc::PauliString b = mqc::PauliString::identity(n);
  for (int q = 0; q < n; ++q) {
    a.set_letter(q, "IXYZ"[rng.uniform_int(4)]);
    b.set_letter(q, "IXYZ"[rng.uniform_int(4)]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqc::multiply(a, b));
  }
}
BENCHMARK(PauliMultiply)->Arg(4)->Arg(8)->Arg(14);

void DenseCnot(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  mqc::Rng rng(2);
  mqc::StateVector s = mqc::random_state(n, rng);
  const mqc::Gate g = mqc::Gate::cnot(0, n - 1);
  for (auto _ : state) {
    s = mqc::apply_gate(s, g);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(1 << n);
}
BENCHMARK(DenseCnot)->Arg(6)->Arg(10)->Arg(14)->Complexity();

void TableauMeasurement(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  mqc::Rng rng(3);
  for (auto _ : state) {
    state.PauseTiming();
    mqc::StabilizerTableau t = mqc::StabilizerTableau::zero_state(n);
    mqc::PauliString m = mqc::PauliString::identity(n);
    for (int q = 0; q < n; ++q) m.set_letter(q, "IXYZ"[1 + rng.uniform_int(3)]);
    mqc::OutcomeSource src(rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(mqc::measure_generatorwise(t, m, src));
  }
}
BENCHMARK(TableauMeasurement)->Arg(4)->Arg(8)->Arg(12);

void CompileAndSimulate(benchmark::State& state) {
  const mqc::GateCircuit circuit =
      mqc::GateCircuit::parse("H 0\nCNOT 0 1\nRZ 1 0.7853981633974483\nH 1\n");
  const mqc::UniversalSet set = mqc::make_universal_set(mqc::SetId::kS3);
  const mqc::MeasurementProgram prog =
      mqc::compile(circuit, set, mqc::CompileMode::kPauliFrame);
  const mqc::StateVector input = mqc::StateVector::zeros(circuit.n_qubits);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mqc::simulate_seeded(prog, input, ++seed));
  }
}
BENCHMARK(CompileAndSimulate);

}  // namespace

BENCHMARK_MAIN();
