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

#include "mqc/compiler.hpp"

#include <doctest.h>

#include <cmath>

#include "mqc/ancilla.hpp"
#include "support.hpp"

using namespace mqc;

namespace {

const double kT = M_PI / 4.0;

GateCircuit random_circuit(int n, int gates, Rng& rng) {
  GateCircuit c;
  c.n_qubits = n;
  for (int k = 0; k < gates; ++k) {
    const int q = rng.uniform_int(n);
    switch (rng.uniform_int(4)) {
      case 0: c.gates.push_back(Gate::h(q)); break;
      case 1: c.gates.push_back(Gate::p(q)); break;
      case 2: {
        if (n == 1) {
          c.gates.push_back(Gate::rz(q, kT));
          break;
        }
        int t = rng.uniform_int(n);
        while (t == q) t = rng.uniform_int(n);
        c.gates.push_back(Gate::cnot(q, t));
        break;
      }
      default: c.gates.push_back(Gate::rz(q, kT)); break;
    }
  }
  return c;
}

bool program_is_measurement_only(const MeasurementProgram& prog, const UniversalSet& set) {
  for (const auto& step : prog.steps) {
    if (step.targets.size() > 2) return false;
    switch (step.op_kind) {
      case MeasurementStep::OpKind::kObservable:
        if (!set_contains(set, step.observable)) return false;
        break;
      case MeasurementStep::OpKind::kBellBasis:
        if (!set_contains(set, Observable::pauli("XX"))) return false;
        if (!set_contains(set, Observable::pauli("ZZ"))) return false;
        break;
      case MeasurementStep::OpKind::kBuBasis: {
        // Check the observable pair for every frame variant the executor may
        // measure.
        const BuObservables bu = bu_observables(step.bu_gate);
        for (int f = 0; f < 4; ++f) {
          const PauliString frame = PauliString::single(1, 0, "IXYZ"[f]);
          PauliString two = PauliString::identity(2);
          two.set_letter(0, frame.letter(0));
          const Observable mx = bu.mx.conjugated_by(two);
          const Observable mz = bu.mz.conjugated_by(two);
          if (!set_contains(set, mx) || !set_contains(set, mz)) return false;
        }
        break;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("circuit parsing") {
  const GateCircuit c = GateCircuit::parse(
      "# example\n"
      "H 0\n"
      "CNOT 0 1\n"
      "RZ 1 0.7853981633974483  # pi/4\n"
      "\n"
      "RX 0 0.5\n");
  CHECK(c.n_qubits == 2);
  REQUIRE(c.gates.size() == 4);
  CHECK(c.gates[0].kind == Gate::Kind::kH);
  CHECK(c.gates[1].kind == Gate::Kind::kCnot);
  CHECK(c.gates[2].theta == doctest::Approx(M_PI / 4.0));

  CHECK_THROWS_AS(GateCircuit::parse("H\n"), ParseError);
  CHECK_THROWS_AS(GateCircuit::parse("H 0\nFOO 1\n"), ParseError);
  CHECK_THROWS_AS(GateCircuit::parse("CNOT 0 0\n"), ParseError);
  CHECK_THROWS_AS(GateCircuit::parse("RZ 0\n"), ParseError);
  try {
    GateCircuit::parse("H 0\nH\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("a single H compiles to two prep steps and one basis step") {
  const GateCircuit c = GateCircuit::parse("H 0\n");
  const UniversalSet set = make_universal_set(SetId::kS3);
  const MeasurementProgram prog = compile(c, set, CompileMode::kPauliFrame);

  REQUIRE(prog.steps.size() == 3);
  CHECK(prog.steps[0].purpose == StepPurpose::kAncillaPrep);
  CHECK(same_operator(prog.steps[0].observable, Observable::pauli("XX")));
  CHECK(prog.steps[1].purpose == StepPurpose::kAncillaPrep);
  CHECK(same_operator(prog.steps[1].observable, Observable::pauli("ZZ")));
  CHECK(prog.steps[2].op_kind == MeasurementStep::OpKind::kBuBasis);
  CHECK(prog.steps[2].purpose == StepPurpose::kTeleport);
  for (const auto& step : prog.steps) CHECK(step.targets.size() == 2);
  CHECK(prog.gadgets.size() == 1);
  CHECK(prog.n_physical == 3);
}

TEST_CASE("a CNOT compiles to the 5-measurement factory schedule plus two Bells") {
  const GateCircuit c = GateCircuit::parse("CNOT 0 1\n");
  const UniversalSet set = make_universal_set(SetId::kS3);
  const MeasurementProgram prog = compile(c, set, CompileMode::kPauliFrame);

  REQUIRE(prog.steps.size() == 7);
  int prep = 0, bells = 0;
  for (const auto& step : prog.steps) {
    if (step.purpose == StepPurpose::kAncillaPrep) ++prep;
    if (step.op_kind == MeasurementStep::OpKind::kBellBasis) ++bells;
  }
  CHECK(prep == 5);
  CHECK(bells == 2);
  CHECK(prog.n_physical == 6);
  CHECK(prog.output_qubits == std::vector<int>{4, 5});
}

TEST_CASE("an empty circuit compiles to an empty program") {
  const GateCircuit c = GateCircuit::parse("qubits 2\n");
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  CHECK(prog.steps.empty());
  CHECK(prog.gadgets.empty());

  Rng rng(401);
  const StateVector in = random_state(2, rng);
  OutcomeSource src(rng);
  CHECK(fidelity(simulate(prog, in, src).output, in) == doctest::Approx(1.0));
}

TEST_CASE("P is lowered to two pi/8 gadgets under s3") {
  const GateCircuit c = GateCircuit::parse("P 0\n");
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  CHECK(prog.gadgets.size() == 2);

  // Under s1 the XY operator is available and P compiles directly.
  const MeasurementProgram direct =
      compile(c, make_universal_set(SetId::kS1, 0.8), CompileMode::kPauliFrame);
  CHECK(direct.gadgets.size() == 1);
}

TEST_CASE("gates outside the set are compile errors naming the gate") {
  const GateCircuit c = GateCircuit::parse("RZ 0 0.1\n");
  try {
    compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
    FAIL("expected a compile error");
  } catch (const CompileError& e) {
    CHECK(std::string(e.what()).find("RZ") != std::string::npos);
  }
  // RX belongs to s1, not s2.
  const GateCircuit rx = GateCircuit::parse("RX 0 0.7\n");
  CHECK_NOTHROW(compile(rx, make_universal_set(SetId::kS1, 0.7), CompileMode::kPauliFrame));
  CHECK_THROWS_AS(compile(rx, make_universal_set(SetId::kS2, 0.7), CompileMode::kPauliFrame),
                  CompileError);
}

TEST_CASE("simulating compiled programs reproduces the gates") {
  Rng rng(402);

  const GateCircuit h = GateCircuit::parse("H 0\n");
  const MeasurementProgram hp =
      compile(h, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const SimResult r = simulate_seeded(hp, StateVector::basis(1, "0"), seed);
    const StateVector want = apply_gate(StateVector::basis(1, "0"), Gate::h(0));
    CHECK(equal_up_to_global_phase(r.output, want, 1e-10));
    CHECK(r.stats.rounds_total == 1);
  }

  const GateCircuit cn = GateCircuit::parse("CNOT 0 1\n");
  const MeasurementProgram cnp =
      compile(cn, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const SimResult r = simulate_seeded(cnp, StateVector::basis(2, "10"), seed);
    CHECK(equal_up_to_global_phase(r.output, StateVector::basis(2, "11"), 1e-10));
  }
}

TEST_CASE("compiled programs stay within the set and the arity bound") {
  Rng rng(403);
  const UniversalSet s3 = make_universal_set(SetId::kS3);
  for (int trial = 0; trial < 10; ++trial) {
    const GateCircuit c = random_circuit(2 + rng.uniform_int(2), 5, rng);
    const MeasurementProgram prog = compile(c, s3, CompileMode::kPauliFrame);
    CHECK(program_is_measurement_only(prog, s3));
  }
}

TEST_CASE("random circuits match the unitary oracle across seeds") {
  Rng rng(404);
  const UniversalSet s3 = make_universal_set(SetId::kS3);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + rng.uniform_int(3);
    const GateCircuit c = random_circuit(n, 1 + rng.uniform_int(6), rng);
    const MeasurementProgram prog = compile(c, s3, CompileMode::kPauliFrame);
    for (int rep = 0; rep < 4; ++rep) {
      const StateVector in = random_state(n, rng);
      OutcomeSource src(rng);
      const SimResult sim = simulate(prog, in, src);
      CHECK(fidelity(sim.output, circuit_apply(c, in)) > 1.0 - 1e-9);
    }
  }
}

TEST_CASE("s1 and s2 circuits with their rotations also verify") {
  Rng rng(405);
  const GateCircuit c1 = GateCircuit::parse("RX 0 0.7\nH 1\nCNOT 0 1\nP 0\n");
  const MeasurementProgram p1 =
      compile(c1, make_universal_set(SetId::kS1, 0.7), CompileMode::kPauliFrame);
  CHECK(verify_equivalence(c1, p1, 10, rng).pass);

  const GateCircuit c2 = GateCircuit::parse("RZ 0 1.2\nCNOT 1 0\nH 0\n");
  const MeasurementProgram p2 =
      compile(c2, make_universal_set(SetId::kS2, 1.2), CompileMode::kPauliFrame);
  CHECK(verify_equivalence(c2, p2, 10, rng).pass);

  // s0 with an arbitrary non-Clifford unitary handles its own gate.
  Rng urng(406);
  const Eigen::Matrix2cd u = random_unitary(2, urng);
  const UniversalSet s0 = make_universal_set(SetId::kS0, std::nullopt, u);
  GateCircuit c0;
  c0.n_qubits = 2;
  c0.gates = {Gate::h(0), Gate::unitary1(1, u), Gate::cnot(0, 1), Gate::p(1)};
  const MeasurementProgram p0 = compile(c0, s0, CompileMode::kPauliFrame);
  CHECK(verify_equivalence(c0, p0, 10, rng).pass);
}

TEST_CASE("literal mode spells out conditions and simulates identically") {
  const GateCircuit c = GateCircuit::parse("H 0\nRZ 0 0.7853981633974483\nCNOT 0 1\n");
  const UniversalSet s3 = make_universal_set(SetId::kS3);
  const MeasurementProgram frame = compile(c, s3, CompileMode::kPauliFrame);
  const MeasurementProgram literal = compile(c, s3, CompileMode::kLiteral);

  CHECK(frame.steps.size() == literal.steps.size());
  bool any_condition = false;
  for (const auto& step : literal.steps) {
    if (!step.depends_on.empty()) {
      any_condition = true;
      CHECK(step.purpose == StepPurpose::kCorrectionAbsorb);
    }
  }
  CHECK(any_condition);
  CHECK(literal.text().find("cond steps[") != std::string::npos);
  CHECK(frame.text().find("cond steps[") == std::string::npos);

  Rng rng(407);
  const StateVector in = random_state(2, rng);
  const SimResult a = simulate_seeded(frame, in, 9);
  const SimResult b = simulate_seeded(literal, in, 9);
  CHECK(fidelity(a.output, b.output) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.outcomes == b.outcomes);
}

TEST_CASE("compilation and simulation are deterministic") {
  const GateCircuit c = GateCircuit::parse("H 0\nCNOT 0 1\nRZ 1 0.7853981633974483\n");
  const UniversalSet s3 = make_universal_set(SetId::kS3);
  const MeasurementProgram p1 = compile(c, s3, CompileMode::kPauliFrame);
  const MeasurementProgram p2 = compile(c, s3, CompileMode::kPauliFrame);
  CHECK(p1.text() == p2.text());
  CHECK(p1.json() == p2.json());

  const StateVector in = StateVector::basis(2, "00");
  const SimResult a = simulate_seeded(p1, in, 31337);
  const SimResult b = simulate_seeded(p2, in, 31337);
  CHECK(a.outcomes == b.outcomes);
  CHECK(a.final_frame == b.final_frame);
  CHECK(fidelity(a.output, b.output) == doctest::Approx(1.0));
  CHECK(a.stats.steps == b.stats.steps);
}

TEST_CASE("qubit reuse keeps the register small") {
  Rng rng(408);
  GateCircuit c;
  c.n_qubits = 3;
  for (int k = 0; k < 12; ++k) {
    c.gates.push_back(Gate::h(k % 3));
    c.gates.push_back(Gate::cnot(k % 3, (k + 1) % 3));
  }
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  CHECK(prog.n_physical <= c.n_qubits + 6);
  CHECK(verify_equivalence(c, prog, 3, rng).pass);
}

TEST_CASE("a corrupted program fails verification") {
  Rng rng(409);
  const GateCircuit c = GateCircuit::parse("H 0\nCNOT 0 1\n");
  const UniversalSet s3 = make_universal_set(SetId::kS3);
  const MeasurementProgram good = compile(c, s3, CompileMode::kPauliFrame);
  CHECK(verify_equivalence(c, good, 10, rng).pass);

  const MeasurementProgram bad = corrupt_program(good);
  const VerifyReport report = verify_equivalence(c, bad, 10, rng);
  CHECK_FALSE(report.pass);
  CHECK(report.min_fidelity < 1.0 - 1e-9);
}

TEST_CASE("identity circuits trivially verify") {
  Rng rng(410);
  const GateCircuit c = GateCircuit::parse("qubits 2\n");
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  CHECK(verify_equivalence(c, prog, 5, rng).pass);
}

TEST_CASE("single-qubit preparation fragments") {
  Rng rng(411);
  const auto steps = prepare_zero_and_plus(PrepSchedule::kSingleQubit);
  REQUIRE(steps.size() == 2);

  OutcomeSource src(rng, {+1, +1});
  const FragmentResult r = run_fragment(StateVector::basis(2, "00"), steps, src);
  CHECK(fidelity(r.state, tensor(StateVector::basis(1, "0"),
                                 apply_gate(StateVector::basis(1, "0"), Gate::h(0)))) >
        1.0 - 1e-10);
}

TEST_CASE("parity-triple fragment projects onto the even-parity span") {
  const auto steps = prepare_zero_and_plus(PrepSchedule::kParityTriple);
  REQUIRE(steps.size() == 3);

  // On |000> every parity is even and the state is untouched.
  Rng rng(412);
  OutcomeSource src(rng);
  const FragmentResult zero = run_fragment(StateVector::basis(3, "000"), steps, src);
  CHECK(zero.outcomes == std::vector<int>{+1, +1, +1});
  CHECK(fidelity(zero.state, StateVector::basis(3, "000")) == doctest::Approx(1.0));

  // On a generic input the all-even branch is span{|000>,|111>}, not |000>.
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector in = random_state(3, rng);
    OutcomeSource forced(rng, {+1, +1, +1});
    try {
      const FragmentResult r = run_fragment(in, steps, forced);
      for (size_t idx = 1; idx < 7; ++idx) {
        CHECK(std::abs(r.state.amp(idx)) < 1e-9);
      }
    } catch (const ImpossibleOutcome&) {
      // the all-even branch can have zero weight for special inputs
    }
  }
}

TEST_CASE("readout reports the data bit against a |0> ancilla") {
  Rng rng(413);
  const PauliString no_frame = PauliString::identity(2);

  const StateVector zero = StateVector::basis(2, "00");
  OutcomeSource s1(rng);
  CHECK(readout(zero, 0, 1, no_frame, s1).bit == 0);

  const StateVector one = tensor(StateVector::basis(1, "1"), StateVector::basis(1, "0"));
  OutcomeSource s2(rng);
  CHECK(readout(one, 0, 1, no_frame, s2).bit == 1);

  // A pending X on the data qubit flips the reported bit.
  PauliString xframe = PauliString::identity(2);
  xframe.set_letter(0, 'X');
  OutcomeSource s3(rng);
  CHECK(readout(one, 0, 1, xframe, s3).bit == 0);

  // (|0>+|1>)/sqrt2 reads out as a fair coin.
  int ones = 0;
  const StateVector plus =
      tensor(apply_gate(StateVector::basis(1, "0"), Gate::h(0)), StateVector::basis(1, "0"));
  for (int t = 0; t < 10000; ++t) {
    OutcomeSource src(rng);
    ones += readout(plus, 0, 1, no_frame, src).bit;
  }
  CHECK(ones > 4800);
  CHECK(ones < 5200);
}

TEST_CASE("simulation stats count steps and ancillas") {
  const GateCircuit c = GateCircuit::parse("H 0\nCNOT 0 1\n");
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  const SimResult r = simulate_seeded(prog, StateVector::basis(2, "00"), 5);
  CHECK(r.stats.steps == static_cast<int>(prog.steps.size()));
  CHECK(r.stats.rounds_total == 2);
  CHECK(r.stats.ancillas_used == 6);
  CHECK(r.stats.two_qubit_steps > 0);
  CHECK(r.stats.seed == 5);
}

TEST_CASE("program text and json carry the interface fields") {
  const GateCircuit c = GateCircuit::parse("H 0\n");
  const MeasurementProgram prog =
      compile(c, make_universal_set(SetId::kS3), CompileMode::kPauliFrame);
  const std::string text = prog.text();
  CHECK(text.find("set s3") != std::string::npos);
  CHECK(text.find("mode frame") != std::string::npos);
  CHECK(text.find("ancilla-prep obs XX") != std::string::npos);
  CHECK(text.find("basis bu[H]~frame") != std::string::npos);
  const std::string json = prog.json();
  CHECK(json.find("\"steps\"") != std::string::npos);
}
