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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqc/gadgets.hpp"
#include "mqc/observable.hpp"
#include "mqc/rng.hpp"
#include "mqc/sets.hpp"
#include "mqc/statevector.hpp"

namespace mqc {

/// Gate circuit over {CNOT, H, P, RZ(t), RX(t)}.
struct GateCircuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  /// One gate per line: `GATE q [q2] [theta]`, '#' comments, optional
  /// `qubits N` declaration. Throws ParseError with the offending line.
  static GateCircuit parse(std::string_view text);
  std::string str() const;
};

struct ParseError : std::runtime_error {
  ParseError(int line_in, const std::string& msg);
  int line;
};

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StepPurpose { kAncillaPrep, kTeleport, kCorrectionAbsorb, kReadout };
enum class CompileMode { kPauliFrame, kLiteral };

CompileMode compile_mode_from_string(std::string_view name);  // "frame"|"literal"
std::string compile_mode_name(CompileMode mode);
std::string step_purpose_name(StepPurpose p);

/// One measurement of a compiled program. Basis steps measure a complete
/// 2-qubit basis (the pair of set observables that generate it); observable
/// steps measure a single set operator. `frame_adapted` basis steps conjugate
/// the measured basis by the data qubit's pending Pauli, which is how
/// corrections are absorbed without ever applying a unitary.
struct MeasurementStep {
  StepPurpose purpose = StepPurpose::kAncillaPrep;
  enum class OpKind { kObservable, kBellBasis, kBuBasis };
  OpKind op_kind = OpKind::kObservable;
  Observable observable;          // kObservable
  Gate bu_gate = Gate::h(0);      // kBuBasis: measured basis {(U^dag ⊗ I)|Phi_j>}
  bool frame_adapted = false;
  std::vector<int> targets;
  /// Step indices whose outcomes feed this step's classical adaptation
  /// (rendered as the step condition in literal mode).
  std::vector<int> depends_on;
  /// Fault-injection hook: the recorded outcome is flipped while the physics
  /// stays honest, modelling a sign flip without the matching relabel.
  bool corrupt = false;

  std::string op_name() const;
};

/// Wiring of one compiled gadget (all classical post-processing metadata).
struct GadgetInstance {
  enum class Kind { k1q, kCnot };
  Kind kind = Kind::k1q;
  Gate gate = Gate::h(0);              // k1q only
  std::vector<int> zprep_steps;        // recycled-qubit Z preparations
  int xx_step = -1, zz_step = -1;      // 1q pair preparation
  int bu_step = -1;                    // 1q basis measurement
  std::vector<int> factory_steps;      // cnot: X, XX, ZZ, P±, parity
  int bell_step0 = -1, bell_step1 = -1;
  int data0 = -1, data1 = -1;
  std::vector<int> ancilla;            // allocated physical qubits
  int out0 = -1, out1 = -1;
};

struct MeasurementProgram {
  SetId set = SetId::kS3;
  double theta = 0.0;
  std::optional<Eigen::Matrix2cd> set_u0;
  CompileMode mode = CompileMode::kPauliFrame;
  int n_data = 0;
  int n_physical = 0;
  std::vector<int> input_qubits;   // data positions at program start
  std::vector<int> output_qubits;  // data positions at program end
  std::vector<MeasurementStep> steps;
  std::vector<GadgetInstance> gadgets;
  int ancillas_used = 0;

  std::string text() const;
  std::string json() const;
};

/// Lowers every gate to a single-round measurement gadget: 1-qubit gates via
/// the conjugated-Bell-basis construction, CNOT via the indirect 2-qubit
/// circuit fed by the ancilla-factory schedule. In literal mode correction
/// absorption is spelled out per step as a condition over prior outcomes; in
/// frame mode the simulator keeps a running Pauli frame. Throws CompileError
/// when a gate's observables are not in the set.
MeasurementProgram compile(const GateCircuit& circuit, const UniversalSet& set,
                           CompileMode mode);

struct SimStats {
  int steps = 0;
  int two_qubit_steps = 0;
  int ancillas_used = 0;
  int rounds_total = 0;
  uint64_t seed = 0;
};

struct SimResult {
  StateVector output;           // frame-resolved state of the output qubits
  std::vector<int> outcomes;    // recorded outcome per executed step
  PauliString final_frame;      // over the physical register
  SimStats stats;
};

SimResult simulate(const MeasurementProgram& program, const StateVector& input,
                   OutcomeSource& src);
SimResult simulate_seeded(const MeasurementProgram& program, const StateVector& input,
                          uint64_t seed);

/// The circuit unitary applied directly (the oracle the programs are checked
/// against).
StateVector circuit_apply(const GateCircuit& circuit, const StateVector& input);

struct VerifyReport {
  int trials = 0;
  double min_fidelity = 1.0;
  std::vector<int> failed_trials;
  bool pass = true;
};

/// Random-input equivalence check between a circuit and its compiled program.
VerifyReport verify_equivalence(const GateCircuit& circuit, const MeasurementProgram& program,
                                int trials, Rng& rng);

/// Flips one recorded observable sign without the matching relabel; the
/// resulting program must fail verification (negative control).
MeasurementProgram corrupt_program(const MeasurementProgram& program);

/// Qubit initialization fragments. The single-qubit schedule prepares |0> by
/// a Z measurement and |+> by an X measurement. The parity-triple schedule is
/// the ZZ(0,1), ZZ(0,2), ZZ(1,2) alternative; note it projects a general
/// input onto span{|000>,|111>}, not onto |000>.
enum class PrepSchedule { kSingleQubit, kParityTriple };
std::vector<MeasurementStep> prepare_zero_and_plus(PrepSchedule schedule);

/// Executes a fragment of observable steps on a state.
struct FragmentResult {
  StateVector state;
  std::vector<int> outcomes;
};
FragmentResult run_fragment(const StateVector& s, const std::vector<MeasurementStep>& steps,
                            OutcomeSource& src);

/// Readout of a data qubit against an ancilla known to hold |0>: ZZ outcome
/// +1 reports bit 0, -1 reports bit 1, flipped when the pending frame carries
/// an X component on the data qubit.
struct ReadoutResult {
  int bit = 0;
  StateVector state;
};
ReadoutResult readout(const StateVector& s, int data_qubit, int zero_ancilla,
                      const PauliString& frame, OutcomeSource& src);

}  // namespace mqc
