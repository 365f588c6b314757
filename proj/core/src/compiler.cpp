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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "mqc/ancilla.hpp"

namespace mqc {

ParseError::ParseError(int line_in, const std::string& msg)
    : std::runtime_error(fmt::format("line {}: {}", line_in, msg)), line(line_in) {}

GateCircuit GateCircuit::parse(std::string_view text) {
  GateCircuit circuit;
  int declared_qubits = -1;
  int max_index = -1;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string name;
    if (!(line >> name)) continue;
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });

    auto read_qubit = [&](const char* what) {
      int q;
      if (!(line >> q) || q < 0) {
        throw ParseError(line_no, fmt::format("expected {} qubit index", what));
      }
      max_index = std::max(max_index, q);
      return q;
    };
    auto read_theta = [&]() {
      double t;
      if (!(line >> t)) throw ParseError(line_no, "expected rotation angle");
      return t;
    };
    auto expect_end = [&]() {
      std::string extra;
      if (line >> extra) throw ParseError(line_no, fmt::format("unexpected token \"{}\"", extra));
    };

    if (name == "QUBITS") {
      int n;
      if (!(line >> n) || n < 1) throw ParseError(line_no, "expected a positive qubit count");
      declared_qubits = n;
      expect_end();
    } else if (name == "H") {
      circuit.gates.push_back(Gate::h(read_qubit("target")));
      expect_end();
    } else if (name == "P") {
      circuit.gates.push_back(Gate::p(read_qubit("target")));
      expect_end();
    } else if (name == "CNOT") {
      const int c = read_qubit("control");
      const int t = read_qubit("target");
      if (c == t) throw ParseError(line_no, "CNOT control and target must differ");
      circuit.gates.push_back(Gate::cnot(c, t));
      expect_end();
    } else if (name == "RZ") {
      const int q = read_qubit("target");
      circuit.gates.push_back(Gate::rz(q, read_theta()));
      expect_end();
    } else if (name == "RX") {
      const int q = read_qubit("target");
      circuit.gates.push_back(Gate::rx(q, read_theta()));
      expect_end();
    } else {
      throw ParseError(line_no, fmt::format("unknown gate \"{}\"", name));
    }
  }

  circuit.n_qubits = std::max(declared_qubits, max_index + 1);
  if (circuit.n_qubits < 1) circuit.n_qubits = 1;
  if (declared_qubits > 0 && max_index >= declared_qubits) {
    throw ParseError(line_no, "gate target exceeds the declared qubit count");
  }
  return circuit;
}

std::string GateCircuit::str() const {
  std::string out = fmt::format("qubits {}\n", n_qubits);
  for (const auto& g : gates) {
    switch (g.kind) {
      case Gate::Kind::kH: out += fmt::format("H {}\n", g.targets[0]); break;
      case Gate::Kind::kP: out += fmt::format("P {}\n", g.targets[0]); break;
      case Gate::Kind::kCnot:
        out += fmt::format("CNOT {} {}\n", g.targets[0], g.targets[1]);
        break;
      case Gate::Kind::kRz: out += fmt::format("RZ {} {:.17g}\n", g.targets[0], g.theta); break;
      case Gate::Kind::kRx: out += fmt::format("RX {} {:.17g}\n", g.targets[0], g.theta); break;
      default: out += fmt::format("# unsupported {}\n", g.name()); break;
    }
  }
  return out;
}

CompileMode compile_mode_from_string(std::string_view name) {
  if (name == "frame" || name == "pauli-frame") return CompileMode::kPauliFrame;
  if (name == "literal") return CompileMode::kLiteral;
  throw std::invalid_argument(fmt::format("unknown mode \"{}\"", std::string(name)));
}

std::string compile_mode_name(CompileMode mode) {
  return mode == CompileMode::kPauliFrame ? "frame" : "literal";
}

std::string step_purpose_name(StepPurpose p) {
  switch (p) {
    case StepPurpose::kAncillaPrep: return "ancilla-prep";
    case StepPurpose::kTeleport: return "teleport";
    case StepPurpose::kCorrectionAbsorb: return "correction-absorb";
    case StepPurpose::kReadout: return "readout";
  }
  return "?";
}

std::string MeasurementStep::op_name() const {
  switch (op_kind) {
    case OpKind::kObservable: return fmt::format("obs {}", observable.str());
    case OpKind::kBellBasis: return "basis bell";
    case OpKind::kBuBasis:
      return fmt::format("basis bu[{}]{}", bu_gate.name(), frame_adapted ? "~frame" : "");
  }
  return "?";
}

namespace {

// Free-list allocator over the physical register. Allocating a recycled
// qubit re-prepares it with a Z measurement (the only state prep the model
// has); virgin qubits start in |0> by the program's input convention.
class Allocator {
 public:
  explicit Allocator(int n_data) : next_(n_data) {}

  int alloc(std::vector<MeasurementStep>& steps, GadgetInstance& gadget) {
    int q;
    if (!free_.empty()) {
      q = free_.back();
      free_.pop_back();
      MeasurementStep prep;
      prep.purpose = StepPurpose::kAncillaPrep;
      prep.op_kind = MeasurementStep::OpKind::kObservable;
      prep.observable = Observable::pauli("Z");
      prep.targets = {q};
      gadget.zprep_steps.push_back(static_cast<int>(steps.size()));
      steps.push_back(std::move(prep));
    } else {
      q = next_++;
    }
    ++allocations_;
    return q;
  }

  void release(int q) { free_.push_back(q); }

  int high_water() const { return next_; }
  int allocations() const { return allocations_; }

 private:
  int next_;
  std::vector<int> free_;
  int allocations_ = 0;
};

Observable pauli_obs(const char* letters) { return Observable::pauli(letters); }

bool gate_expressible(const Gate& g, const UniversalSet& set) {
  if (g.arity() == 2) {
    return set_contains(set, pauli_obs("XX")) && set_contains(set, pauli_obs("ZZ"));
  }
  const BuObservables bu = bu_observables(g);
  return set_contains(set, bu.mx) && set_contains(set, bu.mz);
}

// Lowers a circuit gate to the 1-qubit gadget gates the set supports.
std::vector<Gate> lower_gate(const Gate& g, const UniversalSet& set) {
  if (g.arity() == 2 || gate_expressible(g, set)) return {g};
  // P = RZ(pi/4)^2 exactly; covers sets without the XY operator.
  if (g.kind == Gate::Kind::kP) {
    const Gate t = Gate::rz(g.targets[0], M_PI / 4.0);
    if (gate_expressible(t, set)) return {t, t};
  }
  throw CompileError(fmt::format(
      "gate {} is not expressible with the {} measurement operators", g.name(),
      set_id_name(set.id)));
}

}  // namespace

MeasurementProgram compile(const GateCircuit& circuit, const UniversalSet& set,
                           CompileMode mode) {
  MeasurementProgram prog;
  prog.set = set.id;
  prog.theta = set.theta;
  prog.set_u0 = set.u0;
  prog.mode = mode;
  prog.n_data = circuit.n_qubits;

  Allocator alloc(circuit.n_qubits);
  std::vector<int> location(circuit.n_qubits);
  for (int q = 0; q < circuit.n_qubits; ++q) location[q] = q;
  prog.input_qubits = location;

  // Step indices whose outcomes determine the pending Pauli of each physical
  // qubit; static metadata rendered as literal-mode conditions.
  std::vector<std::vector<int>> provenance(64);

  auto add_observable_step = [&](StepPurpose purpose, const Observable& obs,
                                 std::vector<int> targets) {
    MeasurementStep step;
    step.purpose = purpose;
    step.op_kind = MeasurementStep::OpKind::kObservable;
    step.observable = obs;
    step.targets = std::move(targets);
    prog.steps.push_back(std::move(step));
    return static_cast<int>(prog.steps.size() - 1);
  };

  for (const auto& circuit_gate : circuit.gates) {
    for (const auto& gate : lower_gate(circuit_gate, set)) {
      GadgetInstance gadget;
      if (gate.arity() == 1) {
        gadget.kind = GadgetInstance::Kind::k1q;
        gadget.gate = gate;
        const int logical = gate.targets[0];
        if (logical < 0 || logical >= circuit.n_qubits) {
          throw CompileError(fmt::format("gate {} target out of range", gate.name()));
        }
        gadget.data0 = location[logical];
        const int a0 = alloc.alloc(prog.steps, gadget);
        const int a1 = alloc.alloc(prog.steps, gadget);
        gadget.ancilla = {a0, a1};

        gadget.xx_step =
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("XX"), {a0, a1});
        gadget.zz_step =
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("ZZ"), {a0, a1});

        MeasurementStep bu;
        bu.op_kind = MeasurementStep::OpKind::kBuBasis;
        bu.bu_gate = gate;
        bu.frame_adapted = true;
        bu.targets = {gadget.data0, a0};
        bu.depends_on = provenance[gadget.data0];
        bu.purpose = (mode == CompileMode::kLiteral && !bu.depends_on.empty())
                         ? StepPurpose::kCorrectionAbsorb
                         : StepPurpose::kTeleport;
        prog.steps.push_back(std::move(bu));
        gadget.bu_step = static_cast<int>(prog.steps.size() - 1);

        gadget.out0 = a1;
        provenance[a1] = {gadget.xx_step, gadget.zz_step, gadget.bu_step};
        provenance[gadget.data0].clear();
        alloc.release(gadget.data0);
        alloc.release(a0);
        location[logical] = a1;
      } else {
        gadget.kind = GadgetInstance::Kind::kCnot;
        gadget.gate = gate;
        const int lc = gate.targets[0], lt = gate.targets[1];
        if (lc < 0 || lc >= circuit.n_qubits || lt < 0 || lt >= circuit.n_qubits) {
          throw CompileError("CNOT target out of range");
        }
        gadget.data0 = location[lc];
        gadget.data1 = location[lt];
        const int f0 = alloc.alloc(prog.steps, gadget);
        const int f1 = alloc.alloc(prog.steps, gadget);
        const int f2 = alloc.alloc(prog.steps, gadget);
        const int f3 = alloc.alloc(prog.steps, gadget);
        gadget.ancilla = {f0, f1, f2, f3};

        // The ancilla-factory schedule: X, Bell pair (XX, ZZ), P±, parity.
        gadget.factory_steps = {
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("X"), {f0}),
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("XX"), {f2, f3}),
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("ZZ"), {f2, f3}),
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("XX"), {f1, f2}),
            add_observable_step(StepPurpose::kAncillaPrep, pauli_obs("ZZ"), {f0, f2}),
        };

        auto add_bell = [&](int data_q) {
          MeasurementStep bell;
          bell.op_kind = MeasurementStep::OpKind::kBellBasis;
          bell.targets = {data_q, -1};  // second target patched below
          bell.depends_on = provenance[data_q];
          bell.purpose = (mode == CompileMode::kLiteral && !bell.depends_on.empty())
                             ? StepPurpose::kCorrectionAbsorb
                             : StepPurpose::kTeleport;
          prog.steps.push_back(std::move(bell));
          return static_cast<int>(prog.steps.size() - 1);
        };
        gadget.bell_step0 = add_bell(gadget.data0);
        prog.steps[gadget.bell_step0].targets[1] = f0;
        gadget.bell_step1 = add_bell(gadget.data1);
        prog.steps[gadget.bell_step1].targets[1] = f1;

        gadget.out0 = f2;
        gadget.out1 = f3;
        std::vector<int> prov = gadget.factory_steps;
        prov.push_back(gadget.bell_step0);
        prov.push_back(gadget.bell_step1);
        for (int s : provenance[gadget.data0]) prov.push_back(s);
        for (int s : provenance[gadget.data1]) prov.push_back(s);
        std::sort(prov.begin(), prov.end());
        prov.erase(std::unique(prov.begin(), prov.end()), prov.end());
        provenance[f2] = prov;
        provenance[f3] = prov;
        provenance[gadget.data0].clear();
        provenance[gadget.data1].clear();
        alloc.release(gadget.data0);
        alloc.release(gadget.data1);
        alloc.release(f0);
        alloc.release(f1);
        location[lc] = f2;
        location[lt] = f3;
      }
      prog.gadgets.push_back(std::move(gadget));
    }
  }

  prog.output_qubits = location;
  prog.n_physical = std::max(alloc.high_water(), circuit.n_qubits);
  prog.ancillas_used = alloc.allocations();
  if (prog.n_physical > StateVector::kMaxQubits) {
    throw CompileError(fmt::format("program needs {} physical qubits (max {})",
                                   prog.n_physical, StateVector::kMaxQubits));
  }
  return prog;
}

std::string MeasurementProgram::text() const {
  std::string out;
  out += fmt::format("set {}\n", set_id_name(set));
  if (set == SetId::kS1 || set == SetId::kS2) out += fmt::format("theta {:.17g}\n", theta);
  out += fmt::format("mode {}\n", compile_mode_name(mode));
  out += fmt::format("data {}\n", n_data);
  out += fmt::format("physical {}\n", n_physical);
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{}", i ? "," : "", v[i]);
    return s;
  };
  out += fmt::format("inputs {}\n", join(input_qubits));
  out += fmt::format("outputs {}\n", join(output_qubits));
  for (size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    out += fmt::format("step {} {} {} @ {}", i, step_purpose_name(step.purpose),
                       step.op_name(), join(step.targets));
    if (!step.depends_on.empty() && mode == CompileMode::kLiteral) {
      out += fmt::format(" cond steps[{}]", join(step.depends_on));
    }
    out.push_back('\n');
  }
  return out;
}

std::string MeasurementProgram::json() const {
  nlohmann::json j;
  j["set"] = set_id_name(set);
  j["theta"] = theta;
  j["mode"] = compile_mode_name(mode);
  j["data"] = n_data;
  j["physical"] = n_physical;
  j["inputs"] = input_qubits;
  j["outputs"] = output_qubits;
  j["gadgets"] = gadgets.size();
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& step : steps) {
    nlohmann::json s;
    s["purpose"] = step_purpose_name(step.purpose);
    s["op"] = step.op_name();
    s["targets"] = step.targets;
    if (!step.depends_on.empty() && mode == CompileMode::kLiteral) {
      s["cond"] = step.depends_on;
    }
    steps_json.push_back(std::move(s));
  }
  j["steps"] = std::move(steps_json);
  return j.dump(2);
}

namespace {

int frame_letter_index(const PauliString& frame, int q) {
  const int x = (frame.x_mask >> q) & 1u;
  const int z = (frame.z_mask >> q) & 1u;
  return pauli_index_from_bits(x, z);
}

}  // namespace

SimResult simulate(const MeasurementProgram& program, const StateVector& input,
                   OutcomeSource& src) {
  if (input.n_qubits() != program.n_data) {
    throw std::invalid_argument(fmt::format("input has {} qubits, program declares {}",
                                            input.n_qubits(), program.n_data));
  }
  StateVector state = program.n_physical > program.n_data
                          ? tensor(input, StateVector::zeros(program.n_physical - program.n_data))
                          : input;
  PauliString frame = PauliString::identity(program.n_physical);
  std::vector<int> outcomes(program.steps.size(), 0);

  SimStats stats;
  stats.ancillas_used = program.ancillas_used;
  stats.steps = static_cast<int>(program.steps.size());
  for (const auto& step : program.steps) {
    if (step.targets.size() == 2) ++stats.two_qubit_steps;
  }

  auto run_observable_step = [&](int idx) {
    const auto& step = program.steps[idx];
    const MeasureResult r =
        measure_observable(state, step.observable, step.targets, src, "program step");
    state = r.state;
    outcomes[idx] = step.corrupt ? -r.label : r.label;
  };
  auto run_basis_step = [&](int idx) {
    const auto& step = program.steps[idx];
    MeasurementOp op = MeasurementOp::bell_basis();
    if (step.op_kind == MeasurementStep::OpKind::kBuBasis) {
      Eigen::Matrix2cd a =
          Eigen::Matrix2cd(step.bu_gate.matrix()).adjoint();
      if (step.frame_adapted) {
        a = (sigma_matrix(frame_letter_index(frame, step.targets[0])) * a).eval();
      }
      op = MeasurementOp::conjugated_bell_basis(a);
    }
    const MeasureResult r = measure(state, op, step.targets, src, "program step");
    state = r.state;
    outcomes[idx] = step.corrupt ? (r.label ^ 1) : r.label;
  };

  for (const auto& gadget : program.gadgets) {
    ++stats.rounds_total;
    for (int zp : gadget.zprep_steps) run_observable_step(zp);

    if (gadget.kind == GadgetInstance::Kind::k1q) {
      run_observable_step(gadget.xx_step);
      run_observable_step(gadget.zz_step);
      run_basis_step(gadget.bu_step);

      const int m =
          bell_index_from_eigenvalues(outcomes[gadget.xx_step], outcomes[gadget.zz_step]);
      const int j = outcomes[gadget.bu_step];
      frame.set_letter(gadget.data0, 'I');
      frame.set_letter(gadget.ancilla[0], 'I');
      frame.set_letter(gadget.out0, "IXYZ"[pauli_index_compose(m, j)]);
    } else {
      for (int fs : gadget.factory_steps) run_observable_step(fs);

      // The branch label is a classical function of the factory outcomes;
      // read it off the (disentangled) ancilla block.
      const std::array<int, 4> block = {gadget.ancilla[0], gadget.ancilla[1],
                                        gadget.ancilla[2], gadget.ancilla[3]};
      const auto label = classify_branch(factor_out(state, block).kept);
      if (!label) throw std::logic_error("factory produced an unclassifiable branch");

      run_basis_step(gadget.bell_step0);
      run_basis_step(gadget.bell_step1);

      const int u1 = pauli_index_compose(pauli_index_compose(outcomes[gadget.bell_step0],
                                                             label->first),
                                         frame_letter_index(frame, gadget.data0));
      const int u2 = pauli_index_compose(pauli_index_compose(outcomes[gadget.bell_step1],
                                                             label->second),
                                         frame_letter_index(frame, gadget.data1));
      PauliString pre = PauliString::identity(program.n_physical);
      pre.set_letter(gadget.out0, "IXYZ"[u1]);
      pre.set_letter(gadget.out1, "IXYZ"[u2]);
      const PauliString corr = conjugate(CliffordGate::cnot(gadget.out0, gadget.out1), pre);

      frame.set_letter(gadget.data0, 'I');
      frame.set_letter(gadget.data1, 'I');
      frame.set_letter(gadget.ancilla[0], 'I');
      frame.set_letter(gadget.ancilla[1], 'I');
      frame.set_letter(gadget.out0, corr.letter(gadget.out0));
      frame.set_letter(gadget.out1, corr.letter(gadget.out1));
    }
  }

  SimResult result;
  result.final_frame = frame;
  PauliString resolve = frame;
  resolve.phase_exp = 0;
  const StateVector resolved = apply_pauli(resolve, state);
  if (program.n_physical > program.n_data) {
    result.output = factor_out(resolved, program.output_qubits).kept;
  } else {
    result.output = resolved;
  }
  result.outcomes = std::move(outcomes);
  result.stats = stats;
  return result;
}

SimResult simulate_seeded(const MeasurementProgram& program, const StateVector& input,
                          uint64_t seed) {
  Rng rng(seed);
  OutcomeSource src(rng);
  SimResult r = simulate(program, input, src);
  r.stats.seed = seed;
  return r;
}

StateVector circuit_apply(const GateCircuit& circuit, const StateVector& input) {
  if (input.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("input size does not match the circuit");
  }
  StateVector s = input;
  for (const auto& g : circuit.gates) s = apply_gate(s, g);
  return s;
}

VerifyReport verify_equivalence(const GateCircuit& circuit, const MeasurementProgram& program,
                                int trials, Rng& rng) {
  VerifyReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const StateVector input = random_state(circuit.n_qubits, rng);
    OutcomeSource src(rng);
    const SimResult sim = simulate(program, input, src);
    const StateVector want = circuit_apply(circuit, input);
    const double f = fidelity(sim.output, want);
    report.min_fidelity = std::min(report.min_fidelity, f);
    if (f <= 1.0 - 1e-9) {
      report.failed_trials.push_back(t);
      report.pass = false;
    }
  }
  return report;
}

MeasurementProgram corrupt_program(const MeasurementProgram& program) {
  MeasurementProgram bad = program;
  for (auto& step : bad.steps) {
    if (step.op_kind == MeasurementStep::OpKind::kObservable &&
        step.observable.arity == 2) {
      step.corrupt = true;
      return bad;
    }
  }
  for (auto& step : bad.steps) {
    step.corrupt = true;
    return bad;
  }
  throw std::invalid_argument("cannot corrupt an empty program");
}

std::vector<MeasurementStep> prepare_zero_and_plus(PrepSchedule schedule) {
  std::vector<MeasurementStep> steps;
  auto obs_step = [&](const char* letters, std::vector<int> targets) {
    MeasurementStep s;
    s.purpose = StepPurpose::kAncillaPrep;
    s.op_kind = MeasurementStep::OpKind::kObservable;
    s.observable = Observable::pauli(letters);
    s.targets = std::move(targets);
    steps.push_back(std::move(s));
  };
  if (schedule == PrepSchedule::kSingleQubit) {
    obs_step("Z", {0});  // |0> up to a recorded flip
    obs_step("X", {1});  // |+> up to a recorded flip
  } else {
    obs_step("ZZ", {0, 1});
    obs_step("ZZ", {0, 2});
    obs_step("ZZ", {1, 2});
  }
  return steps;
}

FragmentResult run_fragment(const StateVector& s, const std::vector<MeasurementStep>& steps,
                            OutcomeSource& src) {
  FragmentResult out;
  out.state = s;
  for (const auto& step : steps) {
    if (step.op_kind != MeasurementStep::OpKind::kObservable) {
      throw std::invalid_argument("fragments may contain only observable steps");
    }
    const MeasureResult r =
        measure_observable(out.state, step.observable, step.targets, src, "fragment step");
    out.state = r.state;
    out.outcomes.push_back(r.label);
  }
  return out;
}

ReadoutResult readout(const StateVector& s, int data_qubit, int zero_ancilla,
                      const PauliString& frame, OutcomeSource& src) {
  const std::array<int, 2> targets = {data_qubit, zero_ancilla};
  const MeasureResult r =
      measure_pauli_observable(s, PauliString::from_string("ZZ"), targets, src, "readout");
  int bit = r.label == +1 ? 0 : 1;
  if ((frame.x_mask >> data_qubit) & 1u) bit ^= 1;  // pending X flips the parity
  return ReadoutResult{bit, r.state};
}

}  // namespace mqc
