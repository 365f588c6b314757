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

#include "mqc/ancilla.hpp"

#include <cmath>

#include "mqc/gadgets.hpp"

namespace mqc {

StateVector acn_state() {
  std::vector<cd> a(16, cd(0.0, 0.0));
  a[0b0000] = 0.5;
  a[0b0101] = 0.5;
  a[0b1011] = 0.5;
  a[0b1110] = 0.5;
  return StateVector::from_amplitudes(4, std::move(a));
}

StabilizerTableau acn_stabilizer_reference() {
  return StabilizerTableau::from_strings({"+XIXX", "+ZIZI", "+IXIX", "+IZZZ"});
}

namespace {

struct ProtocolStep {
  const char* name;
  PauliString op;             // measured operator for both backends
  std::vector<int> targets;   // statevector targets (op is given on them)
};

std::vector<ProtocolStep> protocol_steps() {
  return {
      {"X(0)", PauliString::from_string("X"), {0}},
      {"Z(1)", PauliString::from_string("Z"), {1}},
      {"XX(2,3)", PauliString::from_string("XX"), {2, 3}},
      {"ZZ(2,3)", PauliString::from_string("ZZ"), {2, 3}},
      {"P±(1,2)", PauliString::from_string("XX"), {1, 2}},
      {"parity(0,2)", PauliString::from_string("ZZ"), {0, 2}},
  };
}

}  // namespace

AncillaBranch prepare_acn(OutcomeSource& src, AncillaBackend backend) {
  AncillaBranch branch;
  const auto steps = protocol_steps();

  if (backend == AncillaBackend::kStatevector) {
    StateVector state = tensor(tensor(StateVector::basis(1, "0"),
                                      StateVector::from_amplitudes(1, {1.0 / std::sqrt(2.0),
                                                                       1.0 / std::sqrt(2.0)})),
                               StateVector::basis(2, "00"));
    for (size_t k = 0; k < steps.size(); ++k) {
      MeasureResult r;
      if (k == 4) {
        // Step 2 of the protocol is the displayed two-projector measurement;
        // it coincides with the XX observable on the same qubits.
        r = measure(state, MeasurementOp::parity_pm(), steps[k].targets, src, steps[k].name);
      } else {
        r = measure_pauli_observable(state, steps[k].op, steps[k].targets, src, steps[k].name);
      }
      state = r.state;
      branch.outcome_record.emplace_back(steps[k].name, r.label);
    }
    branch.state = state;
  } else {
    StabilizerTableau t = StabilizerTableau::product_state("0+00");
    for (const auto& step : steps) {
      PauliString full = PauliString::identity(4);
      for (size_t i = 0; i < step.targets.size(); ++i) {
        full.set_letter(step.targets[i], step.op.letter(static_cast<int>(i)));
      }
      const TableauMeasureResult r = measure_generatorwise(t, full, src);
      t = r.tableau;
      branch.outcome_record.emplace_back(step.name, r.outcome);
    }
    branch.tableau = t;
    branch.state = to_statevector(t);
  }

  const auto label = classify_branch(branch.state);
  if (!label) {
    throw std::logic_error("ancilla preparation produced an unclassifiable branch");
  }
  branch.label = *label;
  return branch;
}

std::optional<std::pair<int, int>> classify_branch(const StateVector& s) {
  if (s.n_qubits() != 4) return std::nullopt;
  const StateVector reference = acn_state();
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      PauliString shift = PauliString::identity(4);
      shift.set_letter(0, "IXYZ"[k]);
      shift.set_letter(1, "IXYZ"[l]);
      const StateVector target = apply_pauli(shift, reference);
      if (fidelity(s, target) > 1.0 - 1e-10) return std::make_pair(k, l);
    }
  }
  return std::nullopt;
}

bool shifted_ancilla_ok(const AncillaBranch& branch, const StateVector& psi,
                        OutcomeSource& src) {
  if (psi.n_qubits() != 2) throw std::invalid_argument("data state must be two qubits");
  // Register [d0 d1 a0 a1 o0 o1]; branch qubits (0,1,2,3) -> (a0,a1,o0,o1).
  StateVector reg = tensor(psi, branch.state);
  const std::array<int, 2> bm1 = {0, 2};
  const MeasureResult m1 = measure(reg, MeasurementOp::bell_basis(), bm1, src, "bell-1");
  const std::array<int, 2> bm2 = {1, 3};
  const MeasureResult m2 = measure(m1.state, MeasurementOp::bell_basis(), bm2, src, "bell-2");

  // The branch label shifts the teleported Paulis; the CNOT conjugation of
  // the shifted pair is the (always Pauli) correction on the outputs.
  const int u1 = pauli_index_compose(m1.label, branch.label.first);
  const int u2 = pauli_index_compose(m2.label, branch.label.second);
  PauliString pre = PauliString::identity(6);
  pre.set_letter(4, "IXYZ"[u1]);
  pre.set_letter(5, "IXYZ"[u2]);
  const PauliString correction = conjugate(CliffordGate::cnot(4, 5), pre);

  const std::array<int, 2> out_q = {4, 5};
  const StateVector out = factor_out(apply_pauli(correction, m2.state), out_q).kept;
  const StateVector want = apply_gate(psi, Gate::cnot(0, 1));
  return equal_up_to_global_phase(out, want, 1e-10);
}

std::vector<std::vector<int>> acn_forced_combinations() {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 32; ++mask) {
    const int x = (mask >> 4) & 1 ? -1 : +1;
    const int z = (mask >> 3) & 1 ? -1 : +1;
    const int xx = (mask >> 2) & 1 ? -1 : +1;
    const int pm = (mask >> 1) & 1 ? -1 : +1;
    const int parity = (mask >> 0) & 1 ? -1 : +1;
    out.push_back({x, z, xx, +1, pm, parity});
  }
  return out;
}

}  // namespace mqc
