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

#include <utility>
#include <vector>

#include "mqc/observable.hpp"
#include "mqc/pauli.hpp"
#include "mqc/rng.hpp"
#include "mqc/statevector.hpp"

namespace mqc {

enum class GadgetKind {
  kTeleport,          // plain teleportation, no ancilla gate
  kIndirect1q,        // teleport through (I ⊗ U)|Phi_0>, correction U sigma_j U^dag
  kIndirect1qShifted, // same, ancilla (I ⊗ U sigma_k)|Phi_0> for a measured k
  kIndirect2q,        // two teleports through (I ⊗ I ⊗ U)(|Phi_0>|Phi_0>)
  kIndirectBu,        // measure along {(U^dag ⊗ I)|Phi_j>}, Pauli correction
};

/// Ancilla qubits each gadget consumes per round.
int gadget_ancilla_arity(GadgetKind kind);

struct GadgetTrace {
  /// Measurement outcome labels in execution order. One Bell label per round
  /// for the 1-qubit gadgets (preceded by the ancilla label k in shifted
  /// mode), a label pair per round for the 2-qubit gadget.
  std::vector<int> outcomes;
  int rounds = 0;
  StateVector final_state;
  /// Identity unless the caller asked for frame tracking; then the pending
  /// Pauli correction that was not applied to the state.
  PauliString frame = PauliString::identity(1);
};

/// Teleports qubit `src` of a full register through the Bell pair held in
/// `anc` (anc.first is measured with src, anc.second receives the state).
/// The conditional sigma_j is applied; final_state is the full register.
/// With check_ancilla set, verifies the pair actually holds |Phi_0>.
GadgetTrace teleport(const StateVector& s, int src, std::pair<int, int> anc,
                     OutcomeSource& src_outcomes, bool check_ancilla = false);

/// (I ⊗ U sigma_k)|Phi_0> = (I ⊗ U)|Phi_k> up to phase.
StateVector make_gadget_ancilla(const Gate& u, int k);

enum class IndirectMode { kLiteral, kShifted };

/// Indirect 1-qubit gate: repeats the teleport-through-ancilla construction,
/// re-entering with the correction U sigma_j U^dag until the identity branch
/// lands. In shifted mode each round's ancilla is prepared by a complete
/// measurement along {(I ⊗ U)|Phi_k>} and the outcome is relabelled by k.
/// `psi` is the 1-qubit data state; final_state is the 1-qubit output.
GadgetTrace indirect_gate_1q(const StateVector& psi, const Gate& u, IndirectMode mode,
                             OutcomeSource& src, int max_rounds = 1000);

/// Indirect 2-qubit gate. When the round's correction U(sigma⊗sigma)U^dag is a
/// Pauli product (always, for CNOT) it is applied directly and the gadget
/// finishes in that round; otherwise the correction re-enters as the next
/// round's gate. `psi` is the 2-qubit data state.
GadgetTrace indirect_gate_2q(const StateVector& psi, const Gate& u, OutcomeSource& src,
                             int max_rounds = 1000);

/// The commuting observable pair whose joint eigenspaces are
/// {(U^dag ⊗ I)|Phi_j>}: (U^dag X U) ⊗ X and (U^dag Z U) ⊗ Z, canonicalized to
/// a positive leading coefficient. relabel_* records when the canonical sign
/// differs from the raw operator, i.e. when outcomes must be flipped.
struct BuObservables {
  Observable mx;
  Observable mz;
  bool relabel_x = false;
  bool relabel_z = false;
};
BuObservables bu_observables(const Gate& u);

/// The complete four-outcome measurement along {(A ⊗ I)|Phi_j>}.
MeasurementOp bu_basis(const Eigen::Matrix2cd& a);

/// Single-round indirect gate: measures the two bu_observables on
/// (data, ancilla half), then the Pauli correction sigma_j — applied to the
/// output when track_frame_only is false, otherwise recorded in the trace
/// frame. Exactly one round for every u.
GadgetTrace indirect_gate_bu(const StateVector& psi, const Gate& u, OutcomeSource& src,
                             bool track_frame_only = false);

/// Bell label j from the XX and ZZ eigenvalues (+1/-1 each).
int bell_index_from_eigenvalues(int xx, int zz);

}  // namespace mqc
