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
#include <utility>
#include <vector>

#include "mqc/rng.hpp"
#include "mqc/stabilizer.hpp"
#include "mqc/statevector.hpp"

namespace mqc {

/// The CNOT ancilla: (I ⊗ I ⊗ CNOT)(|Phi_0>_{0,2} ⊗ |Phi_0>_{1,3}),
/// amplitudes 1/2 on |0000>, |0101>, |1011>, |1110>. Qubits 0,1 are the
/// halves later consumed by Bell measurements; 2,3 carry the gate.
StateVector acn_state();

/// Its stabilizer: {+XIXX, +ZIZI, +IXIX, +IZZZ}.
StabilizerTableau acn_stabilizer_reference();

enum class AncillaBackend { kStatevector, kStabilizer };

/// One run of the measurement-only preparation protocol. Every outcome branch
/// is a usable ancilla (sigma_k ⊗ sigma_l ⊗ I ⊗ I)|a_cn>.
struct AncillaBranch {
  std::vector<std::pair<std::string, int>> outcome_record;
  std::pair<int, int> label{0, 0};
  StateVector state;
  std::optional<StabilizerTableau> tableau;
};

/// Runs the protocol on a fresh 4-qubit register:
///   prep measurements X(q0), Z(q1), XX(q2,q3), ZZ(q2,q3),
///   then the two-projector parity measurement P± on (q1,q2),
///   then the ZZ parity of (q0,q2).
/// The register starts in |0>|+>|0>|0> so that every recorded outcome except
/// the Bell-completing ZZ (deterministically +1) is a fair coin: 2^5 = 32
/// forced branches. Forced outcome order: X, Z, XX, ZZ, P±, parity, all ±1.
AncillaBranch prepare_acn(OutcomeSource& src, AncillaBackend backend);

/// The unique (k,l) with |<s|(sigma_k ⊗ sigma_l ⊗ I ⊗ I)|a_cn>| > 1 - 1e-10,
/// or nullopt when `s` is not an ancilla branch.
std::optional<std::pair<int, int>> classify_branch(const StateVector& s);

/// Uses the branch as the ancilla of the indirect CNOT gadget on `psi`
/// (corrections relabelled by the branch label) and checks the output equals
/// CNOT|psi> up to global phase. Consumes two Bell outcomes from `src`.
bool shifted_ancilla_ok(const AncillaBranch& branch, const StateVector& psi,
                        OutcomeSource& src);

/// All forced-outcome combinations of the five free protocol outcomes, in a
/// deterministic order: {X, Z, XX, P±, parity} each ±1, ZZ pinned to +1.
std::vector<std::vector<int>> acn_forced_combinations();

}  // namespace mqc
