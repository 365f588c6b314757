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

#include <string>
#include <string_view>
#include <vector>

#include "mqc/pauli.hpp"
#include "mqc/rng.hpp"
#include "mqc/statevector.hpp"

namespace mqc {

/// n signed, pairwise-commuting, independent Pauli generators fixing a unique
/// n-qubit state up to phase. Values are immutable; updates return new
/// tableaux and re-validate the invariants.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(std::vector<PauliString> generators);

  /// Tableau of |0...0>: generators {Z_q}.
  static StabilizerTableau zero_state(int n);
  /// Product state from a pattern of '0', '1', '+', '-' characters,
  /// e.g. "0+00" -> {+ZIII, +IXII, +IIZI, +IIIZ}.
  static StabilizerTableau product_state(std::string_view pattern);
  /// One signed Pauli string per line, e.g. "+XIXX".
  static StabilizerTableau from_strings(const std::vector<std::string>& lines);

  int n_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return gens_; }
  std::string str() const;

 private:
  int n_;
  std::vector<PauliString> gens_;
};

struct TableauMeasureResult {
  int outcome = 0;  // ±1
  bool deterministic = false;
  StabilizerTableau tableau;
};

/// Measurement update rule: generators that anticommute with m, {N1, N2, ...},
/// become {±m, N1*N2, N1*N3, ...} (N1 = first anticommuting generator); if all
/// generators commute with m the outcome is the sign with which m sits in the
/// group and the tableau is unchanged.
TableauMeasureResult measure_generatorwise(const StabilizerTableau& t, const PauliString& m,
                                           OutcomeSource& src);

/// Conjugates every generator by g.
StabilizerTableau apply_clifford(const StabilizerTableau& t, const CliffordGate& g);

/// True iff both signed generator groups are equal (canonical row reduction,
/// signs included).
bool same_stabilizer_state(const StabilizerTableau& a, const StabilizerTableau& b);

/// Unique reduced echelon form over the symplectic binary representation,
/// with row products keeping the signs exact.
std::vector<PauliString> canonical_generators(const StabilizerTableau& t);

/// The unique unit vector fixed by all generators (global phase fixed by
/// making the first sizeable amplitude real positive). n <= 12.
StateVector to_statevector(const StabilizerTableau& t);

}  // namespace mqc
