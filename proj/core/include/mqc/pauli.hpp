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

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mqc {

/// A phased Pauli string: i^phase_exp * (letter_0 ⊗ letter_1 ⊗ ... ⊗ letter_{n-1}).
///
/// Qubit 0 is the leftmost tensor factor (and the most significant bit of a
/// computational-basis index); every module shares this convention. Bit q of
/// the masks encodes the letter on qubit q:
///   (x,z) = (0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z.
struct PauliString {
  int n_qubits = 0;
  uint8_t phase_exp = 0;  // exponent of i, mod 4
  uint32_t x_mask = 0;
  uint32_t z_mask = 0;

  static constexpr int kMaxQubits = 31;

  static PauliString identity(int n);
  /// Single letter ('I', 'X', 'Y' or 'Z') on `qubit`, identity elsewhere.
  static PauliString single(int n, int qubit, char letter);
  /// Parses the rendering grammar: optional sign, optional 'i', then letters,
  /// e.g. "-iYX", "+XIXX", "ZZ".
  static PauliString from_string(std::string_view text);

  char letter(int qubit) const;
  void set_letter(int qubit, char letter);
  /// Number of non-identity tensor components.
  int weight() const;
  bool is_identity() const { return x_mask == 0 && z_mask == 0; }
  /// True when the operator is Hermitian (phase ±1).
  bool is_sign_only() const { return (phase_exp & 1u) == 0; }

  /// Phase prefix ("+", "+i", "-", "-i") followed by the letters.
  std::string str() const;
  /// Dense matrix, i^phase_exp times the Kronecker product of the letters.
  /// Intended for small-n oracles; n_qubits must be <= 10.
  Eigen::MatrixXcd to_matrix() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

/// Exact product a*b with phase tracking. Throws on size mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff ab == ba, i.e. the symplectic inner product of the masks is even.
bool commutes(const PauliString& a, const PauliString& b);

/// A generator of the Clifford group. P is the phase gate e^{-i pi/4 Z},
/// i.e. diag(e^{-i pi/4}, e^{+i pi/4}).
struct CliffordGate {
  enum class Kind { kCnot, kH, kP, kSwap };
  Kind kind;
  int q0 = -1;
  int q1 = -1;  // second target for CNOT (target qubit) and SWAP

  static CliffordGate cnot(int control, int target) { return {Kind::kCnot, control, target}; }
  static CliffordGate h(int q) { return {Kind::kH, q}; }
  static CliffordGate p(int q) { return {Kind::kP, q}; }
  static CliffordGate swap(int a, int b) { return {Kind::kSwap, a, b}; }

  int arity() const { return (kind == Kind::kH || kind == Kind::kP) ? 1 : 2; }
  std::string str() const;
};

/// Conjugation g p g^dagger. Closed on Pauli strings; the result carries the
/// exact phase (always ±1 for Hermitian inputs).
PauliString conjugate(const CliffordGate& g, const PauliString& p);

/// Index arithmetic for the sigma_j / Bell-state labelling: sigma_0 = I,
/// sigma_1 = X, sigma_2 = Y, sigma_3 = Z. Composition of labels is xor on the
/// (x,z) bit pairs; phases are dropped.
int pauli_index_compose(int a, int b);
/// The (x,z) bit pair of sigma_j as {x, z}.
std::pair<int, int> pauli_index_bits(int j);
/// Label from (x,z) bits.
int pauli_index_from_bits(int x, int z);
/// 2x2 matrix of sigma_j.
Eigen::Matrix2cd sigma_matrix(int j);

}  // namespace mqc
