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

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mqc/pauli.hpp"
#include "mqc/rng.hpp"

namespace mqc {

using cd = std::complex<double>;

/// Dense amplitude vector over n <= 14 qubits. Values are immutable; all
/// operations return new states. Qubit 0 is the most significant index bit.
class StateVector {
 public:
  static constexpr int kMaxQubits = 14;

  StateVector() = default;
  /// |0...0>
  static StateVector zeros(int n);
  /// Computational basis state from a bit string, e.g. basis(2, "11") = |11>.
  static StateVector basis(int n, std::string_view bits);
  /// Bell states with the conventional signs:
  ///   j=0: (|00>+|11>)/sqrt2   j=1: (|01>+|10>)/sqrt2
  ///   j=2: (|01>-|10>)/sqrt2   j=3: (|00>-|11>)/sqrt2
  static StateVector bell(int j);
  /// Takes ownership of `amps`; must be normalized within 1e-8.
  static StateVector from_amplitudes(int n, std::vector<cd> amps);

  int n_qubits() const { return n_; }
  size_t dim() const { return a_.size(); }
  const std::vector<cd>& amplitudes() const { return a_; }
  cd amp(size_t index) const { return a_.at(index); }
  double norm() const;

  /// Index bit position of qubit q (qubit 0 is most significant).
  int bit_of(int q) const { return n_ - 1 - q; }

 private:
  StateVector(int n, std::vector<cd> a) : n_(n), a_(std::move(a)) {}
  int n_ = 0;
  std::vector<cd> a_;

  friend StateVector apply_pauli(const PauliString&, const StateVector&);
  friend class GateApplier;
};

/// A gate the dense simulator can apply. CNOT/H/P/SWAP match the Clifford
/// generators; RZ(t) = e^{-i t/2 Z}, RX(t) = e^{-i t/2 X}; U1/U2 hold an
/// arbitrary unitary (validated within 1e-12 at construction).
struct Gate {
  enum class Kind { kCnot, kH, kP, kSwap, kRz, kRx, kU1, kU2 };
  Kind kind = Kind::kH;
  std::array<int, 2> targets{-1, -1};
  double theta = 0.0;
  Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd m2 = Eigen::Matrix4cd::Identity();

  static Gate cnot(int control, int target);
  static Gate h(int q);
  static Gate p(int q);
  static Gate swap(int a, int b);
  static Gate rz(int q, double theta);
  static Gate rx(int q, double theta);
  static Gate unitary1(int q, const Eigen::Matrix2cd& u);
  static Gate unitary2(int q0, int q1, const Eigen::Matrix4cd& u);

  int arity() const { return (kind == Kind::kCnot || kind == Kind::kSwap || kind == Kind::kU2) ? 2 : 1; }
  bool is_clifford_generator() const {
    return kind == Kind::kCnot || kind == Kind::kH || kind == Kind::kP || kind == Kind::kSwap;
  }
  /// 2x2 or 4x4 matrix of the gate on its own targets.
  Eigen::MatrixXcd matrix() const;
  std::string name() const;
};

/// Projective measurement given as an ordered list of mutually orthogonal
/// projectors over the target space, each an orthonormal list of basis
/// vectors. Ranks must sum to exactly 2^arity (rank>1 outcomes model
/// incomplete measurements such as the two-outcome parity measurement).
struct MeasurementOp {
  struct Projector {
    std::vector<Eigen::VectorXcd> basis;
  };

  int arity = 0;
  std::vector<Projector> projectors;
  std::vector<int> labels;

  MeasurementOp(int arity, std::vector<Projector> projectors, std::vector<int> labels);

  /// The four rank-1 Bell projectors, labels 0..3.
  static MeasurementOp bell_basis();
  /// Complete basis {(A ⊗ I)|Phi_j>}, labels 0..3. A acts on targets[0].
  static MeasurementOp conjugated_bell_basis(const Eigen::Matrix2cd& a);
  /// The two-projector parity measurement P+ = |Phi0><Phi0|+|Phi1><Phi1| and
  /// P- = |Phi2><Phi2|+|Phi3><Phi3|, labels +1/-1.
  static MeasurementOp parity_pm();

  Eigen::MatrixXcd projector_matrix(size_t k) const;
  size_t outcome_count() const { return projectors.size(); }
};

struct MeasureResult {
  int label = 0;
  double probability = 0.0;
  StateVector state;
};

StateVector apply_gate(const StateVector& s, const Gate& g);
/// Applies the phased Pauli string exactly (p.n_qubits must equal s.n_qubits).
StateVector apply_pauli(const PauliString& p, const StateVector& s);

/// Born-rule (or forced) projective measurement on `targets`; targets[0] is
/// the most significant qubit of the operator space.
MeasureResult measure(const StateVector& s, const MeasurementOp& op,
                      std::span<const int> targets, OutcomeSource& src,
                      const char* what = "measurement");

/// Measures a Hermitian Pauli observable (eigenvalues ±1, labels ±1) embedded
/// at `targets`. The string must be non-identity with phase ±1; a -1 phase
/// flips the outcome labelling of the underlying projectors.
MeasureResult measure_pauli_observable(const StateVector& s, const PauliString& p,
                                       std::span<const int> targets, OutcomeSource& src,
                                       const char* what = "observable");

/// |<a|b>| (1 for equal states up to global phase).
double fidelity(const StateVector& a, const StateVector& b);
cd inner(const StateVector& a, const StateVector& b);
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol = 1e-10);

/// Tensor product; `a`'s qubits come first (leftmost).
StateVector tensor(const StateVector& a, const StateVector& b);

/// Rescales so the first amplitude with |amp| > 1e-9 is real positive.
StateVector canonical_phase(const StateVector& s);

/// Splits an unentangled register into the state of `kept` (in the given
/// qubit order) and the state of the remaining qubits (ascending order).
/// Throws std::runtime_error if the cut crosses entanglement.
struct Factored {
  StateVector kept;
  StateVector rest;
};
Factored factor_out(const StateVector& s, std::span<const int> kept);

/// Haar-style random state (normalized complex Gaussian amplitudes).
StateVector random_state(int n, Rng& rng);
/// Haar-random unitary of dimension `dim` via QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int dim, Rng& rng);

/// Sparse test-fixture serialization: lines of "index re im" for every
/// amplitude above 1e-14.
std::string serialize_amplitudes(const StateVector& s);
StateVector deserialize_amplitudes(int n, std::string_view text);

}  // namespace mqc
