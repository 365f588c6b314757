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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mqc/pauli.hpp"
#include "mqc/rng.hpp"

namespace mqc {

class StateVector;
struct MeasureResult;

/// A Hermitian two-outcome observable with M^2 = I: a real unit combination
/// of sign-free Pauli strings with pairwise anticommuting terms. Single-term
/// observables are plain Pauli measurements (XX, ZZ, XZ, ...); two-term ones
/// are the rotated-axis operators such as (X+Y)/sqrt2 ⊗ X.
struct Observable {
  struct Term {
    double coeff = 1.0;
    PauliString pauli;  // phase_exp must be 0
  };

  int arity = 0;
  std::vector<Term> terms;

  Observable() = default;
  Observable(int arity, std::vector<Term> terms);

  /// Single Pauli term. The string's ±1 phase moves into the coefficient.
  static Observable pauli(const PauliString& p);
  static Observable pauli(std::string_view letters);
  /// c1*P1 + c2*P2 with c1^2 + c2^2 = 1 and {P1, P2} = 0.
  static Observable axis(double c1, const PauliString& p1, double c2, const PauliString& p2);

  bool is_single_pauli() const { return terms.size() == 1; }
  Eigen::MatrixXcd matrix() const;
  std::string str() const;

  /// F M F for a sign-free Pauli F on the same qubits (term-wise sign flips).
  Observable conjugated_by(const PauliString& f) const;
  /// Letters of targets[0] and targets[1] exchanged (arity 2 only).
  Observable swapped_factors() const;
  /// Terms sorted, global sign flipped so the leading coefficient is
  /// positive. `flipped` records whether outcomes must be relabelled.
  Observable canonical(bool* flipped = nullptr) const;
};

/// Exact operator equality after canonical term ordering.
bool same_operator(const Observable& a, const Observable& b, double tol = 1e-9);

/// Equality up to the freedoms a measurement-only machine has: a global sign
/// (outcome relabelling), the order of the two tensor factors, and
/// conjugation by a Pauli on the targets (the transform a tracked Pauli frame
/// applies to a measured operator).
bool equivalent_observable(const Observable& a, const Observable& b, double tol = 1e-9);

/// Measures the observable embedded at `targets` (labels ±1).
MeasureResult measure_observable(const StateVector& s, const Observable& m,
                                 std::span<const int> targets, OutcomeSource& src,
                                 const char* what = "observable");

}  // namespace mqc
