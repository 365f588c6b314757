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

#include <Eigen/Dense>

#include "mqc/observable.hpp"
#include "mqc/statevector.hpp"

namespace mqc {

enum class SetId { kS0, kS1, kS2, kS3 };

SetId set_id_from_string(std::string_view name);  // "s0".."s3"
std::string set_id_name(SetId id);

/// A discrete universal set of 2-qubit measurement operators:
///   S0 = {XX, ZZ, XZ, XY, (u^dag X u)⊗X, (u^dag Z u)⊗Z}   for a supplied u
///   S1 = {XX, ZZ, XZ, XY, (cos t Z + sin t Y)⊗Z}           gate RX(t)
///   S2 = {XX, ZZ, XZ, XY, (cos t X + sin t Y)⊗X}           gate RZ(t)
///   S3 = {XX, ZZ, XZ, (X+Y)/sqrt2 ⊗ X}                     gate RZ(pi/4)
/// plus the declared 1-qubit X and Z preparation/readout measurements.
struct UniversalSet {
  SetId id = SetId::kS3;
  double theta = 0.0;
  std::optional<Eigen::Matrix2cd> u0;
  std::vector<Observable> members;       // 2-qubit operators as printed above
  std::vector<Observable> prep_readout;  // 1-qubit X and Z

  /// The set's designated non-Clifford gate on `qubit`.
  Gate non_clifford_gate(int qubit) const;
};

/// Builds the set. S1/S2 require theta with theta != m*pi/2; S0 requires u0.
UniversalSet make_universal_set(SetId id, std::optional<double> theta = std::nullopt,
                                std::optional<Eigen::Matrix2cd> u0 = std::nullopt);

/// The canonicalized 2-qubit operator list of the set.
std::vector<Observable> set_operators(SetId id, std::optional<double> theta = std::nullopt,
                                      std::optional<Eigen::Matrix2cd> u0 = std::nullopt);

/// Membership up to the model's freedoms (global sign, factor order, Pauli
/// conjugation); single-qubit X/Z prep and readout operators included.
bool set_contains(const UniversalSet& set, const Observable& op);

}  // namespace mqc
