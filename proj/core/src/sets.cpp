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

#include "mqc/sets.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "mqc/gadgets.hpp"

namespace mqc {

SetId set_id_from_string(std::string_view name) {
  if (name == "s0" || name == "S0") return SetId::kS0;
  if (name == "s1" || name == "S1") return SetId::kS1;
  if (name == "s2" || name == "S2") return SetId::kS2;
  if (name == "s3" || name == "S3") return SetId::kS3;
  throw std::invalid_argument(fmt::format("unknown set \"{}\"", std::string(name)));
}

std::string set_id_name(SetId id) {
  switch (id) {
    case SetId::kS0: return "s0";
    case SetId::kS1: return "s1";
    case SetId::kS2: return "s2";
    case SetId::kS3: return "s3";
  }
  return "?";
}

namespace {

void check_theta(double theta) {
  const double m = theta / (M_PI / 2.0);
  if (std::abs(m - std::round(m)) < 1e-9) {
    throw std::invalid_argument(
        "theta must satisfy theta != m*pi/2 for integer m; the rotated operator "
        "degenerates to a Pauli otherwise");
  }
}

Observable axis2(double c1, const char* p1, double c2, const char* p2) {
  return Observable::axis(c1, PauliString::from_string(p1), c2, PauliString::from_string(p2))
      .canonical();
}

}  // namespace

Gate UniversalSet::non_clifford_gate(int qubit) const {
  switch (id) {
    case SetId::kS0: return Gate::unitary1(qubit, *u0);
    case SetId::kS1: return Gate::rx(qubit, theta);
    case SetId::kS2: return Gate::rz(qubit, theta);
    case SetId::kS3: return Gate::rz(qubit, M_PI / 4.0);
  }
  throw std::logic_error("unreachable");
}

UniversalSet make_universal_set(SetId id, std::optional<double> theta,
                                std::optional<Eigen::Matrix2cd> u0) {
  UniversalSet set;
  set.id = id;
  set.prep_readout = {Observable::pauli("X"), Observable::pauli("Z")};

  const Observable xx = Observable::pauli("XX");
  const Observable zz = Observable::pauli("ZZ");
  const Observable xz = Observable::pauli("XZ");
  const Observable xy = Observable::pauli("XY");

  switch (id) {
    case SetId::kS0: {
      if (!u0) throw std::invalid_argument("s0 requires a 1-qubit unitary");
      set.u0 = *u0;
      const BuObservables bu = bu_observables(Gate::unitary1(0, *u0));
      set.members = {xx, zz, xz, xy, bu.mx, bu.mz};
      break;
    }
    case SetId::kS1: {
      if (!theta) throw std::invalid_argument("s1 requires --theta");
      check_theta(*theta);
      set.theta = *theta;
      std::vector<Observable::Term> terms = {
          {std::cos(*theta), PauliString::from_string("ZZ")},
          {std::sin(*theta), PauliString::from_string("YZ")}};
      set.members = {xx, zz, xz, xy, Observable(2, std::move(terms)).canonical()};
      break;
    }
    case SetId::kS2: {
      if (!theta) throw std::invalid_argument("s2 requires --theta");
      check_theta(*theta);
      set.theta = *theta;
      std::vector<Observable::Term> terms = {
          {std::cos(*theta), PauliString::from_string("XX")},
          {std::sin(*theta), PauliString::from_string("YX")}};
      set.members = {xx, zz, xz, xy, Observable(2, std::move(terms)).canonical()};
      break;
    }
    case SetId::kS3: {
      const double r = 1.0 / std::sqrt(2.0);
      set.theta = M_PI / 4.0;
      set.members = {xx, zz, xz, axis2(r, "XX", r, "YX")};
      break;
    }
  }
  return set;
}

std::vector<Observable> set_operators(SetId id, std::optional<double> theta,
                                      std::optional<Eigen::Matrix2cd> u0) {
  return make_universal_set(id, theta, u0).members;
}

bool set_contains(const UniversalSet& set, const Observable& op) {
  const auto& pool = op.arity == 1 ? set.prep_readout : set.members;
  for (const auto& member : pool) {
    if (equivalent_observable(op, member)) return true;
  }
  return false;
}

}  // namespace mqc
