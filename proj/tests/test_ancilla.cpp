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

#include <doctest.h>

#include "mqc/gadgets.hpp"
#include "support.hpp"

using namespace mqc;

namespace {

const std::vector<int> kReferenceForced = {+1, +1, +1, +1, +1, +1};

}  // namespace

TEST_CASE("the reference branch lands exactly on the CNOT ancilla") {
  Rng rng(201);
  OutcomeSource src(rng, kReferenceForced);
  const AncillaBranch branch = prepare_acn(src, AncillaBackend::kStatevector);
  CHECK(branch.label == std::pair<int, int>{0, 0});
  CHECK(fidelity(branch.state, acn_state()) > 1.0 - 1e-10);

  // Outcome record lists all six measurements of the schedule.
  REQUIRE(branch.outcome_record.size() == 6);
  for (const auto& [name, outcome] : branch.outcome_record) CHECK(outcome == +1);
}

TEST_CASE("the P- branch is still a classified ancilla") {
  Rng rng(202);
  OutcomeSource src(rng, {+1, +1, +1, +1, -1, +1});
  const AncillaBranch branch = prepare_acn(src, AncillaBackend::kStatevector);
  PauliString shift = PauliString::identity(4);
  shift.set_letter(0, "IXYZ"[branch.label.first]);
  shift.set_letter(1, "IXYZ"[branch.label.second]);
  CHECK(fidelity(branch.state, apply_pauli(shift, acn_state())) > 1.0 - 1e-10);
  CHECK(branch.label != std::pair<int, int>{0, 0});
}

TEST_CASE("all 32 forced branches classify with unit overlap") {
  const auto combos = acn_forced_combinations();
  REQUIRE(combos.size() == 32);
  for (const auto& forced : combos) {
    Rng rng(203);
    OutcomeSource src(rng, forced);
    const AncillaBranch branch = prepare_acn(src, AncillaBackend::kStatevector);
    PauliString shift = PauliString::identity(4);
    shift.set_letter(0, "IXYZ"[branch.label.first]);
    shift.set_letter(1, "IXYZ"[branch.label.second]);
    CHECK(fidelity(branch.state, apply_pauli(shift, acn_state())) > 1.0 - 1e-10);
  }
}

TEST_CASE("forcing the deterministic Bell completion to -1 is impossible") {
  Rng rng(204);
  OutcomeSource src(rng, {+1, +1, +1, -1, +1, +1});
  CHECK_THROWS_AS(prepare_acn(src, AncillaBackend::kStatevector), ImpossibleOutcome);
}

TEST_CASE("statevector and stabilizer backends agree on every branch") {
  for (const auto& forced : acn_forced_combinations()) {
    Rng rng1(205), rng2(205);
    OutcomeSource src1(rng1, forced);
    OutcomeSource src2(rng2, forced);
    const AncillaBranch dense = prepare_acn(src1, AncillaBackend::kStatevector);
    const AncillaBranch tableau = prepare_acn(src2, AncillaBackend::kStabilizer);
    CHECK(dense.label == tableau.label);
    CHECK(tableau.tableau.has_value());
    CHECK(fidelity(dense.state, tableau.state) > 1.0 - 1e-10);
  }
}

TEST_CASE("branch probabilities: P+ and even parity are fair coins") {
  StateVector state = tensor(
      tensor(StateVector::basis(1, "0"),
             StateVector::from_amplitudes(1, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)})),
      StateVector::basis(2, "00"));
  Rng rng2(207);
  OutcomeSource forced(rng2, {+1, +1, +1, +1});
  const std::array<int, 1> q0 = {0};
  state = measure_pauli_observable(state, PauliString::from_string("X"), q0, forced).state;
  const std::array<int, 1> q1 = {1};
  state = measure_pauli_observable(state, PauliString::from_string("Z"), q1, forced).state;
  const std::array<int, 2> pair = {2, 3};
  state = measure_pauli_observable(state, PauliString::from_string("XX"), pair, forced).state;
  state = measure_pauli_observable(state, PauliString::from_string("ZZ"), pair, forced).state;

  Rng rng3(208);
  OutcomeSource plus(rng3, {+1, +1});
  const std::array<int, 2> step2 = {1, 2};
  const MeasureResult pm = measure(state, MeasurementOp::parity_pm(), step2, plus);
  CHECK(pm.probability == doctest::Approx(0.5).epsilon(1e-10));
  const std::array<int, 2> step3 = {0, 2};
  const MeasureResult parity =
      measure_pauli_observable(pm.state, PauliString::from_string("ZZ"), step3, plus);
  CHECK(parity.probability == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("the P± projectors coincide with the XX observable projectors") {
  const MeasurementOp pm = MeasurementOp::parity_pm();
  const Eigen::MatrixXcd xx = Observable::pauli("XX").matrix();
  const Eigen::MatrixXcd plus = (Eigen::MatrixXcd::Identity(4, 4) + xx) / 2.0;
  const Eigen::MatrixXcd minus = (Eigen::MatrixXcd::Identity(4, 4) - xx) / 2.0;
  CHECK(test::max_abs(pm.projector_matrix(0) - plus) < 1e-12);
  CHECK(test::max_abs(pm.projector_matrix(1) - minus) < 1e-12);
}

TEST_CASE("classification basics") {
  CHECK(classify_branch(acn_state()) == std::pair<int, int>{0, 0});
  const StateVector shifted =
      apply_pauli(PauliString::from_string("XIII"), acn_state());
  CHECK(classify_branch(shifted) == std::pair<int, int>{1, 0});

  Rng rng(209);
  CHECK_FALSE(classify_branch(random_state(4, rng)).has_value());
}

TEST_CASE("stabilizer reference generates the ancilla") {
  const StabilizerTableau ref = acn_stabilizer_reference();
  CHECK(fidelity(to_statevector(ref), acn_state()) > 1.0 - 1e-12);

  Rng rng(210);
  OutcomeSource src(rng, kReferenceForced);
  const AncillaBranch branch = prepare_acn(src, AncillaBackend::kStabilizer);
  REQUIRE(branch.tableau.has_value());
  CHECK(same_stabilizer_state(*branch.tableau, ref));

  // Weight facts about the published generating set.
  int weight3 = 0;
  for (const auto& g : ref.generators()) {
    CHECK(g.weight() <= 4);
    if (g.weight() == 3) ++weight3;
  }
  CHECK(weight3 >= 1);
}

TEST_CASE("no generating set of the ancilla stabilizer has maximum weight 2") {
  // Enumerate the full 16-element group, then every 4-subset of the 15
  // non-identity elements; any independent choice must contain weight >= 3.
  const StabilizerTableau ref = acn_stabilizer_reference();
  const auto& gens = ref.generators();
  std::vector<PauliString> group;
  for (int mask = 1; mask < 16; ++mask) {
    PauliString acc = PauliString::identity(4);
    for (int k = 0; k < 4; ++k) {
      if ((mask >> k) & 1) acc = multiply(acc, gens[k]);
    }
    group.push_back(acc);
  }
  REQUIRE(group.size() == 15);

  int generating_sets = 0;
  for (int a = 0; a < 15; ++a) {
    for (int b = a + 1; b < 15; ++b) {
      for (int c = b + 1; c < 15; ++c) {
        for (int d = c + 1; d < 15; ++d) {
          bool independent = true;
          try {
            StabilizerTableau candidate({group[a], group[b], group[c], group[d]});
            (void)candidate;
          } catch (const std::invalid_argument&) {
            independent = false;
          }
          if (!independent) continue;
          ++generating_sets;
          const int max_weight = std::max(std::max(group[a].weight(), group[b].weight()),
                                          std::max(group[c].weight(), group[d].weight()));
          CHECK(max_weight >= 3);
        }
      }
    }
  }
  CHECK(generating_sets > 0);
}

TEST_CASE("every branch works as a shifted CNOT ancilla") {
  Rng rng(211);
  for (const auto& forced : acn_forced_combinations()) {
    Rng prep_rng(212);
    OutcomeSource prep(prep_rng, forced);
    const AncillaBranch branch = prepare_acn(prep, AncillaBackend::kStatevector);
    const StateVector psi = random_state(2, rng);
    OutcomeSource bells(rng);
    CHECK(shifted_ancilla_ok(branch, psi, bells));
  }
}

TEST_CASE("shifted acceptance holds for every Bell outcome pair") {
  Rng rng(213);
  // A label-(k,l) != (0,0) branch, all 16 forced Bell pairs.
  Rng prep_rng(214);
  OutcomeSource prep(prep_rng, {-1, +1, +1, +1, +1, +1});
  const AncillaBranch branch = prepare_acn(prep, AncillaBackend::kStatevector);
  REQUIRE(branch.label != std::pair<int, int>{0, 0});
  const StateVector psi = random_state(2, rng);
  for (int j1 = 0; j1 < 4; ++j1) {
    for (int j2 = 0; j2 < 4; ++j2) {
      OutcomeSource bells(rng, {j1, j2});
      CHECK(shifted_ancilla_ok(branch, psi, bells));
    }
  }
}

TEST_CASE("constructed-label branches classify back to their labels") {
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      PauliString shift = PauliString::identity(4);
      shift.set_letter(0, "IXYZ"[k]);
      shift.set_letter(1, "IXYZ"[l]);
      const auto got = classify_branch(apply_pauli(shift, acn_state()));
      CHECK(got == std::pair<int, int>{k, l});
    }
  }
}
