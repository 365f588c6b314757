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

#include "mqc/gadgets.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace mqc {

namespace {

constexpr double kCoeffEps = 1e-12;

Eigen::Matrix2cd gate_matrix_1q(const Gate& u) {
  if (u.arity() != 1) throw std::invalid_argument("expected a 1-qubit gate");
  return u.matrix();
}

Eigen::Matrix4cd kron22(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

// Snaps a near-unitary matrix back onto the unitary manifold. The correction
// recursion V <- V sigma V^dag reads V twice, so rounding error doubles per
// round and long retry tails would otherwise drift past the gate validator.
Eigen::MatrixXcd renormalized_unitary(const Eigen::MatrixXcd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const cd d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

// Decomposes a Hermitian traceless involution A = sum_k c_k sigma_k into the
// observable (A ⊗ B) over 2 qubits, with B a single Pauli letter.
Observable conjugated_axis_observable(const Eigen::Matrix2cd& a, char second_letter) {
  std::vector<Observable::Term> terms;
  for (int k = 1; k <= 3; ++k) {
    const cd c = (sigma_matrix(k) * a).trace() / 2.0;
    if (std::abs(c.imag()) > 1e-9) {
      throw std::invalid_argument("conjugated operator is not Hermitian");
    }
    if (std::abs(c.real()) < kCoeffEps) continue;
    PauliString p = PauliString::identity(2);
    p.set_letter(0, "IXYZ"[k]);
    p.set_letter(1, second_letter);
    terms.push_back(Observable::Term{c.real(), p});
  }
  return Observable(2, std::move(terms));
}

}  // namespace

int gadget_ancilla_arity(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::kTeleport: return 0;
    case GadgetKind::kIndirect1q: return 2;
    case GadgetKind::kIndirect1qShifted: return 2;
    case GadgetKind::kIndirect2q: return 4;
    case GadgetKind::kIndirectBu: return 2;
  }
  return 0;
}

int bell_index_from_eigenvalues(int xx, int zz) {
  if (xx == +1) return zz == +1 ? 0 : 1;
  return zz == +1 ? 3 : 2;
}

GadgetTrace teleport(const StateVector& s, int src, std::pair<int, int> anc,
                     OutcomeSource& src_outcomes, bool check_ancilla) {
  if (check_ancilla) {
    const std::array<int, 2> pair = {anc.first, anc.second};
    const Factored f = factor_out(s, pair);
    if (fidelity(f.kept, StateVector::bell(0)) < 1.0 - 1e-9) {
      throw std::invalid_argument("teleport ancilla pair does not hold |Phi_0>");
    }
  }
  const std::array<int, 2> targets = {src, anc.first};
  const MeasureResult m =
      measure(s, MeasurementOp::bell_basis(), targets, src_outcomes, "bell");
  PauliString corr = PauliString::identity(s.n_qubits());
  corr.set_letter(anc.second, "IXYZ"[m.label]);
  GadgetTrace trace;
  trace.outcomes = {m.label};
  trace.rounds = 1;
  trace.final_state = apply_pauli(corr, m.state);
  trace.frame = PauliString::identity(s.n_qubits());
  return trace;
}

StateVector make_gadget_ancilla(const Gate& u, int k) {
  const Eigen::Matrix2cd um = gate_matrix_1q(u);
  StateVector pair = StateVector::bell(0);
  if (k != 0) {
    pair = apply_pauli(PauliString::single(2, 1, "IXYZ"[k & 3]), pair);
  }
  return apply_gate(pair, Gate::unitary1(1, um));
}

GadgetTrace indirect_gate_1q(const StateVector& psi, const Gate& u, IndirectMode mode,
                             OutcomeSource& src, int max_rounds) {
  if (psi.n_qubits() != 1) throw std::invalid_argument("data state must be a single qubit");
  Eigen::Matrix2cd pending = gate_matrix_1q(u);

  GadgetTrace trace;
  StateVector cur = psi;
  while (true) {
    if (trace.rounds >= max_rounds) {
      throw std::runtime_error(
          fmt::format("indirect gate did not terminate within {} rounds", max_rounds));
    }
    ++trace.rounds;

    int k = 0;
    StateVector ancilla = StateVector::zeros(2);
    if (mode == IndirectMode::kShifted) {
      // Ancilla preparation by one complete measurement along {(I ⊗ V)|Phi_k>}.
      const Eigen::Matrix2cd v = pending;
      std::vector<MeasurementOp::Projector> projs;
      std::vector<int> labels;
      for (int j = 0; j < 4; ++j) {
        const StateVector target = apply_gate(StateVector::bell(j), Gate::unitary1(1, v));
        Eigen::VectorXcd w(4);
        for (int r = 0; r < 4; ++r) w(r) = target.amp(r);
        projs.push_back(MeasurementOp::Projector{{w}});
        labels.push_back(j);
      }
      const MeasurementOp prep(2, std::move(projs), std::move(labels));
      const std::array<int, 2> both = {0, 1};
      const MeasureResult pr = measure(ancilla, prep, both, src, "ancilla preparation");
      k = pr.label;
      ancilla = pr.state;
      trace.outcomes.push_back(k);
    } else {
      ancilla = apply_gate(StateVector::bell(0), Gate::unitary1(1, pending));
    }

    // Register layout per round: [data, anc0, anc1].
    const StateVector reg = tensor(cur, ancilla);
    const std::array<int, 2> bm = {0, 1};
    const MeasureResult m = measure(reg, MeasurementOp::bell_basis(), bm, src, "bell");
    const int j_eff = pauli_index_compose(m.label, k);
    trace.outcomes.push_back(m.label);

    const std::array<int, 1> out_q = {2};
    cur = factor_out(m.state, out_q).kept;
    if (j_eff == 0) break;
    // Correction V sigma_j V^dag re-enters as the next round's gate.
    pending = renormalized_unitary(pending * sigma_matrix(j_eff) * pending.adjoint());
  }
  trace.final_state = cur;
  trace.frame = PauliString::identity(1);
  return trace;
}

namespace {

// True when u conjugates every 2-qubit Pauli to a 2-qubit Pauli (checked on
// the four generators).
bool maps_paulis_to_paulis(const Eigen::Matrix4cd& u) {
  const std::array<Eigen::Matrix4cd, 4> gens = {
      kron22(sigma_matrix(1), sigma_matrix(0)), kron22(sigma_matrix(0), sigma_matrix(1)),
      kron22(sigma_matrix(3), sigma_matrix(0)), kron22(sigma_matrix(0), sigma_matrix(3))};
  for (const auto& g : gens) {
    const Eigen::Matrix4cd image = u * g * u.adjoint();
    bool hit = false;
    for (int a = 0; a < 4 && !hit; ++a) {
      for (int b = 0; b < 4 && !hit; ++b) {
        const cd overlap = (kron22(sigma_matrix(a), sigma_matrix(b)).adjoint() * image).trace() / 4.0;
        if (std::abs(std::abs(overlap) - 1.0) < 1e-9) hit = true;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

GadgetTrace indirect_gate_2q(const StateVector& psi, const Gate& u, OutcomeSource& src,
                             int max_rounds) {
  if (psi.n_qubits() != 2) throw std::invalid_argument("data state must be two qubits");
  if (u.arity() != 2) throw std::invalid_argument("expected a 2-qubit gate");
  Eigen::Matrix4cd pending = u.matrix();
  // For Clifford gates (notably CNOT) every correction is a Pauli product and
  // is applied directly, so the gadget needs one round. Anything else retries
  // the correction indirectly until the identity branch lands.
  const bool clifford = maps_paulis_to_paulis(pending);

  GadgetTrace trace;
  StateVector cur = psi;
  while (true) {
    if (trace.rounds >= max_rounds) {
      throw std::runtime_error(
          fmt::format("indirect gate did not terminate within {} rounds", max_rounds));
    }
    ++trace.rounds;

    // Ancilla (I ⊗ I ⊗ V)(|Phi_0>_{02} |Phi_0>_{13}); register layout
    // [d0 d1 a0 a1 o0 o1] after the tensor below.
    StateVector anc = StateVector::zeros(4);
    anc = apply_gate(anc, Gate::h(0));
    anc = apply_gate(anc, Gate::cnot(0, 2));
    anc = apply_gate(anc, Gate::h(1));
    anc = apply_gate(anc, Gate::cnot(1, 3));
    anc = apply_gate(anc, Gate::unitary2(2, 3, pending));

    StateVector reg = tensor(cur, anc);
    const std::array<int, 2> bm1 = {0, 2};
    const MeasureResult m1 = measure(reg, MeasurementOp::bell_basis(), bm1, src, "bell-1");
    const std::array<int, 2> bm2 = {1, 3};
    const MeasureResult m2 = measure(m1.state, MeasurementOp::bell_basis(), bm2, src, "bell-2");
    trace.outcomes.push_back(m1.label);
    trace.outcomes.push_back(m2.label);

    const std::array<int, 2> out_q = {4, 5};
    cur = factor_out(m2.state, out_q).kept;

    if (m1.label == 0 && m2.label == 0) break;

    const Eigen::Matrix4cd sigma_pair = kron22(sigma_matrix(m1.label), sigma_matrix(m2.label));
    const Eigen::Matrix4cd correction = pending * sigma_pair * pending.adjoint();
    if (clifford) {
      cur = apply_gate(cur, Gate::unitary2(0, 1, correction));
      break;
    }
    pending = renormalized_unitary(correction);
  }
  trace.final_state = cur;
  trace.frame = PauliString::identity(2);
  return trace;
}

BuObservables bu_observables(const Gate& u) {
  const Eigen::Matrix2cd um = gate_matrix_1q(u);
  const Eigen::Matrix2cd ax = um.adjoint() * sigma_matrix(1) * um;
  const Eigen::Matrix2cd az = um.adjoint() * sigma_matrix(3) * um;
  BuObservables out;
  out.mx = conjugated_axis_observable(ax, 'X').canonical(&out.relabel_x);
  out.mz = conjugated_axis_observable(az, 'Z').canonical(&out.relabel_z);
  return out;
}

MeasurementOp bu_basis(const Eigen::Matrix2cd& a) {
  return MeasurementOp::conjugated_bell_basis(a);
}

GadgetTrace indirect_gate_bu(const StateVector& psi, const Gate& u, OutcomeSource& src,
                             bool track_frame_only) {
  if (psi.n_qubits() != 1) throw std::invalid_argument("data state must be a single qubit");
  const BuObservables obs = bu_observables(u);

  // Register layout: [data, anc0, anc1]; ancilla |Phi_0> on (anc0, anc1).
  StateVector reg = tensor(psi, StateVector::bell(0));
  const std::array<int, 2> pair = {0, 1};
  const MeasureResult rx = measure_observable(reg, obs.mx, pair, src, "bu-x");
  const MeasureResult rz = measure_observable(rx.state, obs.mz, pair, src, "bu-z");

  const int xx_eig = obs.relabel_x ? -rx.label : rx.label;
  const int zz_eig = obs.relabel_z ? -rz.label : rz.label;
  const int j = bell_index_from_eigenvalues(xx_eig, zz_eig);

  GadgetTrace trace;
  trace.outcomes = {j};
  trace.rounds = 1;

  const std::array<int, 1> out_q = {2};
  if (track_frame_only) {
    trace.final_state = factor_out(rz.state, out_q).kept;
    trace.frame = PauliString::single(1, 0, "IXYZ"[j]);
  } else {
    PauliString corr = PauliString::identity(3);
    corr.set_letter(2, "IXYZ"[j]);
    trace.final_state = factor_out(apply_pauli(corr, rz.state), out_q).kept;
    trace.frame = PauliString::identity(1);
  }
  return trace;
}

}  // namespace mqc
