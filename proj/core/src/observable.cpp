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

#include "mqc/observable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "mqc/statevector.hpp"

namespace mqc {

namespace {

std::string letters_of(const PauliString& p) {
  std::string s;
  for (int q = 0; q < p.n_qubits; ++q) s.push_back(p.letter(q));
  return s;
}

}  // namespace

Observable::Observable(int arity_in, std::vector<Term> terms_in)
    : arity(arity_in), terms(std::move(terms_in)) {
  if (terms.empty()) throw std::invalid_argument("observable needs at least one term");
  double norm2 = 0.0;
  for (const auto& t : terms) {
    if (t.pauli.n_qubits != arity) {
      throw std::invalid_argument("observable term arity mismatch");
    }
    if (t.pauli.phase_exp != 0) {
      throw std::invalid_argument("observable terms must be sign-free Pauli strings");
    }
    if (t.pauli.is_identity()) {
      throw std::invalid_argument("observable terms must be non-identity");
    }
    norm2 += t.coeff * t.coeff;
  }
  if (std::abs(norm2 - 1.0) > 1e-9) {
    throw std::invalid_argument(fmt::format("observable coefficients have norm {}", norm2));
  }
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (commutes(terms[i].pauli, terms[j].pauli)) {
        throw std::invalid_argument("observable terms must pairwise anticommute");
      }
    }
  }
}

Observable Observable::pauli(const PauliString& p) {
  if (!p.is_sign_only()) throw std::invalid_argument("observable must be Hermitian");
  PauliString q = p;
  const double c = (p.phase_exp == 2) ? -1.0 : 1.0;
  q.phase_exp = 0;
  return Observable(p.n_qubits, {Term{c, q}});
}

Observable Observable::pauli(std::string_view letters) {
  return pauli(PauliString::from_string(letters));
}

Observable Observable::axis(double c1, const PauliString& p1, double c2, const PauliString& p2) {
  return Observable(p1.n_qubits, {Term{c1, p1}, Term{c2, p2}});
}

Eigen::MatrixXcd Observable::matrix() const {
  Eigen::MatrixXcd m = terms[0].coeff * terms[0].pauli.to_matrix();
  for (size_t k = 1; k < terms.size(); ++k) {
    m += terms[k].coeff * terms[k].pauli.to_matrix();
  }
  return m;
}

std::string Observable::str() const {
  if (terms.size() == 1 && std::abs(terms[0].coeff - 1.0) < 1e-12) {
    return letters_of(terms[0].pauli);
  }
  if (terms.size() == 1) {
    return fmt::format("{:+.5g}*{}", terms[0].coeff, letters_of(terms[0].pauli));
  }
  std::string out;
  for (const auto& t : terms) {
    out += fmt::format("{}{:.5g}*{}", t.coeff < 0 ? "-" : (out.empty() ? "" : "+"),
                       std::abs(t.coeff), letters_of(t.pauli));
  }
  return out;
}

Observable Observable::conjugated_by(const PauliString& f) const {
  if (f.n_qubits != arity) throw std::invalid_argument("frame arity mismatch");
  std::vector<Term> out = terms;
  for (auto& t : out) {
    if (!commutes(f, t.pauli)) t.coeff = -t.coeff;
  }
  return Observable(arity, std::move(out));
}

Observable Observable::swapped_factors() const {
  if (arity != 2) throw std::invalid_argument("swapped_factors requires arity 2");
  std::vector<Term> out = terms;
  for (auto& t : out) {
    PauliString p = PauliString::identity(2);
    p.set_letter(0, t.pauli.letter(1));
    p.set_letter(1, t.pauli.letter(0));
    t.pauli = p;
  }
  return Observable(arity, std::move(out));
}

Observable Observable::canonical(bool* flipped) const {
  std::vector<Term> out = terms;
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return letters_of(a.pauli) < letters_of(b.pauli);
  });
  bool flip = out[0].coeff < 0;
  if (flip) {
    for (auto& t : out) t.coeff = -t.coeff;
  }
  if (flipped) *flipped = flip;
  return Observable(arity, std::move(out));
}

bool same_operator(const Observable& a, const Observable& b, double tol) {
  if (a.arity != b.arity || a.terms.size() != b.terms.size()) return false;
  auto ca = a, cb = b;
  std::sort(ca.terms.begin(), ca.terms.end(), [](const auto& x, const auto& y) {
    return letters_of(x.pauli) < letters_of(y.pauli);
  });
  std::sort(cb.terms.begin(), cb.terms.end(), [](const auto& x, const auto& y) {
    return letters_of(x.pauli) < letters_of(y.pauli);
  });
  for (size_t k = 0; k < ca.terms.size(); ++k) {
    if (ca.terms[k].pauli != cb.terms[k].pauli) return false;
    if (std::abs(ca.terms[k].coeff - cb.terms[k].coeff) > tol) return false;
  }
  return true;
}

bool equivalent_observable(const Observable& a, const Observable& b, double tol) {
  if (a.arity != b.arity) return false;
  const int frames = 1 << (2 * a.arity);  // all sign-free Paulis on the targets
  for (int order = 0; order < (a.arity == 2 ? 2 : 1); ++order) {
    const Observable base = order ? b.swapped_factors() : b;
    for (int f = 0; f < frames; ++f) {
      PauliString frame = PauliString::identity(a.arity);
      frame.x_mask = static_cast<uint32_t>(f & ((1 << a.arity) - 1));
      frame.z_mask = static_cast<uint32_t>(f >> a.arity);
      const Observable conj = base.conjugated_by(frame);
      for (double sign : {1.0, -1.0}) {
        Observable probe = conj;
        for (auto& t : probe.terms) t.coeff *= sign;
        if (same_operator(a, probe, tol)) return true;
      }
    }
  }
  return false;
}

MeasureResult measure_observable(const StateVector& s, const Observable& m,
                                 std::span<const int> targets, OutcomeSource& src,
                                 const char* what) {
  if (m.is_single_pauli()) {
    PauliString p = m.terms[0].pauli;
    p.phase_exp = m.terms[0].coeff < 0 ? 2 : 0;
    return measure_pauli_observable(s, p, targets, src, what);
  }
  if (static_cast<int>(targets.size()) != m.arity) {
    throw std::invalid_argument("observable target count mismatch");
  }
  // M|psi> as a weighted sum of Pauli applications over the full register.
  std::vector<cd> acc(s.dim(), cd(0.0, 0.0));
  for (const auto& t : m.terms) {
    PauliString full = PauliString::identity(s.n_qubits());
    for (int i = 0; i < m.arity; ++i) full.set_letter(targets[i], t.pauli.letter(i));
    const StateVector part = apply_pauli(full, s);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += t.coeff * part.amplitudes()[i];
  }

  cd expectation = 0.0;
  for (size_t i = 0; i < acc.size(); ++i) {
    expectation += std::conj(s.amplitudes()[i]) * acc[i];
  }
  const double e = std::clamp(expectation.real(), -1.0, 1.0);
  const std::array<double, 2> probs = {(1.0 + e) / 2.0, (1.0 - e) / 2.0};
  const std::array<int, 2> labels = {+1, -1};
  const int pick = src.choose(probs, labels, what);
  const double sign = pick == 0 ? 1.0 : -1.0;
  const double prob = probs[pick];

  std::vector<cd> out(s.dim());
  const double scale = 0.5 / std::sqrt(prob);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = scale * (s.amplitudes()[i] + sign * acc[i]);
  }
  return MeasureResult{labels[pick], prob,
                       StateVector::from_amplitudes(s.n_qubits(), std::move(out))};
}

}  // namespace mqc
