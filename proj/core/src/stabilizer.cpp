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

#include "mqc/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace mqc {

namespace {

// Symplectic bit of generator g at column c; columns run x_0..x_{n-1} then
// z_0..z_{n-1}.
bool column_bit(const PauliString& g, int c) {
  const int n = g.n_qubits;
  return c < n ? ((g.x_mask >> c) & 1u) : ((g.z_mask >> (c - n)) & 1u);
}

std::vector<PauliString> reduce(std::vector<PauliString> rows) {
  if (rows.empty()) return rows;
  const int n = rows[0].n_qubits;
  size_t r = 0;
  for (int c = 0; c < 2 * n && r < rows.size(); ++c) {
    size_t pivot = r;
    while (pivot < rows.size() && !column_bit(rows[pivot], c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (size_t k = 0; k < rows.size(); ++k) {
      if (k != r && column_bit(rows[k], c)) {
        rows[k] = multiply(rows[k], rows[r]);
      }
    }
    ++r;
  }
  rows.resize(r);
  std::sort(rows.begin(), rows.end(), [n](const PauliString& a, const PauliString& b) {
    for (int c = 0; c < 2 * n; ++c) {
      const bool ba = column_bit(a, c), bb = column_bit(b, c);
      if (ba != bb) return ba;  // rows with earlier pivots first
    }
    return false;
  });
  return rows;
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::vector<PauliString> generators)
    : gens_(std::move(generators)) {
  if (gens_.empty()) throw std::invalid_argument("tableau needs at least one generator");
  n_ = gens_[0].n_qubits;
  if (static_cast<int>(gens_.size()) != n_) {
    throw std::invalid_argument(
        fmt::format("{} generators for {} qubits", gens_.size(), n_));
  }
  for (const auto& g : gens_) {
    if (g.n_qubits != n_) throw std::invalid_argument("generator size mismatch");
    if (!g.is_sign_only()) throw std::invalid_argument("generator phase must be ±1");
    if (g.is_identity()) throw std::invalid_argument("identity cannot generate");
  }
  for (size_t i = 0; i < gens_.size(); ++i) {
    for (size_t j = i + 1; j < gens_.size(); ++j) {
      if (!commutes(gens_[i], gens_[j])) {
        throw std::invalid_argument(fmt::format("generators {} and {} anticommute",
                                                gens_[i].str(), gens_[j].str()));
      }
    }
  }
  if (static_cast<int>(reduce(gens_).size()) != n_) {
    throw std::invalid_argument("generators are not independent");
  }
}

StabilizerTableau StabilizerTableau::zero_state(int n) {
  std::vector<PauliString> gens;
  gens.reserve(n);
  for (int q = 0; q < n; ++q) gens.push_back(PauliString::single(n, q, 'Z'));
  return StabilizerTableau(std::move(gens));
}

StabilizerTableau StabilizerTableau::product_state(std::string_view pattern) {
  const int n = static_cast<int>(pattern.size());
  std::vector<PauliString> gens;
  for (int q = 0; q < n; ++q) {
    char letter;
    uint8_t phase = 0;
    switch (pattern[q]) {
      case '0': letter = 'Z'; break;
      case '1': letter = 'Z'; phase = 2; break;
      case '+': letter = 'X'; break;
      case '-': letter = 'X'; phase = 2; break;
      default:
        throw std::invalid_argument(fmt::format("bad pattern character '{}'", pattern[q]));
    }
    PauliString g = PauliString::single(n, q, letter);
    g.phase_exp = phase;
    gens.push_back(g);
  }
  return StabilizerTableau(std::move(gens));
}

StabilizerTableau StabilizerTableau::from_strings(const std::vector<std::string>& lines) {
  std::vector<PauliString> gens;
  gens.reserve(lines.size());
  for (const auto& line : lines) gens.push_back(PauliString::from_string(line));
  return StabilizerTableau(std::move(gens));
}

std::string StabilizerTableau::str() const {
  std::string out;
  for (const auto& g : gens_) {
    out += g.str();
    out.push_back('\n');
  }
  return out;
}

TableauMeasureResult measure_generatorwise(const StabilizerTableau& t, const PauliString& m,
                                           OutcomeSource& src) {
  if (m.n_qubits != t.n_qubits()) throw std::invalid_argument("operand size mismatch");
  if (m.is_identity()) throw std::invalid_argument("cannot measure the identity");
  if (m.phase_exp != 0) throw std::invalid_argument("measured operator must be sign-free");

  std::vector<PauliString> gens = t.generators();
  std::vector<size_t> anti;
  for (size_t k = 0; k < gens.size(); ++k) {
    if (!commutes(gens[k], m)) anti.push_back(k);
  }

  static constexpr std::array<int, 2> kLabels = {+1, -1};
  if (anti.empty()) {
    // m (or -m) is in the group: reduce against the canonical rows.
    std::vector<PauliString> canon = reduce(gens);
    PauliString acc = PauliString::identity(m.n_qubits);
    for (const auto& row : canon) {
      // Pivot column of this row.
      int c = 0;
      while (c < 2 * m.n_qubits && !column_bit(row, c)) ++c;
      PauliString probe = multiply(acc, m);  // letters still to cancel
      if (column_bit(probe, c)) acc = multiply(acc, row);
    }
    if (acc.x_mask != m.x_mask || acc.z_mask != m.z_mask) {
      throw std::logic_error("commuting operator not generated by the stabilizer");
    }
    const int outcome = acc.phase_exp == 0 ? +1 : -1;
    const std::array<double, 2> probs = {outcome == +1 ? 1.0 : 0.0,
                                         outcome == -1 ? 1.0 : 0.0};
    const int pick = src.choose(probs, kLabels, "stabilizer measurement");
    return TableauMeasureResult{kLabels[pick], true, t};
  }

  const std::array<double, 2> probs = {0.5, 0.5};
  const int pick = src.choose(probs, kLabels, "stabilizer measurement");
  const int outcome = kLabels[pick];

  const PauliString n1 = gens[anti[0]];
  for (size_t k = 1; k < anti.size(); ++k) {
    gens[anti[k]] = multiply(n1, gens[anti[k]]);
  }
  PauliString replacement = m;
  replacement.phase_exp = outcome == +1 ? 0 : 2;
  gens[anti[0]] = replacement;
  return TableauMeasureResult{outcome, false, StabilizerTableau(std::move(gens))};
}

StabilizerTableau apply_clifford(const StabilizerTableau& t, const CliffordGate& g) {
  std::vector<PauliString> gens = t.generators();
  for (auto& gen : gens) gen = conjugate(g, gen);
  return StabilizerTableau(std::move(gens));
}

std::vector<PauliString> canonical_generators(const StabilizerTableau& t) {
  return reduce(t.generators());
}

bool same_stabilizer_state(const StabilizerTableau& a, const StabilizerTableau& b) {
  if (a.n_qubits() != b.n_qubits()) return false;
  return canonical_generators(a) == canonical_generators(b);
}

StateVector to_statevector(const StabilizerTableau& t) {
  const int n = t.n_qubits();
  if (n > 12) throw std::invalid_argument("to_statevector supports at most 12 qubits");

  // Project a basis state through (I+g)/2 for every generator; for a valid
  // tableau some basis state survives with weight >= 2^-n.
  for (size_t start = 0; start < (size_t{1} << n); ++start) {
    std::vector<cd> v(size_t{1} << n, cd(0.0, 0.0));
    v[start] = 1.0;
    for (const auto& g : t.generators()) {
      // v <- (v + g v)/2, computed on raw vectors.
      size_t xflip = 0, zbitsm = 0;
      for (int q = 0; q < n; ++q) {
        if ((g.x_mask >> q) & 1u) xflip |= size_t{1} << (n - 1 - q);
        if ((g.z_mask >> q) & 1u) zbitsm |= size_t{1} << (n - 1 - q);
      }
      const int y_count = std::popcount(g.x_mask & g.z_mask);
      cd base(1.0, 0.0);
      const cd iu(0.0, 1.0);
      for (int k = 0; k < ((g.phase_exp + y_count) & 3); ++k) base *= iu;
      std::vector<cd> gv(v.size(), cd(0.0, 0.0));
      for (size_t idx = 0; idx < v.size(); ++idx) {
        const cd f = (std::popcount(idx & zbitsm) & 1) ? -base : base;
        gv[idx ^ xflip] = f * v[idx];
      }
      for (size_t idx = 0; idx < v.size(); ++idx) v[idx] = 0.5 * (v[idx] + gv[idx]);
    }
    double nrm2 = 0.0;
    for (const cd& x : v) nrm2 += std::norm(x);
    if (nrm2 > 1e-9) {
      const double nrm = std::sqrt(nrm2);
      for (cd& x : v) x /= nrm;
      return canonical_phase(StateVector::from_amplitudes(n, std::move(v)));
    }
  }
  throw std::runtime_error("inconsistent tableau: projector product vanished");
}

}  // namespace mqc
