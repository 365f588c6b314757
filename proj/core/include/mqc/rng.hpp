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

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqc {

/// Seeded generator. Uniform doubles are derived from raw mt19937_64 words so
/// that identical seeds reproduce identical outcome sequences bit for bit,
/// independent of the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  int uniform_int(int n) {  // in [0, n)
    return static_cast<int>(gen_() % static_cast<uint64_t>(n));
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Raised when a forced measurement outcome has (near-)zero probability.
struct ImpossibleOutcome : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Supplies measurement outcomes: a forced prefix consumed in order, then
/// Born-rule sampling from the attached generator. Forced values are matched
/// against the measurement's outcome labels (e.g. ±1 for observables, 0..3
/// for a Bell measurement).
class OutcomeSource {
 public:
  explicit OutcomeSource(Rng& rng) : rng_(&rng) {}
  OutcomeSource(Rng& rng, std::vector<int> forced)
      : rng_(&rng), forced_(forced.begin(), forced.end()) {}

  static constexpr double kMinProbability = 1e-12;

  bool has_forced() const { return !forced_.empty(); }
  size_t forced_remaining() const { return forced_.size(); }

  /// Picks a branch index. Every measurement, including a deterministic one,
  /// consumes one forced entry when a forced prefix is active; deterministic
  /// branches never consume randomness.
  int choose(std::span<const double> probs, std::span<const int> labels,
             const char* what = "measurement") {
    if (!forced_.empty()) {
      const int want = forced_.front();
      forced_.pop_front();
      for (size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == want) {
          if (probs[k] <= kMinProbability) {
            throw ImpossibleOutcome(std::string(what) + ": forced outcome " +
                                    std::to_string(want) + " has probability " +
                                    std::to_string(probs[k]));
          }
          return static_cast<int>(k);
        }
      }
      throw ImpossibleOutcome(std::string(what) + ": forced outcome " +
                              std::to_string(want) + " is not a label of this measurement");
    }
    for (size_t k = 0; k < probs.size(); ++k) {
      if (probs[k] > 1.0 - kMinProbability) return static_cast<int>(k);
    }
    double u = rng_->uniform01();
    double acc = 0.0;
    for (size_t k = 0; k + 1 < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
  }

  Rng& rng() { return *rng_; }

 private:
  Rng* rng_;
  std::deque<int> forced_;
};

}  // namespace mqc
