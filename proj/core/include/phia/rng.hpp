// Copyright 2026 The PHIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHIA_RNG_HPP_
#define PHIA_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace phia {

/// What a random stream is used for. Each (run seed, purpose) pair gets its
/// own independent Philox stream, so adding draws for one purpose never
/// perturbs another.
enum class StreamPurpose : std::uint32_t {
  kInit = 1,
  kMomentum = 2,
  kAccept = 3,
  kSweepOrder = 4,
  kFlip = 5,
  kGenerator = 6,
  kSeedDerivation = 7,
};

/// Philox4x32-10 counter-based generator. Satisfies
/// UniformRandomBitGenerator with 64-bit output.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);
  CounterRng(std::uint64_t seed, StreamPurpose purpose)
      : CounterRng(seed, static_cast<std::uint64_t>(purpose)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal draw (Box-Muller; the second variate is cached).
  double normal();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int next_word_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finaliser; used to derive child seeds deterministically.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace phia

#endif  // PHIA_RNG_HPP_
