//
// Copyright 2026 The Textveil Authors
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
//

// Deterministic random streams.
//
// Every random decision in the pipeline is drawn from a SplitMix64 stream
// derived from (global seed, example id, tier tag). Streams are plain values:
// copying one forks it, and no state is shared between examples, so results
// do not depend on processing order or the number of worker threads.

#ifndef TEXTVEIL_RNG_H_
#define TEXTVEIL_RNG_H_

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace textveil {

inline constexpr uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001B3ULL;

// FNV-1a over raw bytes. `basis` allows incremental hashing of several
// fragments.
constexpr uint64_t Fnv1a64(std::string_view bytes,
                           uint64_t basis = kFnvOffsetBasis) {
  uint64_t hash = basis;
  for (char c : bytes) {
    hash ^= static_cast<uint8_t>(c);
    hash *= kFnvPrime;
  }
  return hash;
}

// Renders a 64-bit value as 16 lowercase hex digits.
std::string HexDigest(uint64_t value);

// A probability in [0, 1]. Construct through Create() to validate.
class Probability {
 public:
  static absl::StatusOr<Probability> Create(double p);

  constexpr Probability() = default;
  constexpr double value() const { return value_; }

 private:
  constexpr explicit Probability(double p) : value_(p) {}
  double value_ = 0.0;
};

// Purposes a stream may be derived for. Each tag yields an independent
// stream for the same example.
enum class StreamTag { kBt, kNer, kDpLabel, kDpChar, kSplit, kTrain };

std::string_view StreamTagName(StreamTag tag);
absl::StatusOr<StreamTag> ParseStreamTag(std::string_view name);

// SplitMix64 generator.
class RngStream {
 public:
  constexpr explicit RngStream(uint64_t state) : state_(state) {}

  constexpr uint64_t state() const { return state_; }

  constexpr uint64_t NextU64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // True with probability p, comparing a 53-bit uniform fraction against p.
  bool Bernoulli(Probability p);

  // Checked variant for raw doubles; fails if p is outside [0, 1].
  absl::StatusOr<bool> Bernoulli(double p);

  // Uniform integer in [0, n) by rejection sampling. Fails if n == 0.
  absl::StatusOr<uint64_t> UniformBelow(uint64_t n);

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  uint64_t state_;
};

// Initial state = FNV-1a-64(example_id + ":" + tag) XOR global_seed.
RngStream DeriveStream(uint64_t global_seed, std::string_view example_id,
                       StreamTag tag);

// Same, with the tag given by name; unknown names are configuration errors.
absl::StatusOr<RngStream> DeriveStream(uint64_t global_seed,
                                       std::string_view example_id,
                                       std::string_view tag_name);

namespace internal {

// The rejection rule behind UniformBelow, generic over the word width so it
// can be checked exhaustively on small words. Returns x mod n if x is below
// the largest multiple of n representable in 2^bits, nullopt otherwise.
template <std::unsigned_integral Word>
constexpr std::optional<Word> AcceptUniform(Word x, Word n) {
  // 2^bits mod n, computed without overflow.
  const Word remainder = static_cast<Word>(static_cast<Word>(0 - n) % n);
  if (remainder != 0) {
    const Word threshold = static_cast<Word>(0 - remainder);
    if (x >= threshold) return std::nullopt;
  }
  return static_cast<Word>(x % n);
}

}  // namespace internal
}  // namespace textveil

#endif  // TEXTVEIL_RNG_H_
