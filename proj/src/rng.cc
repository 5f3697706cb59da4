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

#include "textveil/rng.h"

#include <array>
#include <cstdio>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "textveil/sv.h"

namespace textveil {
namespace {

constexpr std::array<std::pair<StreamTag, std::string_view>, 6> kTagNames = {{
    {StreamTag::kBt, "bt"},
    {StreamTag::kNer, "ner"},
    {StreamTag::kDpLabel, "dp-label"},
    {StreamTag::kDpChar, "dp-char"},
    {StreamTag::kSplit, "split"},
    {StreamTag::kTrain, "train"},
}};

constexpr double kTwoPow53 = 9007199254740992.0;

}  // namespace

std::string HexDigest(uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return std::string(buffer, 16);
}

absl::StatusOr<Probability> Probability::Create(double p) {
  // Written so that NaN fails too.
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("probability must lie in [0, 1], got ", p));
  }
  return Probability(p);
}

std::string_view StreamTagName(StreamTag tag) {
  for (const auto& [value, name] : kTagNames) {
    if (value == tag) return name;
  }
  return "";
}

absl::StatusOr<StreamTag> ParseStreamTag(std::string_view name) {
  for (const auto& [value, tag_name] : kTagNames) {
    if (tag_name == name) return value;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown stream tag \"", AsAbsl(name), "\""));
}

bool RngStream::Bernoulli(Probability p) {
  const uint64_t x = NextU64();
  return static_cast<double>(x >> 11) / kTwoPow53 < p.value();
}

absl::StatusOr<bool> RngStream::Bernoulli(double p) {
  absl::StatusOr<Probability> checked = Probability::Create(p);
  if (!checked.ok()) return checked.status();
  return Bernoulli(*checked);
}

absl::StatusOr<uint64_t> RngStream::UniformBelow(uint64_t n) {
  if (n == 0) {
    return absl::InvalidArgumentError("UniformBelow: n must be positive");
  }
  while (true) {
    if (std::optional<uint64_t> value = internal::AcceptUniform(NextU64(), n)) {
      return *value;
    }
  }
}

RngStream DeriveStream(uint64_t global_seed, std::string_view example_id,
                       StreamTag tag) {
  uint64_t hash = Fnv1a64(example_id);
  hash = Fnv1a64(":", hash);
  hash = Fnv1a64(StreamTagName(tag), hash);
  return RngStream(hash ^ global_seed);
}

absl::StatusOr<RngStream> DeriveStream(uint64_t global_seed,
                                       std::string_view example_id,
                                       std::string_view tag_name) {
  absl::StatusOr<StreamTag> tag = ParseStreamTag(tag_name);
  if (!tag.ok()) return tag.status();
  return DeriveStream(global_seed, example_id, *tag);
}

}  // namespace textveil
