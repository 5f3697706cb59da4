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

// Audit records: one per mutation of a text or a label. The log is enough to
// rebuild a transformed corpus without touching the random streams.
//
// What each tier records:
//   tier      op                        index            original / emitted
//   bt        replace:<pivot>           0                whole text before/after
//   bt        augment:<pivot>           0                source text / new text
//   ner       PER|ORG|LOC|GPE           byte offset      surface / tag
//   dp-label  flip                      0                "0"|"1" / "1"|"0"
//   dp-char   insert|delete|substitute  character index  char / emitted chars
//
// For bt augment records `id` is the id of the new example; the source id is
// the part before the "#bt-" suffix.

#ifndef TEXTVEIL_AUDIT_H_
#define TEXTVEIL_AUDIT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace textveil {

inline constexpr std::string_view kTierBt = "bt";
inline constexpr std::string_view kTierNer = "ner";
inline constexpr std::string_view kTierDpLabel = "dp-label";
inline constexpr std::string_view kTierDpChar = "dp-char";

struct AuditRecord {
  std::string id;
  std::string tier;
  std::string op;
  uint64_t index = 0;
  std::string original;
  std::string emitted;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

using AuditLog = std::vector<AuditRecord>;

std::string AuditToJsonl(std::span<const AuditRecord> records);
absl::StatusOr<AuditLog> ParseAuditJsonl(std::string_view contents);
absl::StatusOr<AuditLog> LoadAudit(const std::filesystem::path& path);

}  // namespace textveil

#endif  // TEXTVEIL_AUDIT_H_
