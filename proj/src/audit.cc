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

#include "textveil/audit.h"

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "textveil/io.h"
#include "textveil/sv.h"

namespace textveil {

std::string AuditToJsonl(std::span<const AuditRecord> records) {
  std::string out;
  for (const AuditRecord& record : records) {
    nlohmann::ordered_json line;
    line["id"] = record.id;
    line["tier"] = record.tier;
    line["op"] = record.op;
    line["index"] = record.index;
    line["original"] = record.original;
    line["emitted"] = record.emitted;
    out += line.dump(-1, ' ', /*ensure_ascii=*/false,
                     nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

absl::StatusOr<AuditLog> ParseAuditJsonl(std::string_view contents) {
  AuditLog log;
  size_t pos = 0;
  size_t line_number = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const nlohmann::json object =
        nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    const auto bad = [line_number](std::string_view what) {
      return absl::InvalidArgumentError(
          absl::StrCat("audit line ", line_number, ": ", AsAbsl(what)));
    };
    if (object.is_discarded() || !object.is_object()) {
      return bad("not a JSON object");
    }
    AuditRecord record;
    for (auto [key, field] :
         {std::pair{"id", &record.id}, std::pair{"tier", &record.tier},
          std::pair{"op", &record.op}, std::pair{"original", &record.original},
          std::pair{"emitted", &record.emitted}}) {
      auto it = object.find(key);
      if (it == object.end() || !it->is_string()) {
        return bad(absl::StrCat("missing string \"", key, "\""));
      }
      *field = it->get<std::string>();
    }
    auto index = object.find("index");
    if (index == object.end() || !index->is_number_unsigned()) {
      return bad("missing non-negative integer \"index\"");
    }
    record.index = index->get<uint64_t>();
    log.push_back(std::move(record));
  }
  return log;
}

absl::StatusOr<AuditLog> LoadAudit(const std::filesystem::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseAuditJsonl(*contents);
}

}  // namespace textveil
