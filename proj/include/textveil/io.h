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

// File helpers. I/O failures are reported as kNotFound (missing input) or
// kUnavailable (anything else the filesystem refused); every other status
// code produced by this library denotes a validation problem.

#ifndef TEXTVEIL_IO_H_
#define TEXTVEIL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace textveil {

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place, so a
// failed write never leaves a truncated file behind.
absl::Status WriteFile(const std::filesystem::path& path,
                       std::string_view contents);

absl::Status EnsureDirectory(const std::filesystem::path& dir);

bool IsIoError(const absl::Status& status);

}  // namespace textveil

#endif  // TEXTVEIL_IO_H_
