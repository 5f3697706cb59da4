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

// Client for an external machine-translation service.
//
// Wire contract:
//   POST <base_url>/translate
//   request:  {"text": string, "source": string, "target": string}
//   response: {"text": string}
//
// Every successful response is cached by (text, source, target), in memory
// and, when cache_path is set, appended to a JSON Lines file
//   {"text": ..., "source": ..., "target": ..., "result": ...}
// that is read back on construction, so a re-run is served offline.

#ifndef TEXTVEIL_REMOTE_TRANSLATOR_H_
#define TEXTVEIL_REMOTE_TRANSLATOR_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "absl/status/statusor.h"
#include "textveil/backtranslation.h"

namespace textveil {

struct RemoteTranslatorOptions {
  std::string base_url;  // e.g. "http://localhost:8080"
  int timeout_ms = 10000;
  int retries = 2;  // attempts after the first failure
  std::filesystem::path cache_path;  // empty: in-memory cache only
};

class RemoteTranslator : public Translator {
 public:
  static absl::StatusOr<std::unique_ptr<RemoteTranslator>> Create(
      RemoteTranslatorOptions options);

  absl::StatusOr<std::string> Translate(std::string_view text,
                                        std::string_view source,
                                        std::string_view target) override;

  size_t cache_size() const;
  // Number of HTTP requests issued, including retries.
  size_t requests_sent() const;

 private:
  using Key = std::tuple<std::string, std::string, std::string>;

  explicit RemoteTranslator(RemoteTranslatorOptions options);
  absl::StatusOr<std::string> Fetch(std::string_view text,
                                    std::string_view source,
                                    std::string_view target);

  RemoteTranslatorOptions options_;
  mutable std::mutex mu_;
  std::map<Key, std::string> cache_;
  size_t requests_sent_ = 0;
};

}  // namespace textveil

#endif  // TEXTVEIL_REMOTE_TRANSLATOR_H_
