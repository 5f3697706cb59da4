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

#include "textveil/remote_translator.h"

#include <fstream>
#include <memory>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "nlohmann/json.hpp"
#include "textveil/io.h"

namespace textveil {

RemoteTranslator::RemoteTranslator(RemoteTranslatorOptions options)
    : options_(std::move(options)) {}

absl::StatusOr<std::unique_ptr<RemoteTranslator>> RemoteTranslator::Create(
    RemoteTranslatorOptions options) {
  if (options.base_url.empty()) {
    return absl::InvalidArgumentError("remote translator needs a base_url");
  }
  if (options.timeout_ms <= 0 || options.retries < 0) {
    return absl::InvalidArgumentError(
        "remote translator timeout must be positive and retries "
        "non-negative");
  }
  auto translator =
      std::unique_ptr<RemoteTranslator>(new RemoteTranslator(options));
  if (options.cache_path.empty() ||
      !std::filesystem::exists(options.cache_path)) {
    return translator;
  }
  absl::StatusOr<std::string> contents = ReadFile(options.cache_path);
  if (!contents.ok()) return contents.status();
  size_t pos = 0;
  while (pos < contents->size()) {
    size_t end = contents->find('\n', pos);
    if (end == std::string::npos) end = contents->size();
    const std::string line = contents->substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const nlohmann::json entry =
        nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (entry.is_discarded() || !entry.is_object()) {
      return absl::InvalidArgumentError(absl::StrCat(
          options.cache_path.string(), ": malformed cache entry"));
    }
    translator->cache_[{entry.value("text", ""), entry.value("source", ""),
                        entry.value("target", "")}] =
        entry.value("result", "");
  }
  return translator;
}

absl::StatusOr<std::string> RemoteTranslator::Translate(
    std::string_view text, std::string_view source, std::string_view target) {
  Key key{std::string(text), std::string(source), std::string(target)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  absl::StatusOr<std::string> result = Fetch(text, source, target);
  if (!result.ok()) return result.status();

  std::lock_guard<std::mutex> lock(mu_);
  // A concurrent caller may have stored the same key; keep the first answer.
  auto [it, inserted] = cache_.emplace(std::move(key), *result);
  if (inserted && !options_.cache_path.empty()) {
    nlohmann::ordered_json entry;
    entry["text"] = std::get<0>(it->first);
    entry["source"] = std::get<1>(it->first);
    entry["target"] = std::get<2>(it->first);
    entry["result"] = it->second;
    std::ofstream out(options_.cache_path, std::ios::app | std::ios::binary);
    out << entry.dump() << '\n';
    if (!out) {
      return absl::UnavailableError(absl::StrCat(
          "cannot append to translation cache ",
          options_.cache_path.string()));
    }
  }
  return it->second;
}

absl::StatusOr<std::string> RemoteTranslator::Fetch(std::string_view text,
                                                    std::string_view source,
                                                    std::string_view target) {
  httplib::Client client(options_.base_url);
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  nlohmann::json request;
  request["text"] = text;
  request["source"] = source;
  request["target"] = target;
  const std::string body = request.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++requests_sent_;
    }
    httplib::Result response =
        client.Post("/translate", body, "application/json");
    if (!response) {
      last_error = httplib::to_string(response.error());
      continue;
    }
    if (response->status != 200) {
      last_error = absl::StrCat("HTTP ", response->status);
      continue;
    }
    const nlohmann::json reply = nlohmann::json::parse(
        response->body, nullptr, /*allow_exceptions=*/false);
    if (reply.is_discarded() || !reply.is_object() ||
        !reply.contains("text") || !reply["text"].is_string()) {
      return absl::InvalidArgumentError(
          "translation service replied without a string \"text\" field");
    }
    return reply["text"].get<std::string>();
  }
  return absl::UnavailableError(
      absl::StrCat("translation service at ", options_.base_url,
                   " failed after ", options_.retries + 1,
                   " attempt(s): ", last_error));
}

size_t RemoteTranslator::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

size_t RemoteTranslator::requests_sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_sent_;
}

}  // namespace textveil
