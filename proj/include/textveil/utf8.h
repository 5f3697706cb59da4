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

// Minimal UTF-8 utilities shared by the tokenizers and the noise injector.

#ifndef TEXTVEIL_UTF8_H_
#define TEXTVEIL_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace textveil::utf8 {

// One decoded character. Malformed bytes decode to U+FFFD with length 1 so
// that the original bytes can always be reproduced from (offset, length).
struct CodePoint {
  char32_t value;
  size_t offset;
  size_t length;
};

std::vector<CodePoint> Decode(std::string_view text);

bool IsValid(std::string_view text);

// True if `offset` is 0, text.size(), or the first byte of a character.
bool IsBoundary(std::string_view text, size_t offset);

bool IsWhitespace(char32_t c);

// ASCII and Latin-1 punctuation plus the General Punctuation and CJK
// punctuation blocks. Not a full Unicode category table.
bool IsPunctuation(char32_t c);

void AppendCodePoint(char32_t c, std::string* out);

// Lowercases ASCII letters only; other bytes are copied unchanged.
std::string AsciiLower(std::string_view text);

}  // namespace textveil::utf8

#endif  // TEXTVEIL_UTF8_H_
