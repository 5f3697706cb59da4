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

// Built-in word lists: the default gazetteer, the synonym groups behind the
// five shipped pivot lexicons, and the synthetic corpus vocabulary. The files
// under data/ are exports of these tables (see tools/export_resources.cc).

#ifndef TEXTVEIL_RESOURCES_H_
#define TEXTVEIL_RESOURCES_H_

#include <span>
#include <string_view>
#include <vector>

namespace textveil::resources {

struct EntityEntry {
  std::string_view surface;
  std::string_view category;  // PER, ORG, LOC or GPE
};

std::span<const EntityEntry> DefaultEntities();

// A set of interchangeable words. A pivot lexicon that covers the group
// collapses all members onto one of them.
struct SynonymGroup {
  std::vector<std::string_view> words;
  bool persuasion_marker;
};

std::span<const SynonymGroup> SynonymGroups();

// Names of the shipped pivot lexicons, in report order.
std::span<const std::string_view> PivotNames();

}  // namespace textveil::resources

#endif  // TEXTVEIL_RESOURCES_H_
