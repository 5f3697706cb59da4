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

// Writes the built-in gazetteer and pivot lexicons as data files:
//   export_resources <dir>
// produces <dir>/gazetteer.jsonl and <dir>/lexicons/<pivot>.json.

#include <filesystem>
#include <iostream>

#include "textveil/backtranslation.h"
#include "textveil/io.h"
#include "textveil/ner_mask.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: export_resources <dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  absl::Status status = textveil::WriteFile(
      dir / "gazetteer.jsonl", textveil::Gazetteer::Default().ToJsonl());
  for (const textveil::PivotLexicon& lexicon :
       textveil::PivotLexicon::AllBuiltins()) {
    if (!status.ok()) break;
    status = textveil::WriteFile(dir / "lexicons" / (lexicon.name() + ".json"),
                                 lexicon.ToJson());
  }
  if (!status.ok()) {
    std::cerr << "error: " << status.message() << "\n";
    return 2;
  }
  return 0;
}
