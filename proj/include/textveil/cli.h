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

// The textveil command line:
//
//   ingest --input <jsonl> --ratios 0.6,0.2,0.2 --seed <u64> --out <dir>
//   synth --n <int> --seed <u64> --out <dir>
//   transform --corpus <dir> --config <json> --out <dir>
//   train --corpus <dir> --seed <u64> --model <file>
//   eval --model <file> --corpus <dir> --split dev|test --gazetteer <file>
//   sweep --corpus <dir> --rates 0.05,0.10,0.15,0.20 --tiers dp,combined
//         --seed <u64> --out report.csv
//   report --input report.csv [--out table.txt]
//   replay --corpus <dir> --audit <file> --out <dir>
//
// Exit status: 0 success, 1 usage or validation error, 2 I/O error.

#ifndef TEXTVEIL_CLI_H_
#define TEXTVEIL_CLI_H_

#include <ostream>

namespace textveil {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

// Results go to `out`, diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace textveil

#endif  // TEXTVEIL_CLI_H_
