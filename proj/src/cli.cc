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

#include "textveil/cli.h"

#include <cstdint>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"
#include "textveil/corpus.h"
#include "textveil/eval.h"
#include "textveil/io.h"
#include "textveil/ner_mask.h"
#include "textveil/pipeline.h"
#include "textveil/rng.h"
#include "textveil/sv.h"
#include "textveil/sweep.h"

namespace textveil {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

absl::StatusOr<std::vector<double>> ParseFractions(std::string_view list,
                                                   std::string_view flag) {
  std::vector<double> values;
  for (absl::string_view item : absl::StrSplit(AsAbsl(list), ',')) {
    double value = 0;
    if (!absl::SimpleAtod(item, &value) || !(value >= 0.0 && value <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat(AsAbsl(flag), ": \"", item,
                       "\" is not a number in [0, 1]"));
    }
    values.push_back(value);
  }
  return values;
}

absl::Status RefuseOverwrite(const fs::path& input, const fs::path& out) {
  std::error_code ec;
  if (fs::exists(out, ec) && fs::equivalent(input, out, ec)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--out must differ from the input (", out.string(), ")"));
  }
  return absl::OkStatus();
}

absl::Status WriteJson(const fs::path& path, const ordered_json& value) {
  return WriteFile(path, value.dump(2) + "\n");
}

uint64_t SeedOrDefault(const CLI::Option* option, uint64_t seed,
                       const Streams& io) {
  if (option->count() == 0) {
    io.err << "warning: --seed not given, using 0\n";
    return 0;
  }
  return seed;
}

struct IngestArgs {
  std::string input;
  std::string ratios = "0.6,0.2,0.2";
  uint64_t seed = 0;
  std::string out;
  CLI::Option* seed_option = nullptr;
};

absl::StatusOr<SplitRatios> ParseRatios(std::string_view text) {
  absl::StatusOr<std::vector<double>> values =
      ParseFractions(text, "--ratios");
  if (!values.ok()) return values.status();
  if (values->size() != 3) {
    return absl::InvalidArgumentError(
        "--ratios needs three comma-separated values (train,dev,test)");
  }
  return SplitRatios::Create((*values)[0], (*values)[1], (*values)[2]);
}

absl::Status Ingest(const IngestArgs& args, const Streams& io) {
  const uint64_t seed = SeedOrDefault(args.seed_option, args.seed, io);
  absl::StatusOr<SplitRatios> ratios = ParseRatios(args.ratios);
  if (!ratios.ok()) return ratios.status();
  absl::StatusOr<std::string> raw = ReadFile(args.input);
  if (!raw.ok()) return raw.status();
  absl::StatusOr<std::vector<LabeledExample>> examples = ParseJsonl(*raw);
  if (!examples.ok()) {
    return absl::Status(examples.status().code(),
                        absl::StrCat(args.input, ": ",
                                     examples.status().message()));
  }
  absl::StatusOr<SplitCorpus> corpus =
      SplitExamples(*std::move(examples), *ratios, seed);
  if (!corpus.ok()) return corpus.status();
  return SaveSplitCorpus(args.out, *corpus,
                         {{"verb", "ingest"},
                          {"input", args.input},
                          {"input_digest", HexDigest(Fnv1a64(*raw))}});
}

struct SynthArgs {
  size_t n = 0;
  uint64_t seed = 0;
  std::string out;
  CLI::Option* seed_option = nullptr;
};

absl::Status Synth(const SynthArgs& args, const Streams& io) {
  const uint64_t seed = SeedOrDefault(args.seed_option, args.seed, io);
  absl::StatusOr<std::vector<LabeledExample>> examples =
      GenerateSynthetic(args.n, seed);
  if (!examples.ok()) return examples.status();
  absl::StatusOr<SplitCorpus> corpus =
      SplitExamples(*std::move(examples), SplitRatios(), seed);
  if (!corpus.ok()) return corpus.status();
  return SaveSplitCorpus(args.out, *corpus,
                         {{"verb", "synth"}, {"n", args.n}});
}

struct TransformArgs {
  std::string corpus;
  std::string config;
  std::string out;
  uint64_t seed = 0;
  CLI::Option* seed_option = nullptr;
  int workers = 1;
};

absl::Status Transform(const TransformArgs& args, const Streams& io) {
  if (absl::Status s = RefuseOverwrite(args.corpus, args.out); !s.ok()) {
    return s;
  }
  absl::StatusOr<std::string> raw = ReadFile(args.config);
  if (!raw.ok()) return raw.status();
  const json root = json::parse(*raw, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(args.config, ": not valid JSON"));
  }
  absl::StatusOr<TransformConfig> cfg =
      TransformConfig::FromJson(root, fs::path(args.config).parent_path());
  if (!cfg.ok()) return cfg.status();
  if (args.seed_option->count() > 0) {
    cfg->seed = args.seed;
  } else if (!root.is_object() || !root.contains("seed")) {
    io.err << "warning: no seed in config and --seed not given, using 0\n";
  }
  // Resources first, so a bad path fails before the corpus is touched.
  absl::StatusOr<TransformResources> resources = LoadResources(*cfg);
  if (!resources.ok()) return resources.status();
  absl::StatusOr<SplitCorpus> corpus = LoadSplitCorpus(args.corpus);
  if (!corpus.ok()) return corpus.status();
  absl::StatusOr<TransformResult> result =
      RunPipeline(*corpus, *cfg, *resources, args.workers);
  if (!result.ok()) return result.status();
  result->manifest["verb"] = "transform";
  result->manifest["input_corpus"] = args.corpus;
  return SaveTransformResult(args.out, *result);
}

struct TrainArgs {
  std::string corpus;
  std::string model;
  uint64_t seed = 0;
  CLI::Option* seed_option = nullptr;
  int epochs = 3;
  double learning_rate = 0.1;
  int workers = 1;
};

absl::Status TrainVerb(const TrainArgs& args, const Streams& io) {
  const uint64_t seed = SeedOrDefault(args.seed_option, args.seed, io);
  absl::StatusOr<SplitCorpus> corpus = LoadSplitCorpus(args.corpus);
  if (!corpus.ok()) return corpus.status();
  absl::StatusOr<Model> model =
      Train(corpus->train, seed, {args.epochs, args.learning_rate},
            args.workers);
  if (!model.ok()) return model.status();
  const std::string bytes = SerializeModel(*model);
  if (absl::Status s = WriteFile(args.model, bytes); !s.ok()) return s;
  ordered_json manifest = {
      {"verb", "train"},
      {"corpus", args.corpus},
      {"corpus_digest", HexDigest(CorpusDigest(*corpus))},
      {"seed", seed},
      {"epochs", args.epochs},
      {"learning_rate", args.learning_rate},
      {"train_examples", corpus->train.size()},
      {"model_digest", HexDigest(Fnv1a64(bytes))},
  };
  return WriteJson(args.model + ".manifest.json", manifest);
}

struct EvalArgs {
  std::string model;
  std::string corpus;
  std::string split = "test";
  std::string gazetteer;
  int workers = 1;
};

// The corpus a transformed corpus was made from, or the corpus itself when
// its manifest names no input.
absl::StatusOr<SplitCorpus> OriginalOf(const std::string& dir,
                                       const SplitCorpus& corpus) {
  absl::StatusOr<json> manifest = LoadManifest(dir);
  if (!manifest.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "entity exposure needs the corpus manifest: ",
        manifest.status().message()));
  }
  if (!manifest->contains("input_corpus")) return corpus;
  const std::string input = (*manifest)["input_corpus"].get<std::string>();
  absl::StatusOr<SplitCorpus> original = LoadSplitCorpus(input);
  if (!original.ok()) return original.status();
  const std::string digest = HexDigest(CorpusDigest(*original));
  if (manifest->value("input_digest", "") != digest) {
    return absl::DataLossError(absl::StrCat(
        "input corpus ", input, " has digest ", digest,
        ", manifest records ", manifest->value("input_digest", "")));
  }
  return original;
}

absl::Status EvalVerb(const EvalArgs& args, const Streams& io) {
  absl::StatusOr<Split> split = ParseSplit(args.split);
  if (!split.ok()) return split.status();
  absl::StatusOr<Model> model = LoadModel(args.model);
  if (!model.ok()) return model.status();
  absl::StatusOr<SplitCorpus> corpus = LoadSplitCorpus(args.corpus);
  if (!corpus.ok()) return corpus.status();
  absl::StatusOr<Gazetteer> gazetteer =
      args.gazetteer.empty() ? Gazetteer::CreateDefault()
                             : Gazetteer::LoadJsonl(args.gazetteer);
  if (!gazetteer.ok()) return gazetteer.status();
  absl::StatusOr<SplitCorpus> original = OriginalOf(args.corpus, *corpus);
  if (!original.ok()) return original.status();
  absl::StatusOr<double> exposure = EntityExposure(
      original->part(*split), corpus->part(*split), *gazetteer);
  if (!exposure.ok()) return exposure.status();

  const Metrics m = Evaluate(*model, corpus->part(*split), args.workers);
  const ordered_json report = {
      {"split", args.split},   {"examples", corpus->part(*split).size()},
      {"tp", m.tp},            {"fp", m.fp},
      {"fn", m.fn},            {"tn", m.tn},
      {"precision", m.precision}, {"recall", m.recall},
      {"f1", m.f1},            {"entity_exposure", *exposure},
  };
  io.out << report.dump(2) << "\n";
  return absl::OkStatus();
}

struct SweepArgs {
  std::string corpus;
  std::string rates = "0.05,0.10,0.15,0.20";
  std::string tiers = "dp,combined";
  std::string config;
  std::string out;
  std::string table;
  uint64_t seed = 0;
  CLI::Option* seed_option = nullptr;
  int workers = 1;
};

absl::Status SweepVerb(const SweepArgs& args, const Streams& io) {
  const uint64_t seed = SeedOrDefault(args.seed_option, args.seed, io);
  SweepOptions options;
  options.seed = seed;
  absl::StatusOr<std::vector<double>> rates =
      ParseFractions(args.rates, "--rates");
  if (!rates.ok()) return rates.status();
  options.rates = *rates;
  std::vector<TierSet> swept;
  for (absl::string_view name : absl::StrSplit(AsAbsl(args.tiers), ',')) {
    absl::StatusOr<TierSet> tiers = ParseTierSet(AsStd(name));
    if (!tiers.ok()) return tiers.status();
    swept.push_back(*tiers);
  }
  options.tier_sets = WithReferenceRows(swept);
  if (!args.config.empty()) {
    absl::StatusOr<TransformConfig> base = TransformConfig::Load(args.config);
    if (!base.ok()) return base.status();
    options.base = *base;
  }
  absl::StatusOr<SplitCorpus> corpus = LoadSplitCorpus(args.corpus);
  if (!corpus.ok()) return corpus.status();
  absl::StatusOr<std::vector<SweepRow>> rows =
      RunSweep(*corpus, options, args.workers);
  if (!rows.ok()) return rows.status();

  const std::string csv = SweepToCsv(*rows);
  const std::string table = RenderTable(*rows);
  if (absl::Status s = WriteFile(args.out, csv); !s.ok()) return s;
  if (!args.table.empty()) {
    if (absl::Status s = WriteFile(args.table, table); !s.ok()) return s;
  }
  ordered_json manifest = {
      {"verb", "sweep"},
      {"corpus", args.corpus},
      {"corpus_digest", HexDigest(CorpusDigest(*corpus))},
      {"seed", seed},
      {"rates", args.rates},
      {"tiers", args.tiers},
      {"base_config", options.base.ToJson()},
      {"rows", rows->size()},
      {"report_digest", HexDigest(Fnv1a64(csv))},
  };
  if (absl::Status s = WriteJson(args.out + ".manifest.json", manifest);
      !s.ok()) {
    return s;
  }
  io.out << table;
  return absl::OkStatus();
}

struct ReportArgs {
  std::string input;
  std::string out;
};

absl::Status ReportVerb(const ReportArgs& args, const Streams& io) {
  absl::StatusOr<std::string> csv = ReadFile(args.input);
  if (!csv.ok()) return csv.status();
  absl::StatusOr<std::vector<SweepRow>> rows = ParseSweepCsv(*csv);
  if (!rows.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(args.input, ": ", rows.status().message()));
  }
  const std::string table = RenderTable(*rows);
  if (args.out.empty()) {
    io.out << table;
    return absl::OkStatus();
  }
  return WriteFile(args.out, table);
}

struct ReplayArgs {
  std::string corpus;
  std::string audit;
  std::string out;
};

absl::Status ReplayVerb(const ReplayArgs& args, const Streams& /*io*/) {
  if (absl::Status s = RefuseOverwrite(args.corpus, args.out); !s.ok()) {
    return s;
  }
  absl::StatusOr<SplitCorpus> corpus = LoadSplitCorpus(args.corpus);
  if (!corpus.ok()) return corpus.status();
  absl::StatusOr<std::string> raw = ReadFile(args.audit);
  if (!raw.ok()) return raw.status();
  absl::StatusOr<AuditLog> audit = ParseAuditJsonl(*raw);
  if (!audit.ok()) return audit.status();
  absl::StatusOr<SplitCorpus> replayed = Replay(*corpus, *audit);
  if (!replayed.ok()) return replayed.status();
  return SaveSplitCorpus(
      args.out, *replayed,
      {{"verb", "replay"},
       {"input_corpus", args.corpus},
       {"input_digest", HexDigest(CorpusDigest(*corpus))},
       {"audit_digest", HexDigest(Fnv1a64(*raw))},
       {"audit_records", audit->size()}});
}

int ExitCode(const absl::Status& status, const Streams& io) {
  if (status.ok()) return kExitOk;
  io.err << "error: " << status.message() << "\n";
  return IsIoError(status) ? kExitIo : kExitInvalid;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  const Streams io{out, err};
  CLI::App app("Privacy tiers for labeled text corpora", "textveil");
  app.require_subcommand(1);
  int workers = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);

  IngestArgs ingest;
  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "Split a JSONL corpus into train/dev/test");
  ingest_cmd->usage(
      "ingest --input <jsonl> --ratios 0.6,0.2,0.2 --seed <u64> --out <dir>");
  ingest_cmd->add_option("--input", ingest.input, "JSONL corpus")
      ->required();
  ingest_cmd->add_option("--ratios", ingest.ratios, "train,dev,test");
  ingest.seed_option =
      ingest_cmd->add_option("--seed", ingest.seed, "Split seed");
  ingest_cmd->add_option("--out", ingest.out, "Output directory")->required();

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth_cmd->usage("synth --n <int> --seed <u64> --out <dir>");
  synth_cmd->add_option("--n", synth.n, "Number of examples")->required();
  synth.seed_option = synth_cmd->add_option("--seed", synth.seed, "Seed");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  TransformArgs transform;
  CLI::App* transform_cmd =
      app.add_subcommand("transform", "Apply privacy tiers to a corpus");
  transform_cmd->usage(
      "transform --corpus <dir> --config <json> --out <dir> (writes corpus + "
      "audit.jsonl + manifest.json)");
  transform_cmd->add_option("--corpus", transform.corpus, "Corpus directory")
      ->required();
  transform_cmd->add_option("--config", transform.config, "Config file")
      ->required();
  transform_cmd->add_option("--out", transform.out, "Output directory")
      ->required();
  transform.seed_option = transform_cmd->add_option(
      "--seed", transform.seed, "Overrides the config seed");

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train the n-gram classifier");
  train_cmd->usage("train --corpus <dir> --seed <u64> --model <file>");
  train_cmd->add_option("--corpus", train.corpus, "Corpus directory")
      ->required();
  train.seed_option = train_cmd->add_option("--seed", train.seed, "Seed");
  train_cmd->add_option("--model", train.model, "Model file")->required();
  train_cmd->add_option("--epochs", train.epochs, "SGD epochs")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber);

  EvalArgs eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Score a model and measure entity exposure");
  eval_cmd->usage(
      "eval --model <file> --corpus <dir> --split dev|test --gazetteer "
      "<file>");
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  eval_cmd->add_option("--corpus", eval.corpus, "Corpus directory")
      ->required();
  eval_cmd->add_option("--split", eval.split, "dev|test")
      ->check(CLI::IsMember({"dev", "test"}));
  eval_cmd->add_option("--gazetteer", eval.gazetteer,
                       "Gazetteer JSONL (default: built-in)");

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Privacy/utility sweep over noise rates");
  sweep_cmd->usage(
      "sweep --corpus <dir> --rates 0.05,0.10,0.15,0.20 --tiers dp,combined "
      "--seed <u64> --out report.csv");
  sweep_cmd->add_option("--corpus", sweep.corpus, "Corpus directory")
      ->required();
  sweep_cmd->add_option("--rates", sweep.rates, "Comma-separated rates");
  sweep_cmd->add_option("--tiers", sweep.tiers,
                        "Comma-separated tier sets to sweep");
  sweep.seed_option = sweep_cmd->add_option("--seed", sweep.seed, "Seed");
  sweep_cmd->add_option("--out", sweep.out, "CSV report")->required();
  sweep_cmd->add_option("--config", sweep.config,
                        "Base transform config (tiers and rate ignored)");
  sweep_cmd->add_option("--table", sweep.table, "Also write the text table");

  ReportArgs report;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Render a sweep CSV as a table");
  report_cmd->usage("report --input report.csv [--out table.txt]");
  report_cmd->add_option("--input", report.input, "Sweep CSV")->required();
  report_cmd->add_option("--out", report.out, "Table file (default stdout)");

  ReplayArgs replay;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "Re-apply an audit log to its input");
  replay_cmd->usage("replay --corpus <dir> --audit <file> --out <dir>");
  replay_cmd->add_option("--corpus", replay.corpus, "Input corpus directory")
      ->required();
  replay_cmd->add_option("--audit", replay.audit, "audit.jsonl")->required();
  replay_cmd->add_option("--out", replay.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  }

  transform.workers = train.workers = eval.workers = sweep.workers = workers;
  absl::Status status;
  if (*ingest_cmd) status = Ingest(ingest, io);
  if (*synth_cmd) status = Synth(synth, io);
  if (*transform_cmd) status = Transform(transform, io);
  if (*train_cmd) status = TrainVerb(train, io);
  if (*eval_cmd) status = EvalVerb(eval, io);
  if (*sweep_cmd) status = SweepVerb(sweep, io);
  if (*report_cmd) status = ReportVerb(report, io);
  if (*replay_cmd) status = ReplayVerb(replay, io);
  return ExitCode(status, io);
}

}  // namespace textveil
