// Copyright 2026 The Coref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver. Every subcommand reads its inputs, writes its outputs
// and reports failures as a JSON error record on stderr with exit status 1.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coref/corpus.h"
#include "coref/experiment.h"
#include "coref/ilp.h"
#include "coref/learn.h"
#include "coref/resolve.h"
#include "coref/score.h"
#include "coref/synth.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace coref {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string family = "cr";
  std::string features = "combined";
  std::string loss = "hinge";
  std::string linking = "closest";
  std::string anaph = "joint";
  double c = 1.0;
  int epochs = 50;
  uint64_t seed = 1;
  double unseen_rate = 0.10;
  int folds = 5;
  std::vector<std::string> drop;
  std::string metric = "bcubed";
};

void AddExperimentFlags(CLI::App *cmd, Flags *f) {
  cmd->add_option("--family", f->family, "hm, mp, em, mr or cr")
      ->capture_default_str();
  cmd->add_option("--features", f->features,
                  "conventional, lexical or combined")
      ->capture_default_str();
  cmd->add_option("--loss", f->loss, "hinge or log")->capture_default_str();
  cmd->add_option("--linking", f->linking, "closest or best")
      ->capture_default_str();
  cmd->add_option("--anaph", f->anaph, "pipeline or joint")
      ->capture_default_str();
  cmd->add_option("--c", f->c, "regularization constant")
      ->capture_default_str();
  cmd->add_option("--epochs", f->epochs)->capture_default_str();
  cmd->add_option("--seed", f->seed)->capture_default_str();
  cmd->add_option("--unseen-rate", f->unseen_rate)->capture_default_str();
  cmd->add_option("--folds", f->folds)->capture_default_str();
  cmd->add_option("--drop", f->drop, "feature groups to leave out")
      ->delimiter(',');
}

template <typename T>
T Parse(const std::string &flag, const std::string &value) {
  T out{};
  if (!FromString(value, &out)) {
    throw UsageError("invalid value for " + flag + ": " + value);
  }
  return out;
}

std::vector<FeatureGroup> ParseGroups(const std::vector<std::string> &names) {
  std::vector<FeatureGroup> out;
  for (const auto &n : names) out.push_back(Parse<FeatureGroup>("group", n));
  return out;
}

ExperimentConfig ToConfig(const Flags &f) {
  ExperimentConfig cfg;
  cfg.family = Parse<Family>("--family", f.family);
  cfg.fs = Parse<FeatureSetId>("--features", f.features);
  cfg.loss = Parse<Loss>("--loss", f.loss);
  cfg.linking = Parse<Linking>("--linking", f.linking);
  cfg.anaph = Parse<AnaphMode>("--anaph", f.anaph);
  cfg.c = f.c;
  cfg.epochs = f.epochs;
  cfg.seed = f.seed;
  cfg.unseen_rate = f.unseen_rate;
  cfg.folds = f.folds;
  cfg.dropped = ParseGroups(f.drop);
  ValidateExperiment(cfg);
  return cfg;
}

// Writes to `path`, or to stdout when it is empty or "-".
void Emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string Lines(const std::vector<PartitionDoc> &docs) {
  std::ostringstream out;
  WritePartitions(out, docs);
  return out.str();
}

std::string ErrorKind(const std::exception &e) {
  if (dynamic_cast<const CorpusError *>(&e)) return "corpus";
  if (dynamic_cast<const UsageError *>(&e)) return "usage";
  if (dynamic_cast<const ExperimentError *>(&e)) return "experiment";
  if (dynamic_cast<const ResolveError *>(&e)) return "resolve";
  if (dynamic_cast<const LearnError *>(&e)) return "learn";
  if (dynamic_cast<const IlpError *>(&e)) return "ilp";
  if (dynamic_cast<const ScoreError *>(&e)) return "score";
  if (dynamic_cast<const nlohmann::json::exception *>(&e)) return "format";
  return "internal";
}

int ReportError(const std::string &command, const std::exception &e) {
  ordered_json rec;
  rec["error"] = ErrorKind(e);
  rec["command"] = command;
  rec["message"] = e.what();
  if (auto *ce = dynamic_cast<const CorpusError *>(&e)) {
    rec["rule"] = ce->rule();
    rec["where"] = ce->where();
  }
  std::cerr << rec.dump() << std::endl;
  return 1;
}

}  // namespace
}  // namespace coref

int main(int argc, char **argv) {
  using namespace coref;
  CLI::App app{"Supervised noun-phrase coreference resolution"};
  app.require_subcommand(1);

  Flags flags;
  std::string corpus_path, model_path, out_path, key_path, response_path;
  std::string baseline_path, lp_dir;
  std::string metric = "both";
  std::vector<std::string> groups;
  int max_vars = 2000;
  SynthConfig synth;
  std::vector<std::string> synth_sources = synth.sources;

  auto *validate = app.add_subcommand("validate", "Check a corpus file");
  validate->add_option("corpus", corpus_path)->required();

  auto *train = app.add_subcommand("train", "Train a resolver");
  train->add_option("corpus", corpus_path)->required();
  train->add_option("--out", out_path, "resolver file")->required();
  AddExperimentFlags(train, &flags);

  auto *resolve = app.add_subcommand("resolve", "Resolve a corpus");
  resolve->add_option("corpus", corpus_path)->required();
  resolve->add_option("--model", model_path)->required();
  resolve->add_option("--out", out_path, "partition file (default stdout)");

  auto *score = app.add_subcommand("score", "Score a response against a key");
  score->add_option("key", key_path)->required();
  score->add_option("response", response_path)->required();
  score->add_option("--metric", metric, "bcubed, ceaf or both")
      ->capture_default_str();
  score->add_option("--baseline", baseline_path,
                    "second response; adds a paired t-test on document F");
  score->add_option("--out", out_path);

  auto *crossval = app.add_subcommand("crossval", "Cross-validate per source");
  crossval->add_option("corpus", corpus_path)->required();
  crossval->add_option("--out", out_path, "output directory")->required();
  AddExperimentFlags(crossval, &flags);

  auto *ablate = app.add_subcommand("ablate", "Feature-type ablation");
  ablate->add_option("corpus", corpus_path)->required();
  ablate->add_option("--groups", groups, "groups to eliminate")->delimiter(',');
  ablate->add_option("--metric", flags.metric, "bcubed or ceaf")
      ->capture_default_str();
  ablate->add_option("--out", out_path, "JSON trace");
  AddExperimentFlags(ablate, &flags);

  auto *adapt = app.add_subcommand("adapt", "Cross-source adaptability");
  adapt->add_option("corpus", corpus_path)->required();
  adapt->add_option("--metric", flags.metric, "bcubed or ceaf")
      ->capture_default_str();
  adapt->add_option("--out", out_path, "JSON matrix");
  AddExperimentFlags(adapt, &flags);

  auto *ilp = app.add_subcommand("ilp-resolve", "Exact joint inference");
  ilp->add_option("corpus", corpus_path)->required();
  ilp->add_option("--model", model_path)->required();
  ilp->add_option("--max-vars", max_vars)->capture_default_str();
  ilp->add_option("--lp-dir", lp_dir, "also write one LP file per document");
  ilp->add_option("--out", out_path, "partition file (default stdout)");

  auto *classes = app.add_subcommand("classes", "Scores per resolution class");
  classes->add_option("corpus", corpus_path)->required();
  classes->add_option("--model", model_path)->required();
  classes->add_option("--out", out_path, "JSON table");

  auto *synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  synth_cmd->add_option("--docs", synth.docs)->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--sources", synth_sources)->delimiter(',');
  synth_cmd->add_option("--out", out_path, "corpus file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::string command = argc > 1 ? argv[1] : "";
    return ReportError(command, UsageError(e.what()));
  }

  CLI::App *cmd = app.get_subcommands().front();
  try {
    if (cmd == validate) {
      auto docs = LoadCorpus(corpus_path);
      int mentions = 0;
      for (const auto &d : docs) mentions += d.size();
      ordered_json j;
      j["documents"] = docs.size();
      j["mentions"] = mentions;
      j["valid"] = true;
      std::cout << j.dump() << "\n";
    } else if (cmd == train) {
      ExperimentConfig cfg = ToConfig(flags);
      SaveSpec(TrainSystem(LoadCorpus(corpus_path), cfg), out_path);
    } else if (cmd == resolve) {
      ResolverSpec spec = LoadSpec(model_path);
      std::vector<PartitionDoc> out;
      for (const Document &raw : LoadCorpus(corpus_path)) {
        Resolution r = Resolve(PrepareTestDocument(raw, spec), spec);
        out.push_back(ToPartitionDoc(raw, r.partition));
      }
      Emit(out_path, Lines(out));
    } else if (cmd == score) {
      if (metric != "bcubed" && metric != "ceaf" && metric != "both") {
        throw UsageError("invalid value for --metric: " + metric);
      }
      auto keys = LoadPartitions(key_path);
      CorpusScores s = ScoreCorpus(keys, LoadPartitions(response_path));
      ordered_json j = ScoresToJson(s);
      if (metric != "both") {
        const char *drop = metric == "bcubed" ? "ceaf" : "bcubed";
        j.erase(drop);
        for (auto &row : j["documents"]) row.erase(drop);
      }
      if (!baseline_path.empty()) {
        CorpusScores b = ScoreCorpus(keys, LoadPartitions(baseline_path));
        ordered_json tests;
        for (std::string m : {"bcubed", "ceaf"}) {
          if (metric != "both" && metric != m) continue;
          std::vector<double> a, c;
          for (size_t i = 0; i < s.per_doc.size(); ++i) {
            a.push_back(m == "bcubed" ? s.per_doc[i].second.bcubed.f1
                                      : s.per_doc[i].second.ceaf.f1);
            c.push_back(m == "bcubed" ? b.per_doc[i].second.bcubed.f1
                                      : b.per_doc[i].second.ceaf.f1);
          }
          TTestResult t = PairedTTest(a, c);
          tests[m] = {{"t", t.t}, {"p", t.p}, {"df", t.df},
                      {"degenerate", t.degenerate},
                      {"significant", !t.degenerate && t.p < 0.05}};
        }
        j["paired_t_test"] = std::move(tests);
      }
      Emit(out_path, j.dump(2) + "\n");
    } else if (cmd == crossval) {
      ExperimentConfig cfg = ToConfig(flags);
      auto docs = LoadCorpus(corpus_path);
      CrossvalResult r = RunCrossval(docs, cfg);
      fs::create_directories(fs::path(out_path) / "models");
      for (const auto &[name, spec] : r.models) {
        SaveSpec(spec, (fs::path(out_path) / "models" / (name + ".json")).string());
      }
      Emit((fs::path(out_path) / "responses.jsonl").string(),
           Lines(r.pooled.responses));
      ordered_json report = CrossvalReport(docs, cfg, r);
      Emit((fs::path(out_path) / "report.json").string(), report.dump(2) + "\n");
      std::cout << "B3   R " << r.pooled.scores.bcubed.recall << " P "
                << r.pooled.scores.bcubed.precision << " F "
                << r.pooled.scores.bcubed.f1 << "\n"
                << "CEAF R " << r.pooled.scores.ceaf.recall << " P "
                << r.pooled.scores.ceaf.precision << " F "
                << r.pooled.scores.ceaf.f1 << "\n";
    } else if (cmd == ablate) {
      ExperimentConfig cfg = ToConfig(flags);
      std::vector<FeatureGroup> g =
          groups.empty() ? DefaultGroups(cfg.fs) : ParseGroups(groups);
      AblationTrace t = RunAblation(LoadCorpus(corpus_path), cfg, g,
                                    Parse<Metric>("--metric", flags.metric));
      std::cout << FormatAblation(t);
      if (!out_path.empty()) Emit(out_path, AblationToJson(t).dump(2) + "\n");
    } else if (cmd == adapt) {
      ExperimentConfig cfg = ToConfig(flags);
      AdaptabilityMatrix m = RunAdaptability(
          LoadCorpus(corpus_path), cfg, Parse<Metric>("--metric", flags.metric));
      std::cout << FormatAdaptability(m);
      if (!out_path.empty()) {
        Emit(out_path, AdaptabilityToJson(m).dump(2) + "\n");
      }
    } else if (cmd == ilp) {
      ResolverSpec spec = LoadSpec(model_path);
      if (!lp_dir.empty()) fs::create_directories(lp_dir);
      std::vector<PartitionDoc> out;
      for (const Document &raw : LoadCorpus(corpus_path)) {
        out.push_back(ToPartitionDoc(raw, IlpResolve(raw, spec, max_vars)));
        if (!lp_dir.empty()) {
          if (spec.family != Family::kMentionPair || !spec.anaph_model) {
            throw IlpError("joint inference needs a mention-pair model and "
                           "an anaphoricity model");
          }
          Document doc = PrepareTestDocument(raw, spec);
          std::ofstream lp(fs::path(lp_dir) / (raw.doc_id + ".lp"));
          WriteLp(BuildProgram(doc, spec.coref_model, *spec.anaph_model,
                               spec.fs),
                  lp);
        }
      }
      Emit(out_path, Lines(out));
    } else if (cmd == classes) {
      auto rows = ClassTable(LoadCorpus(corpus_path), LoadSpec(model_path));
      std::cout << FormatClassTable(rows);
      if (!out_path.empty()) {
        ordered_json j = ordered_json::array();
        for (const auto &[cls, r] : rows) {
          ordered_json row = ReportToJson(r);
          row["class"] = cls;
          j.push_back(std::move(row));
        }
        Emit(out_path, j.dump(2) + "\n");
      }
    } else if (cmd == synth_cmd) {
      synth.sources = synth_sources;
      std::ostringstream out;
      WriteCorpus(out, SynthCorpus(synth));
      Emit(out_path, out.str());
    }
  } catch (const std::exception &e) {
    return ReportError(cmd->get_name(), e);
  }
  return 0;
}
