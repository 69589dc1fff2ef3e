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

#include "coref/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "coref/ilp.h"
#include "coref/instances.h"
#include "coref/random.h"

namespace coref {
namespace {

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * v);
  return buf;
}

std::string Pad(const std::string &s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::map<std::string, std::vector<int>> BySource(
    const std::vector<Document> &docs) {
  std::map<std::string, std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(docs.size()); ++i) {
    out[docs[i].source].push_back(i);
  }
  return out;
}

std::vector<Document> Select(const std::vector<Document> &docs,
                             const std::vector<int> &ids) {
  std::vector<Document> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(docs[i]);
  return out;
}

}  // namespace

void ValidateExperiment(const ExperimentConfig &cfg) {
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
    throw ExperimentError("C must be positive");
  }
  if (cfg.epochs < 1) throw ExperimentError("epochs must be at least 1");
  if (!(cfg.unseen_rate >= 0.0 && cfg.unseen_rate <= 1.0)) {
    throw ExperimentError("unseen rate must lie in [0, 1]");
  }
  if (cfg.folds < 2) throw ExperimentError("folds must be at least 2");
}

nlohmann::ordered_json ConfigToJson(const ExperimentConfig &cfg) {
  nlohmann::ordered_json j;
  j["family"] = ToString(cfg.family);
  j["features"] = ToString(cfg.fs);
  j["loss"] = ToString(cfg.loss);
  j["linking"] = ToString(cfg.linking);
  j["anaph"] = ToString(cfg.anaph);
  j["c"] = cfg.c;
  j["epochs"] = cfg.epochs;
  j["seed"] = cfg.seed;
  j["unseen_rate"] = cfg.unseen_rate;
  j["folds"] = cfg.folds;
  nlohmann::ordered_json dropped = nlohmann::ordered_json::array();
  for (FeatureGroup g : cfg.dropped) dropped.push_back(ToString(g));
  j["dropped"] = std::move(dropped);
  return j;
}

ResolverSpec TrainSystem(const std::vector<Document> &train,
                         const ExperimentConfig &cfg) {
  ValidateExperiment(cfg);
  ResolverSpec spec;
  spec.family = cfg.family;
  spec.fs = cfg.fs;
  spec.linking = cfg.linking;
  spec.anaph = cfg.anaph;
  if (cfg.family == Family::kHeadMatch) return spec;

  std::vector<Document> docs = train;
  std::vector<std::string> vocab;
  if (cfg.fs != FeatureSetId::kConventional) {
    docs = UnseenTrain(std::move(docs), cfg.unseen_rate, cfg.seed);
    std::set<std::string> words = CollectVocab(docs);
    vocab.assign(words.begin(), words.end());
  }

  FeatureExtractor fx(cfg.fs, cfg.dropped);
  bool joint = cfg.anaph == AnaphMode::kJoint;
  TrainSet ts;
  for (const Document &doc : docs) {
    switch (cfg.family) {
      case Family::kMentionPair: GenMentionPair(doc, fx, &ts); break;
      case Family::kEntityMention: GenEntityMention(doc, fx, &ts); break;
      case Family::kMentionRanking: GenMentionRanking(doc, fx, joint, &ts); break;
      case Family::kClusterRanking: GenClusterRanking(doc, fx, joint, &ts); break;
      case Family::kHeadMatch: break;
    }
  }
  if (ts.instances.empty()) {
    ts.kind = IsRankingFamily(cfg.family) ? TaskKind::kRank
                                          : TaskKind::kClassify;
  }
  TrainerConfig tc;
  tc.c = cfg.c;
  tc.epochs = cfg.epochs;
  tc.seed = cfg.seed;
  spec.coref_model = Train(ts, cfg.loss, tc);
  spec.coref_model.meta.family = ToString(cfg.family);
  spec.coref_model.meta.feature_set = ToString(cfg.fs);
  spec.coref_model.meta.unseen_vocab = vocab;

  bool pipeline = IsRankingFamily(cfg.family) && !joint;
  bool ilp_ready =
      cfg.family == Family::kMentionPair && cfg.loss == Loss::kLog;
  if (pipeline || ilp_ready) {
    TrainSet ats;
    for (const Document &doc : docs) GenAnaphoricity(doc, &ats);
    spec.anaph_model = Train(ats, Loss::kLog, tc);
    spec.anaph_model->meta.family = "ANAPHORICITY";
    spec.anaph_model->meta.feature_set = ToString(cfg.fs);
  }
  ValidateSpec(spec);
  return spec;
}

Evaluation Evaluate(const std::vector<Document> &test,
                    const ResolverSpec &spec) {
  Evaluation ev;
  std::vector<PartitionDoc> keys;
  std::vector<bool> predicted, gold;
  for (const Document &raw : test) {
    Document doc = PrepareTestDocument(raw, spec);
    Resolution r = Resolve(doc, spec);
    keys.push_back(ToPartitionDoc(raw, raw.gold));
    ev.responses.push_back(ToPartitionDoc(raw, r.partition));
    std::vector<bool> p = PredictedAnaphoric(r);
    std::vector<bool> g = GoldAnaphoric(raw);
    predicted.insert(predicted.end(), p.begin(), p.end());
    gold.insert(gold.end(), g.begin(), g.end());
  }
  ev.scores = ScoreCorpus(keys, ev.responses);
  ev.anaphoricity = AnaphoricityMetrics(predicted, gold);
  return ev;
}

Partition IlpResolve(const Document &raw, const ResolverSpec &spec,
                     int max_vars) {
  if (spec.family != Family::kMentionPair || !spec.anaph_model) {
    throw IlpError(
        "joint inference needs a mention-pair model and an anaphoricity "
        "model");
  }
  Document doc = PrepareTestDocument(raw, spec);
  IlpProgram p =
      BuildProgram(doc, spec.coref_model, *spec.anaph_model, spec.fs);
  return DecodePartition(SolveExact(p, max_vars), doc.size());
}

std::vector<int> AssignFolds(const std::vector<Document> &docs, int folds,
                             uint64_t seed) {
  if (folds < 2) throw ExperimentError("folds must be at least 2");
  std::vector<int> fold_of(docs.size(), -1);
  Random rng(seed);
  for (auto &[source, ids] : BySource(docs)) {
    if (static_cast<int>(ids.size()) < folds) {
      throw ExperimentError("source " + source + " has " +
                            std::to_string(ids.size()) +
                            " documents, fewer than " + std::to_string(folds) +
                            " folds");
    }
    rng.Shuffle(ids);
    for (size_t i = 0; i < ids.size(); ++i) {
      fold_of[ids[i]] = static_cast<int>(i % folds);
    }
  }
  return fold_of;
}

CrossvalResult RunCrossval(const std::vector<Document> &docs,
                           const ExperimentConfig &cfg) {
  ValidateExperiment(cfg);
  CrossvalResult out;
  out.fold_of = AssignFolds(docs, cfg.folds, cfg.seed);
  std::vector<PartitionDoc> keys;
  std::vector<bool> predicted, gold;
  for (const auto &[source, ids] : BySource(docs)) {
    std::vector<PartitionDoc> source_keys, source_responses;
    for (int f = 0; f < cfg.folds; ++f) {
      std::vector<int> train_ids, test_ids;
      for (int i : ids) {
        (out.fold_of[i] == f ? test_ids : train_ids).push_back(i);
      }
      ResolverSpec spec = TrainSystem(Select(docs, train_ids), cfg);
      for (int i : test_ids) {
        const Document &raw = docs[i];
        Resolution r = Resolve(PrepareTestDocument(raw, spec), spec);
        source_keys.push_back(ToPartitionDoc(raw, raw.gold));
        source_responses.push_back(ToPartitionDoc(raw, r.partition));
        std::vector<bool> p = PredictedAnaphoric(r);
        std::vector<bool> g = GoldAnaphoric(raw);
        predicted.insert(predicted.end(), p.begin(), p.end());
        gold.insert(gold.end(), g.begin(), g.end());
      }
      out.models.emplace(source + "-fold" + std::to_string(f), std::move(spec));
    }
    out.by_source[source] = ScoreCorpus(source_keys, source_responses);
    keys.insert(keys.end(), source_keys.begin(), source_keys.end());
    out.pooled.responses.insert(out.pooled.responses.end(),
                                source_responses.begin(),
                                source_responses.end());
  }
  out.pooled.scores = ScoreCorpus(keys, out.pooled.responses);
  out.pooled.anaphoricity = AnaphoricityMetrics(predicted, gold);
  return out;
}

nlohmann::ordered_json CrossvalReport(const std::vector<Document> &docs,
                                      const ExperimentConfig &cfg,
                                      const CrossvalResult &result) {
  nlohmann::ordered_json j;
  j["config"] = ConfigToJson(cfg);
  nlohmann::ordered_json folds;
  for (const auto &[source, ids] : BySource(docs)) {
    nlohmann::ordered_json per_fold = nlohmann::ordered_json::array();
    for (int f = 0; f < cfg.folds; ++f) {
      nlohmann::ordered_json members = nlohmann::ordered_json::array();
      for (int i : ids) {
        if (result.fold_of[i] == f) members.push_back(docs[i].doc_id);
      }
      per_fold.push_back(std::move(members));
    }
    folds[source] = std::move(per_fold);
  }
  j["folds"] = std::move(folds);
  nlohmann::ordered_json sources;
  for (const auto &[source, s] : result.by_source) {
    nlohmann::ordered_json row;
    row["bcubed"] = ReportToJson(s.bcubed);
    row["ceaf"] = ReportToJson(s.ceaf);
    sources[source] = std::move(row);
  }
  j["sources"] = std::move(sources);
  j["scores"] = ScoresToJson(result.pooled.scores);
  const AnaphoricityScores &a = result.pooled.anaphoricity;
  j["anaphoricity"] = {{"accuracy", a.accuracy}, {"recall", a.recall},
                       {"precision", a.precision}, {"f1", a.f1},
                       {"tp", a.tp}, {"fp", a.fp}, {"fn", a.fn}, {"tn", a.tn}};
  return j;
}

void HoldoutSplit(const std::vector<Document> &docs, int folds, uint64_t seed,
                  std::vector<Document> *train, std::vector<Document> *test) {
  std::vector<int> fold_of = AssignFolds(docs, folds, seed);
  for (size_t i = 0; i < docs.size(); ++i) {
    (fold_of[i] == 0 ? test : train)->push_back(docs[i]);
  }
}

std::string_view ToString(Metric m) {
  return m == Metric::kBCubed ? "bcubed" : "ceaf";
}

bool FromString(std::string_view s, Metric *m) {
  if (s == "bcubed" || s == "b3") {
    *m = Metric::kBCubed;
  } else if (s == "ceaf") {
    *m = Metric::kCeaf;
  } else {
    return false;
  }
  return true;
}

double FScore(const CorpusScores &s, Metric m) {
  return m == Metric::kBCubed ? s.bcubed.f1 : s.ceaf.f1;
}

AblationTrace RunAblation(const std::vector<Document> &docs,
                          const ExperimentConfig &cfg,
                          const std::vector<FeatureGroup> &groups,
                          Metric metric) {
  if (groups.size() < 2) {
    throw ExperimentError("ablation needs at least two feature groups");
  }
  std::vector<Document> train, test;
  HoldoutSplit(docs, cfg.folds, cfg.seed, &train, &test);
  auto run = [&](const std::vector<FeatureGroup> &dropped) {
    ExperimentConfig c = cfg;
    c.dropped = dropped;
    return FScore(Evaluate(test, TrainSystem(train, c)).scores, metric);
  };

  AblationTrace trace;
  trace.metric = metric;
  trace.groups = groups;
  trace.full = run(cfg.dropped);
  std::vector<FeatureGroup> removed = cfg.dropped;
  std::vector<FeatureGroup> remaining = groups;
  while (!remaining.empty()) {
    AblationRound round;
    double best = -1.0;
    for (FeatureGroup g : remaining) {
      std::vector<FeatureGroup> dropped = removed;
      dropped.push_back(g);
      double f = run(dropped);
      round.removal[g] = f;
      // Ties keep the earlier group.
      if (f > best) {
        best = f;
        round.eliminated = g;
      }
    }
    removed.push_back(round.eliminated);
    remaining.erase(
        std::find(remaining.begin(), remaining.end(), round.eliminated));
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

std::string FormatAblation(const AblationTrace &trace) {
  std::vector<FeatureGroup> columns;
  for (auto it = trace.rounds.rbegin(); it != trace.rounds.rend(); ++it) {
    columns.push_back(it->eliminated);
  }
  size_t width = 8;
  for (FeatureGroup g : columns) width = std::max(width, ToString(g).size() + 2);
  std::ostringstream out;
  out << "metric " << ToString(trace.metric) << ", all features "
      << Percent(trace.full) << "\n";
  for (FeatureGroup g : columns) out << Pad(std::string(ToString(g)), width);
  out << "\n";
  for (const AblationRound &round : trace.rounds) {
    for (FeatureGroup g : columns) {
      auto it = round.removal.find(g);
      out << Pad(it == round.removal.end() ? "" : Percent(it->second), width);
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json AblationToJson(const AblationTrace &trace) {
  nlohmann::ordered_json j;
  j["metric"] = ToString(trace.metric);
  j["full"] = trace.full;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const AblationRound &round : trace.rounds) {
    nlohmann::ordered_json row;
    nlohmann::ordered_json removal;
    for (FeatureGroup g : trace.groups) {
      auto it = round.removal.find(g);
      if (it != round.removal.end()) removal[ToString(g)] = it->second;
    }
    row["removal"] = std::move(removal);
    row["eliminated"] = ToString(round.eliminated);
    rounds.push_back(std::move(row));
  }
  j["rounds"] = std::move(rounds);
  return j;
}

double SampleStdDev(const std::vector<double> &v) {
  if (v.size() < 2) return 0.0;
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

AdaptabilityMatrix RunAdaptability(const std::vector<Document> &docs,
                                   const ExperimentConfig &cfg,
                                   Metric metric) {
  auto by_source = BySource(docs);
  if (by_source.size() < 2) {
    throw ExperimentError("adaptability needs at least two sources");
  }
  std::vector<int> fold_of = AssignFolds(docs, cfg.folds, cfg.seed);
  AdaptabilityMatrix m;
  m.metric = metric;
  std::vector<std::vector<Document>> train, test;
  for (const auto &[source, ids] : by_source) {
    m.sources.push_back(source);
    std::vector<int> tr, te;
    for (int i : ids) (fold_of[i] == 0 ? te : tr).push_back(i);
    train.push_back(Select(docs, tr));
    test.push_back(Select(docs, te));
  }
  const size_t n = m.sources.size();
  m.f.assign(n, std::vector<double>(n, 0.0));
  for (size_t s = 0; s < n; ++s) {
    ResolverSpec spec = TrainSystem(train[s], cfg);
    for (size_t t = 0; t < n; ++t) {
      m.f[s][t] = FScore(Evaluate(test[t], spec).scores, metric);
    }
  }
  for (size_t t = 0; t < n; ++t) {
    std::vector<double> column;
    for (size_t s = 0; s < n; ++s) column.push_back(m.f[s][t]);
    auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    m.max_minus_min.push_back(*hi - *lo);
    m.stddev.push_back(SampleStdDev(column));
  }
  return m;
}

std::string FormatAdaptability(const AdaptabilityMatrix &m) {
  const size_t width = 9;
  std::ostringstream out;
  out << "metric " << ToString(m.metric) << "; rows train, columns test\n";
  out << Pad("", width);
  for (const auto &s : m.sources) out << Pad(s, width);
  out << "\n";
  for (size_t s = 0; s < m.sources.size(); ++s) {
    out << Pad(m.sources[s], width);
    for (double v : m.f[s]) out << Pad(Percent(v), width);
    out << "\n";
  }
  out << Pad("Max-Min", width);
  for (double v : m.max_minus_min) out << Pad(Percent(v), width);
  out << "\n" << Pad("Std.Dev.", width);
  for (double v : m.stddev) out << Pad(Percent(v), width);
  out << "\n";
  return out.str();
}

nlohmann::ordered_json AdaptabilityToJson(const AdaptabilityMatrix &m) {
  nlohmann::ordered_json j;
  j["metric"] = ToString(m.metric);
  j["sources"] = m.sources;
  j["f"] = m.f;
  j["max_minus_min"] = m.max_minus_min;
  j["stddev"] = m.stddev;
  return j;
}

std::vector<std::pair<std::string, ScoreReport>> ClassTable(
    const std::vector<Document> &docs, const ResolverSpec &spec) {
  std::vector<std::pair<std::string, ScoreReport>> rows;
  for (const std::string &cls : ResolutionClasses()) {
    rows.emplace_back(cls, ResolutionClassScore(docs, spec, cls));
  }
  return rows;
}

std::string FormatClassTable(
    const std::vector<std::pair<std::string, ScoreReport>> &rows) {
  std::ostringstream out;
  out << Pad("class", 11) << Pad("mentions", 10) << Pad("R", 7) << Pad("P", 7)
      << Pad("F", 7) << "\n";
  for (const auto &[cls, r] : rows) {
    out << Pad(cls, 11) << Pad(std::to_string(r.key_mentions), 10);
    if (r.empty) {
      out << Pad("EMPTY", 21);
    } else {
      out << Pad(Percent(r.recall), 7) << Pad(Percent(r.precision), 7)
          << Pad(Percent(r.f1), 7);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace coref
