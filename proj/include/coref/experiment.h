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

// Training and evaluation drivers: cross-validation, feature-type ablation
// and the cross-source adaptability matrix.

#ifndef COREF_EXPERIMENT_H_
#define COREF_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/corpus.h"
#include "coref/features.h"
#include "coref/learn.h"
#include "coref/resolve.h"
#include "coref/score.h"
#include "json.hpp"

namespace coref {

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Family family = Family::kClusterRanking;
  FeatureSetId fs = FeatureSetId::kCombined;
  Loss loss = Loss::kHinge;
  Linking linking = Linking::kClosestFirst;
  AnaphMode anaph = AnaphMode::kJoint;
  double c = 1.0;
  int epochs = 50;
  uint64_t seed = 1;
  double unseen_rate = 0.10;
  int folds = 5;
  std::vector<FeatureGroup> dropped;
};

// Throws ExperimentError for invalid values.
void ValidateExperiment(const ExperimentConfig &cfg);
nlohmann::ordered_json ConfigToJson(const ExperimentConfig &cfg);

// Trains the models `cfg` calls for. Ranking resolvers in PIPELINE mode and
// log-loss mention-pair resolvers also get a log-loss anaphoricity model.
ResolverSpec TrainSystem(const std::vector<Document> &train,
                         const ExperimentConfig &cfg);

struct Evaluation {
  CorpusScores scores;
  AnaphoricityScores anaphoricity;
  std::vector<PartitionDoc> responses;
};

Evaluation Evaluate(const std::vector<Document> &test,
                    const ResolverSpec &spec);

// Exact joint inference for a log-loss mention-pair spec with an
// anaphoricity model.
Partition IlpResolve(const Document &doc, const ResolverSpec &spec,
                     int max_vars);

// Fold of every document. Folds are drawn per source by a seeded shuffle,
// so fold sizes within a source differ by at most one.
std::vector<int> AssignFolds(const std::vector<Document> &docs, int folds,
                             uint64_t seed);

struct CrossvalResult {
  std::vector<int> fold_of;
  // Trained resolver per (source, fold), keyed "SOURCE-foldN".
  std::map<std::string, ResolverSpec> models;
  Evaluation pooled;
  std::map<std::string, CorpusScores> by_source;
};

CrossvalResult RunCrossval(const std::vector<Document> &docs,
                           const ExperimentConfig &cfg);
nlohmann::ordered_json CrossvalReport(const std::vector<Document> &docs,
                                      const ExperimentConfig &cfg,
                                      const CrossvalResult &result);

// Training documents are all folds but 0, test documents are fold 0.
void HoldoutSplit(const std::vector<Document> &docs, int folds, uint64_t seed,
                  std::vector<Document> *train, std::vector<Document> *test);

enum class Metric { kBCubed, kCeaf };
std::string_view ToString(Metric m);
bool FromString(std::string_view s, Metric *m);
double FScore(const CorpusScores &s, Metric m);

struct AblationRound {
  // F with each remaining group removed, in column order.
  std::map<FeatureGroup, double> removal;
  FeatureGroup eliminated;
};

struct AblationTrace {
  Metric metric = Metric::kBCubed;
  double full = 0.0;
  std::vector<FeatureGroup> groups;
  std::vector<AblationRound> rounds;
};

AblationTrace RunAblation(const std::vector<Document> &docs,
                          const ExperimentConfig &cfg,
                          const std::vector<FeatureGroup> &groups,
                          Metric metric);
// Triangular table; columns are groups in reverse elimination order.
std::string FormatAblation(const AblationTrace &trace);
nlohmann::ordered_json AblationToJson(const AblationTrace &trace);

struct AdaptabilityMatrix {
  Metric metric = Metric::kBCubed;
  std::vector<std::string> sources;
  std::vector<std::vector<double>> f;  // [train source][test source]
  std::vector<double> max_minus_min;   // per test source
  std::vector<double> stddev;          // per test source, sample
};

AdaptabilityMatrix RunAdaptability(const std::vector<Document> &docs,
                                   const ExperimentConfig &cfg, Metric metric);
std::string FormatAdaptability(const AdaptabilityMatrix &m);
nlohmann::ordered_json AdaptabilityToJson(const AdaptabilityMatrix &m);

// Sample standard deviation; 0 for fewer than two values.
double SampleStdDev(const std::vector<double> &v);

// One row per resolution class; `empty` rows have no members.
std::vector<std::pair<std::string, ScoreReport>> ClassTable(
    const std::vector<Document> &docs, const ResolverSpec &spec);
std::string FormatClassTable(
    const std::vector<std::pair<std::string, ScoreReport>> &rows);

}  // namespace coref

#endif  // COREF_EXPERIMENT_H_
