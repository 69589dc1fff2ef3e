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

#ifndef COREF_LEARN_H_
#define COREF_LEARN_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "coref/features.h"
#include "coref/instances.h"
#include "json.hpp"

namespace coref {

enum class Loss { kHinge, kLog };

std::string_view ToString(Loss loss);
bool FromString(std::string_view s, Loss *loss);

class LearnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelMeta {
  std::string family;
  std::string feature_set;
  uint64_t seed = 0;
  double c = 1.0;
  int epochs = 0;
  int num_instances = 0;
  std::vector<std::string> unseen_vocab;  // sorted
};

struct LinearModel {
  TaskKind kind = TaskKind::kClassify;
  Loss loss = Loss::kHinge;
  std::vector<std::string> feature_vocab;  // sorted
  std::unordered_map<std::string, double> weights;
  double bias = 0.0;
  ModelMeta meta;
  // Regularized objective of the kept snapshot after each epoch.
  std::vector<double> objective_trace;

  double Weight(const std::string &name) const;
};

struct TrainerConfig {
  double c = 1.0;
  int epochs = 50;
  uint64_t seed = 1;
  // Classifiers only; rankers never learn a bias.
  bool fit_bias = true;
};

void ValidateConfig(const TrainerConfig &cfg);

LinearModel TrainHingeClassifier(const TrainSet &ts, const TrainerConfig &cfg);
LinearModel TrainHingeRanker(const TrainSet &ts, const TrainerConfig &cfg);
LinearModel TrainLogClassifier(const TrainSet &ts, const TrainerConfig &cfg);
LinearModel TrainLogRanker(const TrainSet &ts, const TrainerConfig &cfg);

// Dispatches on ts.kind and `loss`.
LinearModel Train(const TrainSet &ts, Loss loss, const TrainerConfig &cfg);

// Within-group difference vectors x_i - x_j (i before j) labeled by the sign
// of rank_i - rank_j; equal-rank pairs are skipped.
TrainSet PairwiseDifferences(const TrainSet &ts);

// Sum of weight * value minus bias; unknown features contribute 0.
double Score(const LinearModel &model, const SparseVector &v);
// Logistic of the score. Throws LearnError for hinge models.
double PredictProb(const LinearModel &model, const SparseVector &v);
// Hinge: score > 0. Log: probability > 0.5.
bool Positive(const LinearModel &model, const SparseVector &v);
double Logistic(double score);

// Regularized objectives over a TrainSet with weights indexed by its vocab.
// lambda multiplies half the squared norm (bias included when fit).
double HingeObjective(const TrainSet &ts, const std::vector<double> &w,
                      double bias, double lambda);
double LogClassifierObjective(const TrainSet &ts, const std::vector<double> &w,
                              double bias, double lambda);
// Gradient w.r.t. (w, bias); the bias component is the last element.
std::vector<double> LogClassifierGradient(const TrainSet &ts,
                                          const std::vector<double> &w,
                                          double bias, double lambda);
double LogRankerObjective(const TrainSet &ts, const std::vector<double> &w,
                          double lambda);
std::vector<double> LogRankerGradient(const TrainSet &ts,
                                      const std::vector<double> &w,
                                      double lambda);

// Dense weight vector of a model over a TrainSet's vocabulary.
std::vector<double> DenseWeights(const LinearModel &model, const TrainSet &ts);

nlohmann::ordered_json ModelToJson(const LinearModel &model);
LinearModel ModelFromJson(const nlohmann::json &j);
void SaveModel(const LinearModel &model, const std::string &path);
LinearModel LoadModel(const std::string &path);

}  // namespace coref

#endif  // COREF_LEARN_H_
