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

#ifndef COREF_INSTANCES_H_
#define COREF_INSTANCES_H_

#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coref/corpus.h"
#include "coref/features.h"

namespace coref {

enum class TaskKind { kClassify, kRank };

std::string_view ToString(TaskKind kind);
bool FromString(std::string_view s, TaskKind *kind);

// Feature name interning in first-seen order.
class FeatureVocab {
 public:
  int Intern(const std::string &name);
  // -1 when absent.
  int Find(const std::string &name) const;
  const std::string &name(int id) const { return names_[id]; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string> &names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

using FeatureList = std::vector<std::pair<int, double>>;

struct Instance {
  FeatureList features;  // sorted by feature id
  double label = 0.0;    // +1/-1 for classification, 1/2 for ranking
  std::string group;     // "doc_id#k"; empty for ungrouped classification
  std::string doc_id;
  int k = kNoMention;
  // Candidate antecedent id, cluster signature "{a,b}", or "NULL".
  std::string candidate;
};

struct TrainSet {
  TaskKind kind = TaskKind::kClassify;
  FeatureVocab vocab;
  std::vector<Instance> instances;

  // Interns the vector and appends an instance.
  void Add(const SparseVector &v, double label, std::string group,
           std::string doc_id, int k, std::string candidate);

  // Appends every instance of `other`, re-interning its features.
  void Append(const TrainSet &other);

  // Named view of one instance.
  SparseVector Vector(const Instance &inst) const;
  SparseVector Vector(size_t i) const { return Vector(instances[i]); }
};

std::string GroupId(const std::string &doc_id, int k);

// Gold structure helpers.
// Closest gold antecedent of k, or kNoMention for non-anaphoric mentions.
int ClosestAntecedent(const Document &doc, int k);
// Gold clusters restricted to mentions before k, ordered by last mention,
// closest first.
std::vector<std::vector<int>> GoldPrefixClusters(const Document &doc, int k);
std::string ClusterSignature(const std::vector<int> &cluster);

// Generators. Each appends into `ts` and sets its kind.
void GenMentionPair(const Document &doc, const FeatureExtractor &fx,
                    TrainSet *ts);
void GenEntityMention(const Document &doc, const FeatureExtractor &fx,
                      TrainSet *ts);
void GenMentionRanking(const Document &doc, const FeatureExtractor &fx,
                       bool joint, TrainSet *ts);
void GenClusterRanking(const Document &doc, const FeatureExtractor &fx,
                       bool joint, TrainSet *ts);
void GenAnaphoricity(const Document &doc, TrainSet *ts);

// One record per instance: group, label, candidate, sorted features.
void DumpInstances(const TrainSet &ts, std::ostream &out);

}  // namespace coref

#endif  // COREF_INSTANCES_H_
