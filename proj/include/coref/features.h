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

#ifndef COREF_FEATURES_H_
#define COREF_FEATURES_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coref/corpus.h"

namespace coref {

// Named feature vector. Zero-valued entries are never stored.
class SparseVector {
 public:
  using Map = std::map<std::string, double>;

  SparseVector() = default;
  SparseVector(std::initializer_list<Map::value_type> init);

  // Adds `value` to the entry for `name`; drops the entry if it becomes 0.
  void Add(const std::string &name, double value = 1.0);
  double Get(const std::string &name) const;
  bool Has(const std::string &name) const { return entries_.count(name) > 0; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Set union. Entries present on both sides must agree; the shared value
  // is kept once.
  void Merge(const SparseVector &other);

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }
  const Map &entries() const { return entries_; }

  bool operator==(const SparseVector &other) const = default;

 private:
  Map entries_;
};

enum class FeatureSetId { kConventional, kLexical, kCombined };

std::string_view ToString(FeatureSetId fs);
bool FromString(std::string_view s, FeatureSetId *fs);

// Table of the 39 pairwise coreference features. Features 1-3 describe the
// candidate antecedent, 4-10 the active mention, 11-39 the pair.
struct PairFeatureDef {
  int number;
  std::string name;
  // Every value the feature can take; used to enumerate binarized features.
  std::vector<std::string> domain;
};
const std::vector<PairFeatureDef> &PairFeatureDefs();

inline constexpr int kNumPairFeatures = 39;
inline constexpr int kNumAnaphoricityFeatures = 26;

// Sentence-distance bins: "0".."4" and "5+".
std::string DistanceBin(int sentence_distance);

// ALIAS relation between two mentions.
bool IsAlias(const Document &doc, const Mention &a, const Mention &b);

// Conventional pairwise features for candidate j and active mention k.
// Emits exactly one binarized NAME=VALUE entry per table row.
SparseVector ConventionalPair(const Document &doc, int j, int k);

// Features 4-10 (active-mention description) alone.
SparseVector ActiveMentionFeatures(const Document &doc, int k);

// The 26 anaphoricity-determination features of mention k.
SparseVector Anaphoricity(const Document &doc, int k);

// Lexical pair features (unseen, lexical, semi-lexical, ALIAS, DISTANCE).
// Honors the unseen flags set by preprocessing.
SparseVector LexicalPair(const Document &doc, int j, int k);

// Cluster-level predicates over a per-member true count.
enum class Predicate { kNone, kMostFalse, kMostTrue, kAll };
Predicate PredicateFor(int true_count, int cluster_size);
std::string_view PredicatePrefix(Predicate p);

// Active-mention features plus one predicate per binarized relational
// feature (features 11-39).
SparseVector ClusterConventional(const Document &doc,
                                 std::span<const int> cluster, int k);

// Predicate-encoded ALIAS/DISTANCE plus frequency-valued unseen, lexical
// and semi-lexical features between k and each member.
SparseVector ClusterLexical(const Document &doc, std::span<const int> cluster,
                            int k);

// Features of the "start a new cluster" option.
SparseVector NullOption(const Document &doc, int k, FeatureSetId fs);

// Feature groups for ablation.
enum class FeatureGroup {
  kUnseen,
  kLexical,
  kSemiLexical,
  kDistance,
  kAlias,
  kStringMatching,
  kGrammatical,
  kSemantic,
};
std::string_view ToString(FeatureGroup g);
bool FromString(std::string_view s, FeatureGroup *g);

// Group of a feature name under a feature set (ALIAS folds into SEMANTIC
// whenever conventional features are present).
FeatureGroup GroupOf(std::string_view name, FeatureSetId fs);

// Default grouping: 4 groups for Conventional, 5 for Lexical, 7 for
// Combined.
std::vector<FeatureGroup> DefaultGroups(FeatureSetId fs);

// Dispatches pair, cluster and null-option extraction for one feature set,
// optionally dropping whole feature groups.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(FeatureSetId fs,
                            std::vector<FeatureGroup> dropped = {});

  FeatureSetId feature_set() const { return fs_; }
  const std::vector<FeatureGroup> &dropped() const { return dropped_; }

  SparseVector Pair(const Document &doc, int j, int k) const;
  SparseVector Cluster(const Document &doc, std::span<const int> cluster,
                       int k) const;
  SparseVector Null(const Document &doc, int k) const;

 private:
  SparseVector Filter(SparseVector v) const;

  FeatureSetId fs_;
  std::vector<FeatureGroup> dropped_;
};

}  // namespace coref

#endif  // COREF_FEATURES_H_
