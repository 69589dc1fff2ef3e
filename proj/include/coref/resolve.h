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

#ifndef COREF_RESOLVE_H_
#define COREF_RESOLVE_H_

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/corpus.h"
#include "coref/features.h"
#include "coref/learn.h"

namespace coref {

enum class Family {
  kHeadMatch,
  kMentionPair,
  kEntityMention,
  kMentionRanking,
  kClusterRanking,
};
enum class Linking { kClosestFirst, kBestFirst };
enum class AnaphMode { kPipeline, kJoint };

// Long names ("MENTION_PAIR"); FromString also accepts the short flags
// hm/mp/em/mr/cr, closest/best and pipeline/joint.
std::string_view ToString(Family f);
std::string_view ToString(Linking l);
std::string_view ToString(AnaphMode a);
bool FromString(std::string_view s, Family *f);
bool FromString(std::string_view s, Linking *l);
bool FromString(std::string_view s, AnaphMode *a);

bool IsRankingFamily(Family f);

class ResolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResolverSpec {
  Family family = Family::kHeadMatch;
  FeatureSetId fs = FeatureSetId::kConventional;
  Linking linking = Linking::kClosestFirst;
  AnaphMode anaph = AnaphMode::kJoint;
  LinearModel coref_model;
  std::optional<LinearModel> anaph_model;
};

// Throws ResolveError on inconsistent specs.
void ValidateSpec(const ResolverSpec &spec);

struct Resolution {
  Partition partition;
  // Mention each mention was linked to, or kNoMention for a new cluster.
  std::vector<int> links;
};

// Incremental left-to-right clustering. `decide` sees the clusters built so
// far (creation order, members ascending) and returns a mention inside the
// cluster to join, or kNoMention to start a new cluster.
using Decider =
    std::function<int(int k, const std::vector<std::vector<int>> &clusters)>;
Resolution RunIncremental(const Document &doc, const Decider &decide);

using PairScorer = std::function<double(int j, int k)>;
using ClusterScorer =
    std::function<double(const std::vector<int> &cluster, int k)>;
using MentionScorer = std::function<double(int k)>;
using MentionGate = std::function<bool(int k)>;

// Classification linking: a candidate is positive iff its score exceeds
// `threshold`.
Decider PairLinker(PairScorer score, double threshold, Linking linking);
Decider ClusterLinker(ClusterScorer score, double threshold, Linking linking);

// Ranking: argmax over candidates, ties to the closest. With `gate`,
// mentions it rejects start new clusters. With `null_score`, a new cluster
// is started only when the null option strictly beats every candidate.
Decider PairRanker(PairScorer score, MentionGate gate,
                   MentionScorer null_score);
Decider ClusterRanker(ClusterScorer score, MentionGate gate,
                      MentionScorer null_score);

// Links to the closest preceding mention with the same head.
Decider HeadMatchDecider(const Document &doc);

// Decider for spec.family backed by the spec's models. `doc` and `spec`
// must outlive the returned decider.
Decider ModelDecider(const Document &doc, const ResolverSpec &spec);

Resolution LinkPairs(const Document &doc, const PairScorer &score,
                     double threshold, Linking linking);
Resolution LinkClusters(const Document &doc, const ClusterScorer &score,
                        double threshold, Linking linking);
Resolution RankPairs(const Document &doc, const PairScorer &score,
                     const MentionGate &gate, const MentionScorer &null_score);
Resolution RankClusters(const Document &doc, const ClusterScorer &score,
                        const MentionGate &gate,
                        const MentionScorer &null_score);

Partition HeadMatch(const Document &doc);

Resolution ResolveMentionPair(const Document &doc, const ResolverSpec &spec);
Resolution ResolveEntityMention(const Document &doc, const ResolverSpec &spec);
Resolution ResolveMentionRanking(const Document &doc, const ResolverSpec &spec);
Resolution ResolveClusterRanking(const Document &doc, const ResolverSpec &spec);
// Dispatches on spec.family.
Resolution Resolve(const Document &doc, const ResolverSpec &spec);

// Applies the test-time unseen marking from the model's vocabulary when the
// feature set has lexical features.
Document PrepareTestDocument(const Document &doc, const ResolverSpec &spec);

// Resolver bundle file: spec fields plus both models.
nlohmann::ordered_json SpecToJson(const ResolverSpec &spec);
ResolverSpec SpecFromJson(const nlohmann::json &j);
void SaveSpec(const ResolverSpec &spec, const std::string &path);
ResolverSpec LoadSpec(const std::string &path);

}  // namespace coref

#endif  // COREF_RESOLVE_H_
