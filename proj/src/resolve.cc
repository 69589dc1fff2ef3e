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

#include "coref/resolve.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

namespace coref {

namespace {

struct FamilyName {
  Family family;
  std::string_view name;
  std::string_view flag;
};

constexpr FamilyName kFamilies[] = {
    {Family::kHeadMatch, "HEAD_MATCH", "hm"},
    {Family::kMentionPair, "MENTION_PAIR", "mp"},
    {Family::kEntityMention, "ENTITY_MENTION", "em"},
    {Family::kMentionRanking, "MENTION_RANKING", "mr"},
    {Family::kClusterRanking, "CLUSTER_RANKING", "cr"},
};

}  // namespace

std::string_view ToString(Family f) {
  for (const auto &e : kFamilies) {
    if (e.family == f) return e.name;
  }
  return "?";
}

std::string_view ToString(Linking l) {
  return l == Linking::kClosestFirst ? "CLOSEST_FIRST" : "BEST_FIRST";
}

std::string_view ToString(AnaphMode a) {
  return a == AnaphMode::kPipeline ? "PIPELINE" : "JOINT";
}

bool FromString(std::string_view s, Family *f) {
  for (const auto &e : kFamilies) {
    if (s == e.name || s == e.flag) {
      *f = e.family;
      return true;
    }
  }
  return false;
}

bool FromString(std::string_view s, Linking *l) {
  if (s == "CLOSEST_FIRST" || s == "closest") {
    *l = Linking::kClosestFirst;
  } else if (s == "BEST_FIRST" || s == "best") {
    *l = Linking::kBestFirst;
  } else {
    return false;
  }
  return true;
}

bool FromString(std::string_view s, AnaphMode *a) {
  if (s == "PIPELINE" || s == "pipeline") {
    *a = AnaphMode::kPipeline;
  } else if (s == "JOINT" || s == "joint") {
    *a = AnaphMode::kJoint;
  } else {
    return false;
  }
  return true;
}

bool IsRankingFamily(Family f) {
  return f == Family::kMentionRanking || f == Family::kClusterRanking;
}

void ValidateSpec(const ResolverSpec &spec) {
  if (spec.family == Family::kHeadMatch) return;
  const LinearModel &m = spec.coref_model;
  if (!m.meta.feature_set.empty() && m.meta.feature_set != ToString(spec.fs)) {
    throw ResolveError("model/feature-set mismatch: model uses " +
                       m.meta.feature_set + ", resolver uses " +
                       std::string(ToString(spec.fs)));
  }
  if (!m.meta.family.empty() && m.meta.family != ToString(spec.family)) {
    throw ResolveError("model/family mismatch: model trained for " +
                       m.meta.family);
  }
  TaskKind want =
      IsRankingFamily(spec.family) ? TaskKind::kRank : TaskKind::kClassify;
  if (m.kind != want) {
    throw ResolveError(std::string(ToString(spec.family)) + " needs a " +
                       std::string(ToString(want)) + " model");
  }
  if (IsRankingFamily(spec.family)) {
    if (spec.anaph == AnaphMode::kPipeline && !spec.anaph_model) {
      throw ResolveError("PIPELINE resolution needs an anaphoricity model");
    }
    if (spec.anaph == AnaphMode::kJoint && spec.anaph_model) {
      throw ResolveError("JOINT resolution takes no anaphoricity model");
    }
  }
}

Resolution RunIncremental(const Document &doc, const Decider &decide) {
  Resolution r;
  std::vector<std::vector<int>> clusters;
  std::vector<int> cluster_of(doc.size(), -1);
  r.links.assign(doc.size(), kNoMention);
  for (int k = 0; k < doc.size(); ++k) {
    int target = decide(k, clusters);
    if (target == kNoMention) {
      cluster_of[k] = static_cast<int>(clusters.size());
      clusters.push_back({k});
      continue;
    }
    if (target < 0 || target >= k) {
      throw ResolveError("decision links to a mention that does not precede");
    }
    r.links[k] = target;
    cluster_of[k] = cluster_of[target];
    clusters[cluster_of[k]].push_back(k);
  }
  r.partition.clusters = std::move(clusters);
  r.partition.Canonicalize();
  return r;
}

namespace {

// Cluster indices ordered by last mention, closest first.
std::vector<int> ByRecency(const std::vector<std::vector<int>> &clusters) {
  std::vector<int> order(clusters.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return clusters[a].back() > clusters[b].back();
  });
  return order;
}

}  // namespace

Decider PairLinker(PairScorer score, double threshold, Linking linking) {
  return [score = std::move(score), threshold, linking](int k, const auto &) {
    int chosen = kNoMention;
    double best = 0.0;
    for (int j = k - 1; j >= 0; --j) {
      double s = score(j, k);
      if (!(s > threshold)) continue;
      if (linking == Linking::kClosestFirst) return j;
      if (chosen == kNoMention || s > best) {
        chosen = j;
        best = s;
      }
    }
    return chosen;
  };
}

Decider ClusterLinker(ClusterScorer score, double threshold, Linking linking) {
  return [score = std::move(score), threshold, linking](
             int k, const std::vector<std::vector<int>> &clusters) {
    int chosen = kNoMention;
    double best = 0.0;
    for (int c : ByRecency(clusters)) {
      double s = score(clusters[c], k);
      if (!(s > threshold)) continue;
      if (linking == Linking::kClosestFirst) return clusters[c].back();
      if (chosen == kNoMention || s > best) {
        chosen = clusters[c].back();
        best = s;
      }
    }
    return chosen;
  };
}

Decider PairRanker(PairScorer score, MentionGate gate,
                   MentionScorer null_score) {
  return [score = std::move(score), gate = std::move(gate),
          null_score = std::move(null_score)](int k, const auto &) {
    if (k == 0) return kNoMention;
    if (gate && !gate(k)) return kNoMention;
    int chosen = kNoMention;
    double best = 0.0;
    for (int j = k - 1; j >= 0; --j) {
      double s = score(j, k);
      if (chosen == kNoMention || s > best) {
        chosen = j;
        best = s;
      }
    }
    if (null_score && null_score(k) > best) return kNoMention;
    return chosen;
  };
}

Decider ClusterRanker(ClusterScorer score, MentionGate gate,
                      MentionScorer null_score) {
  return [score = std::move(score), gate = std::move(gate),
          null_score = std::move(null_score)](
             int k, const std::vector<std::vector<int>> &clusters) {
    if (clusters.empty()) return kNoMention;
    if (gate && !gate(k)) return kNoMention;
    int chosen = kNoMention;
    double best = 0.0;
    for (int c : ByRecency(clusters)) {
      double s = score(clusters[c], k);
      if (chosen == kNoMention || s > best) {
        chosen = clusters[c].back();
        best = s;
      }
    }
    if (null_score && null_score(k) > best) return kNoMention;
    return chosen;
  };
}

Decider HeadMatchDecider(const Document &doc) {
  std::vector<std::string> heads;
  for (const Mention &m : doc.mentions) heads.push_back(HeadOf(m, doc));
  return [heads = std::move(heads)](int k, const auto &) {
    for (int j = k - 1; j >= 0; --j) {
      if (heads[j] == heads[k]) return j;
    }
    return kNoMention;
  };
}

Resolution LinkPairs(const Document &doc, const PairScorer &score,
                     double threshold, Linking linking) {
  return RunIncremental(doc, PairLinker(score, threshold, linking));
}

Resolution LinkClusters(const Document &doc, const ClusterScorer &score,
                        double threshold, Linking linking) {
  return RunIncremental(doc, ClusterLinker(score, threshold, linking));
}

Resolution RankPairs(const Document &doc, const PairScorer &score,
                     const MentionGate &gate, const MentionScorer &null_score) {
  return RunIncremental(doc, PairRanker(score, gate, null_score));
}

Resolution RankClusters(const Document &doc, const ClusterScorer &score,
                        const MentionGate &gate,
                        const MentionScorer &null_score) {
  return RunIncremental(doc, ClusterRanker(score, gate, null_score));
}

Partition HeadMatch(const Document &doc) {
  return RunIncremental(doc, HeadMatchDecider(doc)).partition;
}

namespace {

void RequireFamily(const ResolverSpec &spec, Family f) {
  if (spec.family != f) {
    throw ResolveError("resolver spec is for " +
                       std::string(ToString(spec.family)) + ", not " +
                       std::string(ToString(f)));
  }
}

// Probability for log models, raw score for hinge models.
double Confidence(const LinearModel &m, const SparseVector &v) {
  return m.loss == Loss::kLog ? PredictProb(m, v) : Score(m, v);
}

double Threshold(const LinearModel &m) {
  return m.loss == Loss::kLog ? 0.5 : 0.0;
}

MentionGate PipelineGate(const Document &doc, const ResolverSpec &spec) {
  if (spec.anaph != AnaphMode::kPipeline) return {};
  const LinearModel &am = *spec.anaph_model;
  return [&doc, &am](int k) { return Positive(am, Anaphoricity(doc, k)); };
}

MentionScorer JointNull(const Document &doc, const ResolverSpec &spec,
                        const FeatureExtractor &fx) {
  if (spec.anaph != AnaphMode::kJoint) return {};
  const LinearModel &m = spec.coref_model;
  return [&doc, &m, fx](int k) { return Score(m, fx.Null(doc, k)); };
}

}  // namespace

Decider ModelDecider(const Document &doc, const ResolverSpec &spec) {
  ValidateSpec(spec);
  FeatureExtractor fx(spec.fs);
  const LinearModel &m = spec.coref_model;
  switch (spec.family) {
    case Family::kHeadMatch:
      return HeadMatchDecider(doc);
    case Family::kMentionPair:
      return PairLinker(
          [&doc, &m, fx](int j, int k) {
            return Confidence(m, fx.Pair(doc, j, k));
          },
          Threshold(m), spec.linking);
    case Family::kEntityMention:
      return ClusterLinker(
          [&doc, &m, fx](const std::vector<int> &c, int k) {
            return Confidence(m, fx.Cluster(doc, c, k));
          },
          Threshold(m), spec.linking);
    case Family::kMentionRanking:
      return PairRanker(
          [&doc, &m, fx](int j, int k) { return Score(m, fx.Pair(doc, j, k)); },
          PipelineGate(doc, spec), JointNull(doc, spec, fx));
    case Family::kClusterRanking:
      return ClusterRanker(
          [&doc, &m, fx](const std::vector<int> &c, int k) {
            return Score(m, fx.Cluster(doc, c, k));
          },
          PipelineGate(doc, spec), JointNull(doc, spec, fx));
  }
  throw ResolveError("unknown family");
}

Resolution ResolveMentionPair(const Document &doc, const ResolverSpec &spec) {
  RequireFamily(spec, Family::kMentionPair);
  return RunIncremental(doc, ModelDecider(doc, spec));
}

Resolution ResolveEntityMention(const Document &doc, const ResolverSpec &spec) {
  RequireFamily(spec, Family::kEntityMention);
  return RunIncremental(doc, ModelDecider(doc, spec));
}

Resolution ResolveMentionRanking(const Document &doc,
                                 const ResolverSpec &spec) {
  RequireFamily(spec, Family::kMentionRanking);
  return RunIncremental(doc, ModelDecider(doc, spec));
}

Resolution ResolveClusterRanking(const Document &doc,
                                 const ResolverSpec &spec) {
  RequireFamily(spec, Family::kClusterRanking);
  return RunIncremental(doc, ModelDecider(doc, spec));
}

Resolution Resolve(const Document &doc, const ResolverSpec &spec) {
  return RunIncremental(doc, ModelDecider(doc, spec));
}

Document PrepareTestDocument(const Document &doc, const ResolverSpec &spec) {
  if (spec.family == Family::kHeadMatch ||
      spec.fs == FeatureSetId::kConventional) {
    return doc;
  }
  const auto &words = spec.coref_model.meta.unseen_vocab;
  std::set<std::string> vocab(words.begin(), words.end());
  return UnseenTest({doc}, vocab).front();
}

nlohmann::ordered_json SpecToJson(const ResolverSpec &spec) {
  nlohmann::ordered_json j;
  j["format"] = "coref-resolver";
  j["version"] = 1;
  j["family"] = ToString(spec.family);
  j["features"] = ToString(spec.fs);
  j["linking"] = ToString(spec.linking);
  j["anaph"] = ToString(spec.anaph);
  j["coref_model"] = ModelToJson(spec.coref_model);
  j["anaph_model"] = spec.anaph_model ? ModelToJson(*spec.anaph_model)
                                      : nlohmann::ordered_json();
  return j;
}

ResolverSpec SpecFromJson(const nlohmann::json &j) {
  try {
    if (j.at("format").get<std::string>() != "coref-resolver") {
      throw ResolveError("not a resolver record");
    }
    ResolverSpec spec;
    if (!FromString(j.at("family").get<std::string>(), &spec.family) ||
        !FromString(j.at("features").get<std::string>(), &spec.fs) ||
        !FromString(j.at("linking").get<std::string>(), &spec.linking) ||
        !FromString(j.at("anaph").get<std::string>(), &spec.anaph)) {
      throw ResolveError("bad resolver settings");
    }
    spec.coref_model = ModelFromJson(j.at("coref_model"));
    if (!j.at("anaph_model").is_null()) {
      spec.anaph_model = ModelFromJson(j.at("anaph_model"));
    }
    return spec;
  } catch (const nlohmann::json::exception &e) {
    throw ResolveError(std::string("malformed resolver: ") + e.what());
  }
}

void SaveSpec(const ResolverSpec &spec, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ResolveError("cannot write " + path);
  out << SpecToJson(spec).dump(1) << "\n";
}

ResolverSpec LoadSpec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ResolveError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ResolveError("malformed resolver file " + path + ": " + e.what());
  }
  return SpecFromJson(j);
}

}  // namespace coref
