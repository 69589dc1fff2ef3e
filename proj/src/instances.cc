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

#include "coref/instances.h"

#include <algorithm>

#include "json.hpp"

namespace coref {

std::string_view ToString(TaskKind kind) {
  return kind == TaskKind::kClassify ? "CLASSIFY" : "RANK";
}

bool FromString(std::string_view s, TaskKind *kind) {
  if (s == "CLASSIFY") {
    *kind = TaskKind::kClassify;
  } else if (s == "RANK") {
    *kind = TaskKind::kRank;
  } else {
    return false;
  }
  return true;
}

int FeatureVocab::Intern(const std::string &name) {
  auto [it, inserted] = ids_.emplace(name, size());
  if (inserted) names_.push_back(name);
  return it->second;
}

int FeatureVocab::Find(const std::string &name) const {
  auto it = ids_.find(name);
  return it == ids_.end() ? -1 : it->second;
}

void TrainSet::Add(const SparseVector &v, double label, std::string group,
                   std::string doc_id, int k, std::string candidate) {
  Instance inst;
  inst.features.reserve(v.size());
  for (const auto &[name, value] : v) {
    inst.features.emplace_back(vocab.Intern(name), value);
  }
  std::sort(inst.features.begin(), inst.features.end());
  inst.label = label;
  inst.group = std::move(group);
  inst.doc_id = std::move(doc_id);
  inst.k = k;
  inst.candidate = std::move(candidate);
  instances.push_back(std::move(inst));
}

void TrainSet::Append(const TrainSet &other) {
  for (const Instance &src : other.instances) {
    Instance inst = src;
    for (auto &[id, value] : inst.features) {
      id = vocab.Intern(other.vocab.name(id));
    }
    std::sort(inst.features.begin(), inst.features.end());
    instances.push_back(std::move(inst));
  }
}

SparseVector TrainSet::Vector(const Instance &inst) const {
  SparseVector v;
  for (const auto &[id, value] : inst.features) v.Add(vocab.name(id), value);
  return v;
}

std::string GroupId(const std::string &doc_id, int k) {
  return doc_id + "#" + std::to_string(k);
}

int ClosestAntecedent(const Document &doc, int k) {
  for (const auto &cluster : doc.gold.clusters) {
    if (std::find(cluster.begin(), cluster.end(), k) == cluster.end()) continue;
    int best = kNoMention;
    for (int id : cluster) {
      if (id < k) best = std::max(best, id);
    }
    return best;
  }
  return kNoMention;
}

std::vector<std::vector<int>> GoldPrefixClusters(const Document &doc, int k) {
  std::vector<std::vector<int>> out;
  for (const auto &cluster : doc.gold.clusters) {
    std::vector<int> prefix;
    for (int id : cluster) {
      if (id < k) prefix.push_back(id);
    }
    if (prefix.empty()) continue;
    std::sort(prefix.begin(), prefix.end());
    out.push_back(std::move(prefix));
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.back() > b.back();
  });
  return out;
}

std::string ClusterSignature(const std::vector<int> &cluster) {
  std::string s = "{";
  for (size_t i = 0; i < cluster.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(cluster[i]);
  }
  return s + "}";
}

void GenMentionPair(const Document &doc, const FeatureExtractor &fx,
                    TrainSet *ts) {
  ts->kind = TaskKind::kClassify;
  for (int k = 1; k < doc.size(); ++k) {
    int ante = ClosestAntecedent(doc, k);
    if (ante == kNoMention) continue;
    std::string group = GroupId(doc.doc_id, k);
    for (int j = k - 1; j >= ante; --j) {
      ts->Add(fx.Pair(doc, j, k), j == ante ? 1.0 : -1.0, group, doc.doc_id,
              k, std::to_string(j));
    }
  }
}

void GenEntityMention(const Document &doc, const FeatureExtractor &fx,
                      TrainSet *ts) {
  ts->kind = TaskKind::kClassify;
  for (int k = 1; k < doc.size(); ++k) {
    int ante = ClosestAntecedent(doc, k);
    if (ante == kNoMention) continue;
    std::string group = GroupId(doc.doc_id, k);
    for (const auto &cluster : GoldPrefixClusters(doc, k)) {
      bool own = std::find(cluster.begin(), cluster.end(), ante) !=
                 cluster.end();
      if (!own && cluster.back() < ante) continue;
      ts->Add(fx.Cluster(doc, cluster, k), own ? 1.0 : -1.0, group,
              doc.doc_id, k, ClusterSignature(cluster));
    }
  }
}

void GenMentionRanking(const Document &doc, const FeatureExtractor &fx,
                       bool joint, TrainSet *ts) {
  ts->kind = TaskKind::kRank;
  for (int k = 0; k < doc.size(); ++k) {
    int ante = ClosestAntecedent(doc, k);
    if (!joint && ante == kNoMention) continue;
    std::string group = GroupId(doc.doc_id, k);
    int lowest = joint ? 0 : ante;
    for (int j = k - 1; j >= lowest; --j) {
      ts->Add(fx.Pair(doc, j, k), j == ante ? 2.0 : 1.0, group, doc.doc_id, k,
              std::to_string(j));
    }
    if (joint) {
      ts->Add(fx.Null(doc, k), ante == kNoMention ? 2.0 : 1.0, group,
              doc.doc_id, k, "NULL");
    }
  }
}

void GenClusterRanking(const Document &doc, const FeatureExtractor &fx,
                       bool joint, TrainSet *ts) {
  ts->kind = TaskKind::kRank;
  for (int k = 0; k < doc.size(); ++k) {
    int ante = ClosestAntecedent(doc, k);
    if (!joint && ante == kNoMention) continue;
    std::string group = GroupId(doc.doc_id, k);
    for (const auto &cluster : GoldPrefixClusters(doc, k)) {
      bool own = std::find(cluster.begin(), cluster.end(), ante) !=
                 cluster.end();
      ts->Add(fx.Cluster(doc, cluster, k), own ? 2.0 : 1.0, group, doc.doc_id,
              k, ClusterSignature(cluster));
    }
    if (joint) {
      ts->Add(fx.Null(doc, k), ante == kNoMention ? 2.0 : 1.0, group,
              doc.doc_id, k, "NULL");
    }
  }
}

void GenAnaphoricity(const Document &doc, TrainSet *ts) {
  ts->kind = TaskKind::kClassify;
  for (int k = 0; k < doc.size(); ++k) {
    double label = ClosestAntecedent(doc, k) == kNoMention ? -1.0 : 1.0;
    ts->Add(Anaphoricity(doc, k), label, "", doc.doc_id, k, "");
  }
}

void DumpInstances(const TrainSet &ts, std::ostream &out) {
  for (const Instance &inst : ts.instances) {
    nlohmann::ordered_json rec;
    rec["group"] = inst.group;
    rec["label"] = inst.label;
    rec["candidate"] = inst.candidate;
    nlohmann::ordered_json feats = nlohmann::ordered_json::array();
    for (const auto &[name, value] : ts.Vector(inst)) {
      feats.push_back({name, value});
    }
    rec["features"] = std::move(feats);
    out << rec.dump() << "\n";
  }
}

}  // namespace coref
