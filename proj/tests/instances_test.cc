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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "coref/instances.h"
#include "coref/synth.h"
#include "doctest.h"
#include "test_util.h"

namespace coref {
namespace {

using testing::NominationExample;

// (candidate, label) pairs of the group of mention k, in generation order.
std::vector<std::pair<std::string, double>> GroupOf(const TrainSet &ts, int k) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto &inst : ts.instances) {
    if (inst.k == k) out.emplace_back(inst.candidate, inst.label);
  }
  return out;
}

using Rows = std::vector<std::pair<std::string, double>>;

const FeatureExtractor kConv(FeatureSetId::kConventional);

TEST_CASE("mention-pair instances for the nomination example") {
  TrainSet ts;
  GenMentionPair(NominationExample(), kConv, &ts);
  CHECK(ts.kind == TaskKind::kClassify);
  // "his" pairs with Barack Obama and Hillary Rodham Clinton; "He" with the
  // three mentions back to "his".
  CHECK(GroupOf(ts, 5) == Rows{{"4", -1.0}, {"3", -1.0}, {"2", 1.0}});
  CHECK(ts.instances.size() == 5);
}

TEST_CASE("entity-mention instances for the nomination example") {
  TrainSet ts;
  GenEntityMention(NominationExample(), kConv, &ts);
  CHECK(GroupOf(ts, 5) == Rows{{"{4}", -1.0}, {"{3}", -1.0}, {"{0,2}", 1.0}});
}

TEST_CASE("mention-ranking instances for the nomination example") {
  TrainSet ts;
  GenMentionRanking(NominationExample(), kConv, false, &ts);
  CHECK(ts.kind == TaskKind::kRank);
  CHECK(GroupOf(ts, 5) == Rows{{"4", 1.0}, {"3", 1.0}, {"2", 2.0}});

  TrainSet joint;
  GenMentionRanking(NominationExample(), kConv, true, &joint);
  CHECK(GroupOf(joint, 4) ==
        Rows{{"3", 1.0}, {"2", 1.0}, {"1", 1.0}, {"0", 1.0}, {"NULL", 2.0}});
  CHECK(GroupOf(joint, 0) == Rows{{"NULL", 2.0}});
}

TEST_CASE("cluster-ranking instances for the nomination example") {
  TrainSet ts;
  GenClusterRanking(NominationExample(), kConv, false, &ts);
  CHECK(GroupOf(ts, 5) ==
        Rows{{"{4}", 1.0}, {"{3}", 1.0}, {"{0,2}", 2.0}, {"{1}", 1.0}});

  TrainSet joint;
  GenClusterRanking(NominationExample(), kConv, true, &joint);
  CHECK(GroupOf(joint, 5) == Rows{{"{4}", 1.0},
                                  {"{3}", 1.0},
                                  {"{0,2}", 2.0},
                                  {"{1}", 1.0},
                                  {"NULL", 1.0}});
  CHECK(GroupOf(joint, 1) == Rows{{"{0}", 1.0}, {"NULL", 2.0}});
}

TEST_CASE("anaphoricity instances for the nomination example") {
  TrainSet ts;
  GenAnaphoricity(NominationExample(), &ts);
  std::vector<double> labels;
  for (const auto &inst : ts.instances) labels.push_back(inst.label);
  CHECK(labels == std::vector<double>{-1, -1, 1, -1, -1, 1});
}

TEST_CASE("degenerate documents") {
  Document d = NominationExample();
  d.gold.clusters = {{0}, {1}, {2}, {3}, {4}, {5}};
  TrainSet mp, em;
  GenMentionPair(d, kConv, &mp);
  GenEntityMention(d, kConv, &em);
  CHECK(mp.instances.empty());
  CHECK(em.instances.empty());

  d.gold.clusters = {{0, 1}, {2}, {3}, {4}, {5}};
  GenMentionPair(d, kConv, &mp);
  CHECK(GroupOf(mp, 1) == Rows{{"0", 1.0}});
}

TEST_CASE("mention-pair and pipeline mention-ranking share their vectors") {
  SynthConfig cfg;
  cfg.docs = 10;
  for (const auto &d : SynthCorpus(cfg)) {
    TrainSet mp, mr;
    GenMentionPair(d, kConv, &mp);
    GenMentionRanking(d, kConv, false, &mr);
    REQUIRE(mp.instances.size() == mr.instances.size());
    std::multiset<std::pair<std::string, SparseVector::Map>> a, b;
    for (size_t i = 0; i < mp.instances.size(); ++i) {
      a.insert({GroupId(d.doc_id, mp.instances[i].k), mp.Vector(i).entries()});
      b.insert({mr.instances[i].group, mr.Vector(i).entries()});
    }
    CHECK(a == b);
  }
}

TEST_CASE("joint groups have exactly one correct instance") {
  SynthConfig cfg;
  cfg.docs = 10;
  FeatureExtractor fx(FeatureSetId::kCombined);
  for (const auto &d : SynthCorpus(cfg)) {
    for (bool cluster : {false, true}) {
      TrainSet ts;
      if (cluster) {
        GenClusterRanking(d, fx, true, &ts);
      } else {
        GenMentionRanking(d, fx, true, &ts);
      }
      std::map<std::string, int> correct;
      for (const auto &inst : ts.instances) correct[inst.group] += inst.label == 2.0;
      CHECK(static_cast<int>(correct.size()) == d.size());
      for (const auto &[group, n] : correct) CHECK(n == 1);
    }
  }
}

TEST_CASE("gold prefix clusters are disjoint and precede the mention") {
  SynthConfig cfg;
  cfg.docs = 10;
  for (const auto &d : SynthCorpus(cfg)) {
    for (int k = 0; k < d.size(); ++k) {
      std::set<int> seen;
      for (const auto &c : GoldPrefixClusters(d, k)) {
        for (int id : c) {
          CHECK(id < k);
          CHECK(seen.insert(id).second);
        }
      }
      CHECK(static_cast<int>(seen.size()) == k);
    }
  }
}

TEST_CASE("vocabulary covers every instance feature") {
  TrainSet ts;
  GenClusterRanking(NominationExample(), FeatureExtractor(FeatureSetId::kCombined), true,
                    &ts);
  for (const auto &inst : ts.instances) {
    CHECK(std::is_sorted(inst.features.begin(), inst.features.end()));
    for (const auto &[id, value] : inst.features) {
      CHECK(id >= 0);
      CHECK(id < ts.vocab.size());
    }
  }
  std::ostringstream out;
  DumpInstances(ts, out);
  const std::string dump = out.str();
  CHECK(std::count(dump.begin(), dump.end(), '\n') ==
        static_cast<long>(ts.instances.size()));

  TrainSet merged;
  merged.Append(ts);
  for (size_t i = 0; i < ts.instances.size(); ++i) {
    CHECK(merged.Vector(i) == ts.Vector(i));
  }
}

}  // namespace
}  // namespace coref
