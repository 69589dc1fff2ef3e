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


#include <map>
#include <set>

#include "coref/corpus.h"
#include "coref/synth.h"
#include "doctest.h"

namespace coref {
namespace {

TEST_CASE("synthetic corpora are valid and reproducible") {
  SynthConfig cfg;
  cfg.docs = 50;
  auto a = SynthCorpus(cfg);
  auto b = SynthCorpus(cfg);
  CHECK(a == b);
  REQUIRE(a.size() == 50);
  std::map<std::string, int> per_source;
  for (const auto &d : a) {
    CHECK_NOTHROW(ValidateDocument(d));
    ++per_source[d.source];
  }
  CHECK(per_source["NW"] == 25);
  CHECK(per_source["BN"] == 25);
  cfg.seed = 2;
  CHECK(SynthCorpus(cfg) != a);
}

TEST_CASE("synthetic documents respect their settings") {
  SynthConfig cfg;
  cfg.docs = 100;
  for (const auto &d : SynthCorpus(cfg)) {
    for (const auto &c : d.gold.clusters) {
      CHECK(static_cast<int>(c.size()) <= cfg.max_mentions_per_entity);
    }
    CHECK(static_cast<int>(d.gold.clusters.size()) >= cfg.min_entities);
    for (const auto &c : d.gold.clusters) {
      // A pronoun never opens a chain.
      CHECK(d.mentions[c.front()].mtype != MentionType::kPronoun);
    }
  }
}

TEST_CASE("pronouns are used only when gender identifies the referent") {
  SynthConfig cfg;
  cfg.docs = 100;
  cfg.pronoun_rate = 1.0;
  int pronouns = 0;
  for (const auto &d : SynthCorpus(cfg)) {
    std::map<Gender, std::set<int>> people;  // gender -> clusters
    for (size_t c = 0; c < d.gold.clusters.size(); ++c) {
      for (int id : d.gold.clusters[c]) {
        const Mention &m = d.mentions[id];
        if (m.mtype == MentionType::kProper && m.semclass == SemClass::kPerson) {
          people[m.gender].insert(static_cast<int>(c));
        }
      }
    }
    for (const auto &c : d.gold.clusters) {
      for (int id : c) {
        const Mention &m = d.mentions[id];
        if (m.mtype != MentionType::kPronoun) continue;
        ++pronouns;
        const Mention &first = d.mentions[c.front()];
        CHECK(people[first.gender].size() == 1);
      }
    }
  }
  CHECK(pronouns > 0);
}

}  // namespace
}  // namespace coref
