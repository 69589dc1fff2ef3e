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

#include <sstream>

#include "coref/corpus.h"
#include "coref/synth.h"
#include "doctest.h"
#include "test_util.h"

namespace coref {
namespace {

using testing::NominationExample;

Document TwoMentionDoc(const std::string &a, const std::string &b) {
  Document d;
  d.doc_id = "two";
  d.sentences = {{a}, {b}};
  for (int i = 0; i < 2; ++i) {
    Mention m;
    m.id = i;
    m.sent = i;
    m.start = 0;
    m.end = 1;
    m.mtype = MentionType::kCommon;
    d.mentions.push_back(m);
  }
  d.gold.clusters = {{0}, {1}};
  return d;
}

TEST_CASE("nomination example validates with four gold clusters") {
  Document d = NominationExample();
  CHECK_NOTHROW(ValidateDocument(d));
  CHECK(d.size() == 6);
  Partition want;
  want.clusters = {{0, 2, 5}, {1}, {3}, {4}};
  CHECK(d.gold == want);
}

TEST_CASE("serialize then parse is the identity") {
  Document d = NominationExample();
  d.mentions[3].head_start = 10;
  d.mentions[3].head_end = 11;
  d.mentions[1].appositive_with = 0;
  std::istringstream in(SerializeDocument(d) + "\n");
  auto docs = ParseCorpus(in);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0] == d);

  SynthConfig cfg;
  cfg.docs = 5;
  auto synth = SynthCorpus(cfg);
  std::ostringstream out;
  WriteCorpus(out, synth);
  std::istringstream back(out.str());
  CHECK(ParseCorpus(back) == synth);
}

TEST_CASE("overlapping gold clusters name the violated rule") {
  Document d = NominationExample();
  d.gold.clusters = {{0, 2, 5}, {1, 2}, {3}, {4}};
  try {
    ValidateDocument(d);
    FAIL("expected an error");
  } catch (const CorpusError &e) {
    CHECK(e.rule() == "clusters pairwise disjoint");
    CHECK(e.where().find("nomination") != std::string::npos);
  }
}

TEST_CASE("document invariants are enforced") {
  Document d = NominationExample();
  d.mentions[1].start = 20;
  d.mentions[1].end = 22;
  CHECK_THROWS_AS(ValidateDocument(d), CorpusError);

  d = NominationExample();
  d.mentions[0].definite = d.mentions[0].indefinite = true;
  CHECK_THROWS_AS(ValidateDocument(d), CorpusError);

  d = NominationExample();
  d.gold.clusters = {{0, 2}, {1}, {3}, {4}};
  CHECK_THROWS_AS(ValidateDocument(d), CorpusError);

  d = NominationExample();
  d.source = "BLOG";
  CHECK_THROWS_AS(ValidateDocument(d), CorpusError);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream in(SerializeDocument(NominationExample()) + "\n{not json\n");
  try {
    ParseCorpus(in);
    FAIL("expected an error");
  } catch (const CorpusError &e) {
    CHECK(e.where() == "line 2");
  }
}

TEST_CASE("head of a mention") {
  Document d = NominationExample();
  CHECK(HeadOf(d.mentions[1], d) == "hillary rodham clinton");
  CHECK(HeadOf(d.mentions[3], d) == "state");
  CHECK(HeadOf(d.mentions[5], d) == "he");
  d.mentions[3].head_start = 8;
  d.mentions[3].head_end = 9;
  CHECK(HeadOf(d.mentions[3], d) == "secretary");
  SynthConfig cfg;
  cfg.docs = 20;
  for (const auto &doc : SynthCorpus(cfg)) {
    for (const auto &m : doc.mentions) CHECK(!HeadOf(m, doc).empty());
  }
}

TEST_CASE("pronoun lexicon is closed under nominative forms") {
  const PronounLexicon &lex = DefaultPronounLexicon();
  CHECK(lex.size() > 40);
  for (const auto &[word, info] : lex.entries()) {
    CHECK(lex.Find(Lowercase(info.nominative)) != nullptr);
  }
  REQUIRE(lex.Find("his") != nullptr);
  CHECK(lex.Find("his")->gender == Gender::kMale);
  CHECK(lex.Find("his")->person == 3);
}

TEST_CASE("training-time unseen marking") {
  SynthConfig cfg;
  cfg.docs = 40;
  auto docs = SynthCorpus(cfg);
  for (const auto &d : UnseenTrain(docs, 0.0, 3)) {
    for (const auto &m : d.mentions) CHECK(!m.unseen);
  }

  // One draw that hits either airline mention marks both.
  Document d = TwoMentionDoc("airline", "airline");
  d.sentences = {{"the", "airline"}, {"the", "airline"}};
  d.mentions[0].end = d.mentions[1].end = 2;
  auto marked = UnseenTrain({d}, 0.5, 11);
  CHECK(marked[0].mentions[0].unseen);
  CHECK(marked[0].mentions[1].unseen);

  auto a = UnseenTrain(docs, 0.1, 5);
  auto b = UnseenTrain(docs, 0.1, 5);
  CHECK(a == b);
}

TEST_CASE("test-time unseen marking") {
  Document d = TwoMentionDoc("he", "carrier");
  d.mentions[0].mtype = MentionType::kPronoun;
  auto out = UnseenTest({d}, {"he", "obama"});
  CHECK(!out[0].mentions[0].unseen);
  CHECK(out[0].mentions[1].unseen);
  out = UnseenTest({d}, {});
  CHECK(out[0].mentions[0].unseen);
  CHECK(out[0].mentions[1].unseen);
  out = UnseenTest({d}, {"he", "carrier"});
  CHECK(!out[0].mentions[0].unseen);
  CHECK(!out[0].mentions[1].unseen);
}

TEST_CASE("partition files round trip") {
  Document d = NominationExample();
  PartitionDoc pd = ToPartitionDoc(d, d.gold);
  std::ostringstream out;
  WritePartitions(out, {pd});
  std::istringstream in(out.str());
  auto back = ParsePartitions(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].mentions == pd.mentions);
  CHECK(back[0].partition == pd.partition);
}

}  // namespace
}  // namespace coref
