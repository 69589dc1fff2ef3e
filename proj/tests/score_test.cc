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


#include <cmath>
#include <numbers>

#include "coref/score.h"
#include "coref/synth.h"
#include "doctest.h"
#include "test_util.h"

namespace coref {
namespace {

using testing::NominationExample;

// Partition document over lettered mentions; letter i has span (0, i, i+1).
PartitionDoc Letters(const std::vector<std::string> &clusters) {
  PartitionDoc pd;
  pd.doc_id = "d";
  for (const std::string &c : clusters) {
    std::vector<int> ids;
    for (char ch : c) {
      int id = static_cast<int>(pd.mentions.size());
      pd.mentions.push_back({id, 0, ch - 'a', ch - 'a' + 1});
      ids.push_back(id);
    }
    pd.partition.clusters.push_back(ids);
  }
  pd.partition.Canonicalize();
  return pd;
}

TEST_CASE("B3 hand cases") {
  ScoreReport r = BCubed(Letters({"abc", "d"}), Letters({"ab", "cd"}));
  CHECK(r.recall == doctest::Approx(2.0 / 3));
  CHECK(r.precision == doctest::Approx(3.0 / 4));
  CHECK(r.f1 == doctest::Approx(12.0 / 17));

  r = BCubed(Letters({"ab"}), Letters({"a", "b"}));
  CHECK(r.recall == doctest::Approx(0.5));
  CHECK(r.precision == doctest::Approx(1.0));
  CHECK(r.f1 == doctest::Approx(2.0 / 3));

  r = BCubed(Letters({"abc", "d"}), Letters({"abc", "d"}));
  CHECK(r.recall == 1.0);
  CHECK(r.precision == 1.0);
  CHECK(r.f1 == 1.0);
}

TEST_CASE("CEAF hand cases") {
  ScoreReport r = CeafPhi3(Letters({"abc", "d"}), Letters({"ab", "cd"}));
  CHECK(r.recall == doctest::Approx(0.75));
  CHECK(r.precision == doctest::Approx(0.75));
  CHECK(r.f1 == doctest::Approx(0.75));

  r = CeafPhi3(Letters({"ab", "c"}), Letters({"abc"}));
  CHECK(r.recall == doctest::Approx(2.0 / 3));
  CHECK(r.precision == doctest::Approx(2.0 / 3));

  r = CeafPhi3(Letters({"ab", "c"}), Letters({"ab", "c"}));
  CHECK(r.f1 == 1.0);
}

TEST_CASE("empty universes give zero reports") {
  PartitionDoc empty;
  empty.doc_id = "d";
  ScoreReport b = BCubed(empty, empty);
  ScoreReport c = CeafPhi3(empty, empty);
  CHECK(b.f1 == 0.0);
  CHECK(c.f1 == 0.0);
}

TEST_CASE("alignment is by exact span") {
  PartitionDoc key = Letters({"ab"});
  PartitionDoc resp = Letters({"ab", "z"});
  resp.mentions[1].end += 1;  // b off by one token
  MentionAlignment a = AlignMentions(key, resp);
  CHECK(a.response_to_key.size() == 1);
  CHECK(a.response_to_key.at(0) == 0);
  CHECK(a.key_to_response.count(1) == 0);
}

TEST_CASE("preprocessing drops only twinless singletons") {
  PartitionDoc key = Letters({"ab", "c"});
  PartitionDoc resp = Letters({"ab", "z", "cy"});
  PartitionDoc pre = PreprocessResponse(key, resp);
  CHECK(pre.mentions.size() == 4);
  for (const auto &m : pre.mentions) CHECK(m.start != 'z' - 'a');

  CHECK(PreprocessResponse(key, Letters({"abc"})).mentions.size() == 3);
  PartitionDoc singles = Letters({"a", "b", "c"});
  CHECK(PreprocessResponse(key, singles).mentions.size() == 3);

  Random rng(6);
  for (int i = 0; i < 200; ++i) {
    auto [k, r] = testing::RandomKeyResponse(rng, 10);
    PartitionDoc p = PreprocessResponse(k, r);
    MentionAlignment before = AlignMentions(k, r);
    MentionAlignment after = AlignMentions(k, p);
    CHECK(before.key_to_response.size() == after.key_to_response.size());
  }
}

TEST_CASE("metrics agree with the reference scorers") {
  Random rng(99);
  for (int i = 0; i < 300; ++i) {
    auto [key, resp] = testing::RandomKeyResponse(rng, 10);
    auto ks = testing::ToSpanClusters(key);
    auto rs = testing::RefPreprocess(ks, testing::ToSpanClusters(resp));
    DocScores got = ScoreDocument(key, resp);
    testing::RefScore b = testing::RefBCubed(ks, rs);
    testing::RefScore c = testing::RefCeaf(ks, rs);
    CHECK(std::abs(got.bcubed.recall - b.recall) < 1e-12);
    CHECK(std::abs(got.bcubed.precision - b.precision) < 1e-12);
    CHECK(std::abs(got.ceaf.recall - c.recall) < 1e-12);
    CHECK(std::abs(got.ceaf.precision - c.precision) < 1e-12);
    for (double v : {got.bcubed.recall, got.bcubed.precision, got.bcubed.f1,
                     got.ceaf.recall, got.ceaf.precision, got.ceaf.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("CEAF precision is recall with roles reversed") {
  Random rng(7);
  for (int i = 0; i < 200; ++i) {
    auto [key, resp] = testing::RandomKeyResponse(rng, 10);
    CHECK(CeafPhi3(key, resp).precision ==
          doctest::Approx(CeafPhi3(resp, key).recall).epsilon(1e-12));
  }
}

double Total(const std::vector<std::vector<double>> &m,
             const std::vector<int> &assignment) {
  double s = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= 0) s += m[i][assignment[i]];
  }
  return s;
}

TEST_CASE("Kuhn-Munkres") {
  std::vector<std::vector<double>> anti = {{1, 2}, {2, 1}};
  CHECK(KuhnMunkres(anti) == std::vector<int>{1, 0});
  CHECK(Total(anti, KuhnMunkres(anti)) == 4.0);
  std::vector<std::vector<double>> diag = {{5, 1}, {1, 5}};
  CHECK(KuhnMunkres(diag) == std::vector<int>{0, 1});

  Random rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    size_t rows = 1 + rng.Below(6), cols = 1 + rng.Below(6);
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto &row : m) {
      for (double &v : row) v = static_cast<double>(rng.Below(10));
    }
    std::vector<int> a = KuhnMunkres(m);
    REQUIRE(a.size() == rows);
    std::set<int> used;
    for (int c : a) {
      if (c >= 0) CHECK(used.insert(c).second);
    }
    CHECK(Total(m, a) == testing::BruteAssignment(m));
  }
  CHECK_THROWS_AS(KuhnMunkres({{1.0, 2.0}, {1.0}}), ScoreError);
}

TEST_CASE("corpus scores are micro-averaged") {
  PartitionDoc k1 = Letters({"abc", "d"}), r1 = Letters({"ab", "cd"});
  PartitionDoc k2 = Letters({"ab"}), r2 = Letters({"a", "b"});
  k2.doc_id = r2.doc_id = "e";
  CorpusScores s = ScoreCorpus({k1, k2}, {r2, r1});
  REQUIRE(s.per_doc.size() == 2);
  double recall = (2.0 / 3 * 4 + 0.5 * 2) / 6;
  CHECK(s.bcubed.recall == doctest::Approx(recall));
  CHECK_THROWS_AS(ScoreCorpus({k1, k2}, {r1}), ScoreError);
}

TEST_CASE("anaphoricity metrics") {
  std::vector<bool> gold, pred;
  auto add = [&](bool g, bool p, int n) {
    for (int i = 0; i < n; ++i) gold.push_back(g), pred.push_back(p);
  };
  add(true, true, 3);
  add(false, true, 1);
  add(true, false, 1);
  add(false, false, 5);
  AnaphoricityScores a = AnaphoricityMetrics(pred, gold);
  CHECK(a.accuracy == doctest::Approx(0.8));
  CHECK(a.recall == doctest::Approx(0.75));
  CHECK(a.precision == doctest::Approx(0.75));
  CHECK(a.f1 == doctest::Approx(0.75));

  AnaphoricityScores same = AnaphoricityMetrics(gold, gold);
  CHECK(same.accuracy == 1.0);
  CHECK(same.f1 == 1.0);

  std::vector<bool> half = {true, false, true, false};
  AnaphoricityScores none = AnaphoricityMetrics(std::vector<bool>(4), half);
  CHECK(none.accuracy == 0.5);
  CHECK(none.recall == 0.0);

  CHECK(GoldAnaphoric(NominationExample()) ==
        std::vector<bool>{false, false, true, false, false, true});
  CHECK_THROWS_AS(AnaphoricityMetrics({true}, {true, false}), ScoreError);
}

// Mention-pair resolver that never links.
ResolverSpec NeverLink() {
  ResolverSpec spec;
  spec.family = Family::kMentionPair;
  spec.fs = FeatureSetId::kConventional;
  spec.coref_model.bias = 1.0;  // every score is -1
  return spec;
}

TEST_CASE("resolution classes") {
  Document d = NominationExample();
  CHECK(ResolutionClasses().size() == 13);
  CHECK(ResolutionClassOf(d, 5) == "G3");
  CHECK(ResolutionClassOf(d, 2) == "G3");
  CHECK(ResolutionClassOf(d, 4) == "common-na");
  CHECK(ResolutionClassOf(d, 0) == "proper-na");

  Document clinton = d;
  clinton.sentences[1] = {"Clinton", "..."};
  clinton.mentions[5].mtype = MentionType::kProper;
  clinton.mentions[5].gender = Gender::kFemale;
  clinton.sentences[0][3] = "Clinton";
  clinton.mentions[1].start = 5;
  clinton.gold.clusters = {{0, 2}, {1, 5}, {3}, {4}};
  CHECK(ResolutionClassOf(clinton, 5) == "proper-e");

  ScoreReport na = ResolutionClassScore({d}, NeverLink(), "common-na");
  CHECK(!na.empty);
  CHECK(na.f1 == 1.0);
  CHECK(ResolutionClassScore({d}, NeverLink(), "1+2").empty);
  CHECK_THROWS_AS(ResolutionClassScore({d}, NeverLink(), "bogus"),
                  ScoreError);
}

TEST_CASE("synthetic documents populate the exact-match classes") {
  SynthConfig cfg;
  cfg.docs = 10;
  std::map<std::string, int> seen;
  for (const auto &d : SynthCorpus(cfg)) {
    for (int k = 0; k < d.size(); ++k) ++seen[ResolutionClassOf(d, k)];
  }
  CHECK(seen["proper-e"] > 0);
  CHECK(seen["G3"] > 0);
  CHECK(seen["common-na"] > 0);
}

// Closed-form CDF of Student's t with three degrees of freedom.
double StudentT3Cdf(double t) {
  const double r3 = std::sqrt(3.0);
  return 0.5 + (t / (r3 * (1 + t * t / 3)) + std::atan(t / r3)) /
                   std::numbers::pi;
}

TEST_CASE("paired t-test") {
  TTestResult r = PairedTTest({2, 3, 4, 5}, {1, 1, 1, 1});
  CHECK(r.df == 3);
  CHECK(r.t == doctest::Approx(std::sqrt(15.0)));
  CHECK(r.p == doctest::Approx(2 * (1 - StudentT3Cdf(r.t))).epsilon(1e-10));
  CHECK(r.p == doctest::Approx(0.0305).epsilon(0.01));
  CHECK(!r.degenerate);

  TTestResult flip = PairedTTest({1, 1, 1, 1}, {2, 3, 4, 5});
  CHECK(flip.t == doctest::Approx(-r.t));
  CHECK(flip.p == doctest::Approx(r.p));

  CHECK(PairedTTest({1, 2, 3}, {1, 2, 3}).degenerate);
  TTestResult shift = PairedTTest({1, 2, 3}, {0.5, 1.5, 2.5});
  CHECK(shift.degenerate);
  CHECK(shift.p == 1.0);
  CHECK_THROWS_AS(PairedTTest({1}, {2}), ScoreError);
  CHECK_THROWS_AS(PairedTTest({1, 2}, {2}), ScoreError);
}

}  // namespace
}  // namespace coref
