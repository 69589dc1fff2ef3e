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

// Fixtures and reference implementations shared by the unit tests and the
// acceptance suite. The reference scorers work on raw span tuples and share
// no code with the library's scorers.

#ifndef COREF_TESTS_TEST_UTIL_H_
#define COREF_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "coref/corpus.h"
#include "coref/ilp.h"
#include "coref/random.h"

namespace coref::testing {

// A six-mention news sentence:
// "Barack Obama nominated Hillary Rodham Clinton as his secretary of state
// on Monday. He ..." with clusters {0,2,5}, {1}, {3}, {4}.
inline Document NominationExample() {
  Document d;
  d.doc_id = "nomination";
  d.source = "NW";
  d.sentences = {{"Barack", "Obama", "nominated", "Hillary", "Rodham",
                  "Clinton", "as", "his", "secretary", "of", "state", "on",
                  "Monday", "."},
                 {"He", "..."}};
  auto mention = [&](int sent, int start, int end, MentionType t) {
    Mention m;
    m.id = d.size();
    m.sent = sent;
    m.start = start;
    m.end = end;
    m.mtype = t;
    m.maximalnp_group = m.id;
    d.mentions.push_back(m);
    return &d.mentions.back();
  };
  Mention *m = mention(0, 0, 2, MentionType::kProper);
  m->number = Number::kSingular;
  m->gender = Gender::kMale;
  m->semclass = SemClass::kPerson;
  m->animacy = Animacy::kYes;
  m->ne_tag = NeTag::kPerson;
  m->subject = true;
  m = mention(0, 3, 6, MentionType::kProper);
  m->number = Number::kSingular;
  m->gender = Gender::kFemale;
  m->semclass = SemClass::kPerson;
  m->animacy = Animacy::kYes;
  m->ne_tag = NeTag::kPerson;
  m = mention(0, 7, 8, MentionType::kPronoun);
  m->semclass = SemClass::kPerson;
  m->animacy = Animacy::kYes;
  m->nested = true;
  m->maximalnp_group = 3;
  m = mention(0, 7, 11, MentionType::kCommon);
  m->number = Number::kSingular;
  m->gender = Gender::kUnknown;
  m->semclass = SemClass::kPerson;
  m->animacy = Animacy::kYes;
  m = mention(0, 12, 13, MentionType::kCommon);
  m->number = Number::kSingular;
  m->gender = Gender::kNeuter;
  m->semclass = SemClass::kDate;
  m->animacy = Animacy::kNo;
  m = mention(1, 0, 1, MentionType::kPronoun);
  m->semclass = SemClass::kPerson;
  m->animacy = Animacy::kYes;
  m->subject = true;
  d.gold.clusters = {{0, 2, 5}, {1}, {3}, {4}};
  return d;
}

// Random partition of `ids` into clusters.
inline Partition RandomPartition(Random &rng, const std::vector<int> &ids) {
  std::vector<int> shuffled = ids;
  rng.Shuffle(shuffled);
  Partition p;
  for (int id : shuffled) {
    size_t c = rng.Below(p.clusters.size() + 1);
    if (c == p.clusters.size()) p.clusters.emplace_back();
    p.clusters[c].push_back(id);
  }
  p.Canonicalize();
  return p;
}

// A random (key, response) pair over at most `max_mentions` spans. Some spans
// appear only on one side, so both sides can have twinless mentions.
inline std::pair<PartitionDoc, PartitionDoc> RandomKeyResponse(
    Random &rng, int max_mentions) {
  int universe = 1 + static_cast<int>(rng.Below(max_mentions));
  std::vector<MentionSpan> spans;
  for (int i = 0; i < universe; ++i) spans.push_back({0, 0, 2 * i, 2 * i + 1});
  auto side = [&](double keep) {
    PartitionDoc pd;
    pd.doc_id = "d";
    for (const MentionSpan &s : spans) {
      if (!rng.Bernoulli(keep)) continue;
      MentionSpan m = s;
      m.id = static_cast<int>(pd.mentions.size());
      pd.mentions.push_back(m);
    }
    std::vector<int> ids(pd.mentions.size());
    std::iota(ids.begin(), ids.end(), 0);
    pd.partition = RandomPartition(rng, ids);
    return pd;
  };
  double keep_key = rng.Bernoulli(0.3) ? 1.0 : 0.85;
  double keep_resp = rng.Bernoulli(0.3) ? 1.0 : 0.85;
  return {side(keep_key), side(keep_resp)};
}

using Span = std::tuple<int, int, int>;
using SpanClusters = std::vector<std::set<Span>>;

inline SpanClusters ToSpanClusters(const PartitionDoc &pd) {
  std::map<int, Span> span_of;
  for (const auto &m : pd.mentions) span_of[m.id] = {m.sent, m.start, m.end};
  SpanClusters out;
  for (const auto &c : pd.partition.clusters) {
    std::set<Span> s;
    for (int id : c) s.insert(span_of.at(id));
    out.push_back(std::move(s));
  }
  return out;
}

struct RefScore {
  double recall = 0.0;
  double precision = 0.0;
};

// Response after dropping singleton clusters whose span is not in the key.
inline SpanClusters RefPreprocess(const SpanClusters &key,
                                  const SpanClusters &response) {
  std::set<Span> key_spans;
  for (const auto &c : key) key_spans.insert(c.begin(), c.end());
  SpanClusters out;
  for (const auto &c : response) {
    if (c.size() == 1 && !key_spans.count(*c.begin())) continue;
    out.push_back(c);
  }
  return out;
}

// B3 by direct evaluation of the per-mention ratios; twinless mentions of
// either side score zero, and the average runs over key mentions plus
// twinless response mentions.
inline RefScore RefBCubed(const SpanClusters &key, const SpanClusters &resp) {
  std::map<Span, const std::set<Span> *> kc, rc;
  for (const auto &c : key) for (const Span &s : c) kc[s] = &c;
  for (const auto &c : resp) for (const Span &s : c) rc[s] = &c;
  double r = 0.0, p = 0.0;
  int universe = 0;
  for (const auto &[s, k] : kc) {
    ++universe;
    auto it = rc.find(s);
    if (it == rc.end()) continue;
    int common = 0;
    for (const Span &t : *k) common += it->second->count(t);
    r += static_cast<double>(common) / k->size();
    p += static_cast<double>(common) / it->second->size();
  }
  for (const auto &[s, c] : rc) universe += !kc.count(s);
  if (universe == 0) return {};
  return {r / universe, p / universe};
}

// Maximum total overlap of a one-to-one cluster mapping, by dynamic
// programming over subsets of response clusters.
inline int RefBestMapping(const SpanClusters &key, const SpanClusters &resp) {
  const size_t nr = resp.size();
  std::vector<int> best(size_t{1} << nr, std::numeric_limits<int>::min());
  best[0] = 0;
  for (const auto &k : key) {
    std::vector<int> next = best;  // key cluster left unmapped
    for (size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] == std::numeric_limits<int>::min()) continue;
      for (size_t j = 0; j < nr; ++j) {
        if (mask >> j & 1) continue;
        int overlap = 0;
        for (const Span &s : k) overlap += resp[j].count(s);
        size_t to = mask | (size_t{1} << j);
        next[to] = std::max(next[to], best[mask] + overlap);
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

inline RefScore RefCeaf(const SpanClusters &key, const SpanClusters &resp) {
  size_t nk = 0, nr = 0;
  for (const auto &c : key) nk += c.size();
  for (const auto &c : resp) nr += c.size();
  int total = RefBestMapping(key, resp);
  return {nk ? static_cast<double>(total) / nk : 0.0,
          nr ? static_cast<double>(total) / nr : 0.0};
}

// Maximum of sum score[i][perm(i)] over all injections of the smaller side
// into the larger, by exhaustive permutation.
inline double BruteAssignment(const std::vector<std::vector<double>> &score) {
  size_t rows = score.size();
  size_t cols = rows ? score[0].size() : 0;
  bool flip = rows > cols;
  size_t small = flip ? cols : rows, large = flip ? rows : cols;
  std::vector<int> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (size_t i = 0; i < small; ++i) {
      s += flip ? score[perm[i]][i] : score[i][perm[i]];
    }
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return small == 0 ? 0.0 : best;
}

// Minimum objective over every feasible 0/1 assignment of the program.
inline double BruteIlp(const IlpProgram &p) {
  const int pairs = p.NumPairs();
  const int vars = pairs + p.n;
  double best = std::numeric_limits<double>::infinity();
  for (long mask = 0; mask < (1L << vars); ++mask) {
    IlpSolution s;
    s.x.resize(pairs);
    s.y.resize(p.n);
    for (int i = 0; i < pairs; ++i) s.x[i] = mask >> i & 1;
    for (int k = 0; k < p.n; ++k) s.y[k] = mask >> (pairs + k) & 1;
    bool ok = true;
    for (int k = 0; k < p.n && ok; ++k) {
      int links = 0;
      for (int j = 0; j < k; ++j) {
        int x = s.x[PairIndex(j, k)];
        if (x > s.y[k]) ok = false;
        links += x;
      }
      if (s.y[k] > links) ok = false;
    }
    if (!ok) continue;
    double obj = 0.0;
    for (int k = 0; k < p.n; ++k) {
      obj += s.y[k] ? p.anaph_cost[k] : p.anaph_cost_bar[k];
      for (int j = 0; j < k; ++j) {
        int i = PairIndex(j, k);
        obj += s.x[i] ? p.coref_cost[i] : p.coref_cost_bar[i];
      }
    }
    best = std::min(best, obj);
  }
  return best;
}

// Random program with n mentions and probabilities drawn uniformly.
inline IlpProgram RandomProgram(Random &rng, int n) {
  std::vector<double> pair(n * (n - 1) / 2), anaph(n);
  for (double &v : pair) v = rng.Uniform();
  for (double &v : anaph) v = rng.Uniform();
  return BuildProgram("random", n, pair, anaph);
}

}  // namespace coref::testing

#endif  // COREF_TESTS_TEST_UTIL_H_
