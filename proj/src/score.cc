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

#include "coref/score.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

namespace coref {

double F1(double recall, double precision) {
  return recall + precision > 0 ? 2 * recall * precision / (recall + precision)
                                : 0.0;
}

void ScoreReport::Finalize() {
  recall = recall_den > 0 ? recall_num / recall_den : 0.0;
  precision = precision_den > 0 ? precision_num / precision_den : 0.0;
  f1 = F1(recall, precision);
}

void ScoreReport::Accumulate(const ScoreReport &o) {
  recall_num += o.recall_num;
  recall_den += o.recall_den;
  precision_num += o.precision_num;
  precision_den += o.precision_den;
  key_mentions += o.key_mentions;
  response_mentions += o.response_mentions;
  key_clusters += o.key_clusters;
  response_clusters += o.response_clusters;
  key_twinless += o.key_twinless;
  response_twinless += o.response_twinless;
  Finalize();
}

MentionAlignment AlignMentions(const PartitionDoc &key,
                               const PartitionDoc &response) {
  std::map<std::tuple<int, int, int>, int> by_span;
  for (const MentionSpan &m : key.mentions) {
    by_span[{m.sent, m.start, m.end}] = m.id;
  }
  MentionAlignment a;
  for (const MentionSpan &m : response.mentions) {
    auto it = by_span.find({m.sent, m.start, m.end});
    if (it == by_span.end()) continue;
    a.response_to_key[m.id] = it->second;
    a.key_to_response[it->second] = m.id;
  }
  return a;
}

namespace {

std::unordered_map<int, int> ClusterIndex(const Partition &p) {
  std::unordered_map<int, int> index;
  for (size_t c = 0; c < p.clusters.size(); ++c) {
    for (int id : p.clusters[c]) index[id] = static_cast<int>(c);
  }
  return index;
}

}  // namespace

PartitionDoc PreprocessResponse(const PartitionDoc &key,
                                const PartitionDoc &response) {
  MentionAlignment a = AlignMentions(key, response);
  std::set<int> removed;
  PartitionDoc out;
  out.doc_id = response.doc_id;
  for (const auto &c : response.partition.clusters) {
    if (c.size() == 1 && !a.response_to_key.count(c[0])) {
      removed.insert(c[0]);
    } else {
      out.partition.clusters.push_back(c);
    }
  }
  for (const MentionSpan &m : response.mentions) {
    if (!removed.count(m.id)) out.mentions.push_back(m);
  }
  return out;
}

ScoreReport BCubed(const PartitionDoc &key, const PartitionDoc &response) {
  MentionAlignment a = AlignMentions(key, response);
  auto key_cluster = ClusterIndex(key.partition);
  auto resp_cluster = ClusterIndex(response.partition);
  ScoreReport r;
  r.metric = "bcubed";
  r.key_mentions = static_cast<int>(key.mentions.size());
  r.response_mentions = static_cast<int>(response.mentions.size());
  r.key_clusters = static_cast<int>(key.partition.clusters.size());
  r.response_clusters = static_cast<int>(response.partition.clusters.size());
  r.key_twinless = r.key_mentions - static_cast<int>(a.key_to_response.size());
  r.response_twinless =
      r.response_mentions - static_cast<int>(a.response_to_key.size());
  for (const MentionSpan &m : key.mentions) {
    auto twin = a.key_to_response.find(m.id);
    if (twin == a.key_to_response.end()) continue;
    const auto &kc = key.partition.clusters[key_cluster.at(m.id)];
    const auto &rc = response.partition.clusters[resp_cluster.at(twin->second)];
    int kci = key_cluster.at(m.id);
    int common = 0;
    for (int rid : rc) {
      auto k = a.response_to_key.find(rid);
      if (k != a.response_to_key.end() && key_cluster.at(k->second) == kci) {
        ++common;
      }
    }
    r.recall_num += static_cast<double>(common) / kc.size();
    r.precision_num += static_cast<double>(common) / rc.size();
  }
  const double universe = r.key_mentions + r.response_twinless;
  r.recall_den = universe;
  r.precision_den = universe;
  r.empty = universe == 0;
  r.Finalize();
  return r;
}

std::vector<int> KuhnMunkres(const std::vector<std::vector<double>> &score) {
  const int rows = static_cast<int>(score.size());
  if (rows == 0) return {};
  const int cols = static_cast<int>(score[0].size());
  for (const auto &row : score) {
    if (static_cast<int>(row.size()) != cols) {
      throw ScoreError("ragged assignment matrix");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw ScoreError("non-finite assignment score");
    }
  }
  if (cols == 0) return std::vector<int>(rows, -1);
  const bool transpose = rows > cols;
  const int n = transpose ? cols : rows;  // n <= m
  const int m = transpose ? rows : cols;
  auto cost = [&](int i, int j) {
    return transpose ? -score[j][i] : -score[i][j];
  };
  // Shortest augmenting paths with potentials; 1-based, column 0 is virtual.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> out(rows, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    if (transpose) {
      out[j - 1] = p[j] - 1;
    } else {
      out[p[j] - 1] = j - 1;
    }
  }
  return out;
}

ScoreReport CeafPhi3(const PartitionDoc &key, const PartitionDoc &response) {
  MentionAlignment a = AlignMentions(key, response);
  auto key_cluster = ClusterIndex(key.partition);
  const auto &kcs = key.partition.clusters;
  const auto &rcs = response.partition.clusters;
  std::vector<std::vector<double>> sim(kcs.size(),
                                       std::vector<double>(rcs.size(), 0.0));
  for (size_t j = 0; j < rcs.size(); ++j) {
    for (int rid : rcs[j]) {
      auto k = a.response_to_key.find(rid);
      if (k != a.response_to_key.end()) sim[key_cluster.at(k->second)][j] += 1;
    }
  }
  double total = 0.0;
  std::vector<int> assign = KuhnMunkres(sim);
  for (size_t i = 0; i < assign.size(); ++i) {
    if (assign[i] >= 0) total += sim[i][assign[i]];
  }
  ScoreReport r;
  r.metric = "ceaf";
  r.key_mentions = static_cast<int>(key.mentions.size());
  r.response_mentions = static_cast<int>(response.mentions.size());
  r.key_clusters = static_cast<int>(kcs.size());
  r.response_clusters = static_cast<int>(rcs.size());
  r.key_twinless = r.key_mentions - static_cast<int>(a.key_to_response.size());
  r.response_twinless =
      r.response_mentions - static_cast<int>(a.response_to_key.size());
  r.recall_num = total;
  r.recall_den = r.key_mentions;
  r.precision_num = total;
  r.precision_den = r.response_mentions;
  r.empty = r.key_mentions == 0 && r.response_mentions == 0;
  r.Finalize();
  return r;
}

DocScores ScoreDocument(const PartitionDoc &key, const PartitionDoc &response) {
  PartitionDoc pre = PreprocessResponse(key, response);
  return {BCubed(key, pre), CeafPhi3(key, pre)};
}

CorpusScores ScoreCorpus(const std::vector<PartitionDoc> &keys,
                         const std::vector<PartitionDoc> &responses) {
  std::unordered_map<std::string, const PartitionDoc *> by_id;
  for (const auto &r : responses) {
    if (!by_id.emplace(r.doc_id, &r).second) {
      throw ScoreError("duplicate response document " + r.doc_id);
    }
  }
  if (responses.size() != keys.size()) {
    throw ScoreError("key and response files cover different documents");
  }
  CorpusScores out;
  out.bcubed.metric = "bcubed";
  out.ceaf.metric = "ceaf";
  for (const auto &key : keys) {
    auto it = by_id.find(key.doc_id);
    if (it == by_id.end()) {
      throw ScoreError("no response for document " + key.doc_id);
    }
    DocScores s = ScoreDocument(key, *it->second);
    out.bcubed.Accumulate(s.bcubed);
    out.ceaf.Accumulate(s.ceaf);
    out.per_doc.emplace_back(key.doc_id, std::move(s));
  }
  out.bcubed.empty = out.bcubed.recall_den == 0;
  out.ceaf.empty = out.ceaf.recall_den == 0 && out.ceaf.precision_den == 0;
  return out;
}

AnaphoricityScores AnaphoricityMetrics(const std::vector<bool> &predicted,
                                       const std::vector<bool> &gold) {
  if (predicted.size() != gold.size()) {
    throw ScoreError("anaphoricity vectors differ in length");
  }
  AnaphoricityScores s;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] && gold[i]) ++s.tp;
    if (predicted[i] && !gold[i]) ++s.fp;
    if (!predicted[i] && gold[i]) ++s.fn;
    if (!predicted[i] && !gold[i]) ++s.tn;
  }
  const int total = s.tp + s.fp + s.fn + s.tn;
  s.accuracy = total ? static_cast<double>(s.tp + s.tn) / total : 0.0;
  s.recall = s.tp + s.fn ? static_cast<double>(s.tp) / (s.tp + s.fn) : 0.0;
  s.precision = s.tp + s.fp ? static_cast<double>(s.tp) / (s.tp + s.fp) : 0.0;
  s.f1 = F1(s.recall, s.precision);
  return s;
}

std::vector<bool> GoldAnaphoric(const Document &doc) {
  std::vector<bool> out(doc.size(), false);
  for (const auto &c : doc.gold.clusters) {
    int first = *std::min_element(c.begin(), c.end());
    for (int id : c) out[id] = id != first;
  }
  return out;
}

std::vector<bool> PredictedAnaphoric(const Resolution &r) {
  std::vector<bool> out;
  for (int link : r.links) out.push_back(link != kNoMention);
  return out;
}

const std::vector<std::string> &ResolutionClasses() {
  static const std::vector<std::string> kClasses = {
      "proper-e", "proper-p", "proper-n", "proper-na", "common-e",
      "common-p", "common-n", "common-na", "1+2",      "G3",
      "U3",       "oa",       "pronoun-na"};
  return kClasses;
}

namespace {

std::vector<int> GoldAntecedents(const Document &doc, int k) {
  for (const auto &c : doc.gold.clusters) {
    if (std::find(c.begin(), c.end(), k) == c.end()) continue;
    std::vector<int> out;
    for (int id : c) {
      if (id < k) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  return {};
}

std::set<std::string> ContentWords(const Document &doc, const Mention &m) {
  static const std::set<std::string> kDeterminers = {
      "the", "a", "an", "this", "that", "these", "those"};
  std::set<std::string> out;
  for (const auto &t : MentionTokens(doc, m)) {
    std::string w = Lowercase(t);
    bool word = std::any_of(w.begin(), w.end(), [](unsigned char c) {
      return std::isalnum(c) != 0;
    });
    if (!word || kDeterminers.count(w)) continue;
    if (DefaultPronounLexicon().Find(w)) continue;
    out.insert(w);
  }
  return out;
}

}  // namespace

std::string ResolutionClassOf(const Document &doc, int k) {
  const Mention &m = doc.mentions.at(k);
  std::vector<int> antecedents = GoldAntecedents(doc, k);
  if (m.mtype == MentionType::kPronoun) {
    if (antecedents.empty()) return "pronoun-na";
    const PronounInfo *info = PronounOf(doc, m);
    if (!info || !info->personal) return "oa";
    if (info->person == 1 || info->person == 2) return "1+2";
    if (info->gender == Gender::kMale || info->gender == Gender::kFemale) {
      return "G3";
    }
    return "U3";
  }
  std::string prefix = m.mtype == MentionType::kProper ? "proper-" : "common-";
  if (antecedents.empty()) return prefix + "na";
  std::string key = SurfaceKey(doc, m);
  std::set<std::string> words = ContentWords(doc, m);
  bool partial = false;
  for (int j : antecedents) {
    if (SurfaceKey(doc, doc.mentions[j]) == key) return prefix + "e";
    for (const auto &w : ContentWords(doc, doc.mentions[j])) {
      if (words.count(w)) partial = true;
    }
  }
  return prefix + (partial ? "p" : "n");
}

ScoreReport ResolutionClassScore(const std::vector<Document> &docs,
                                 const ResolverSpec &spec,
                                 const std::string &cls) {
  const auto &classes = ResolutionClasses();
  if (std::find(classes.begin(), classes.end(), cls) == classes.end()) {
    throw ScoreError("unknown resolution class " + cls);
  }
  ScoreReport r;
  r.metric = "bcubed:" + cls;
  for (const Document &raw : docs) {
    Document doc = PrepareTestDocument(raw, spec);
    std::vector<char> in_class(doc.size());
    for (int k = 0; k < doc.size(); ++k) {
      in_class[k] = ResolutionClassOf(doc, k) == cls;
    }
    Decider model = ModelDecider(doc, spec);
    Resolution res = RunIncremental(
        doc, [&](int k, const std::vector<std::vector<int>> &clusters) {
          if (in_class[k]) return model(k, clusters);
          std::vector<int> ante = GoldAntecedents(doc, k);
          for (auto it = ante.rbegin(); it != ante.rend(); ++it) {
            if (!in_class[*it]) return *it;
          }
          return ante.empty() ? kNoMention : ante.back();
        });
    auto key_cluster = ClusterIndex(doc.gold);
    auto resp_cluster = ClusterIndex(res.partition);
    for (int k = 0; k < doc.size(); ++k) {
      if (!in_class[k]) continue;
      const auto &kc = doc.gold.clusters[key_cluster.at(k)];
      const auto &rc = res.partition.clusters[resp_cluster.at(k)];
      int common = 0;
      for (int id : rc) common += key_cluster.at(id) == key_cluster.at(k);
      r.recall_num += static_cast<double>(common) / kc.size();
      r.precision_num += static_cast<double>(common) / rc.size();
      r.recall_den += 1;
      r.precision_den += 1;
      ++r.key_mentions;
      ++r.response_mentions;
    }
  }
  r.empty = r.key_mentions == 0;
  r.Finalize();
  return r;
}

TTestResult PairedTTest(const std::vector<double> &a,
                        const std::vector<double> &b) {
  if (a.size() != b.size()) throw ScoreError("t-test samples differ in size");
  if (a.size() < 2) throw ScoreError("t-test needs at least two pairs");
  const size_t n = a.size();
  double mean = 0.0;
  for (size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  TTestResult r;
  r.df = static_cast<int>(n) - 1;
  double sd = std::sqrt(ss / r.df);
  if (!(sd > 0.0)) {
    r.degenerate = true;
    return r;
  }
  r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  boost::math::students_t dist(r.df);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

nlohmann::ordered_json ReportToJson(const ScoreReport &r) {
  nlohmann::ordered_json j;
  j["metric"] = r.metric;
  j["recall"] = r.recall;
  j["precision"] = r.precision;
  j["f1"] = r.f1;
  j["key_mentions"] = r.key_mentions;
  j["response_mentions"] = r.response_mentions;
  j["key_clusters"] = r.key_clusters;
  j["response_clusters"] = r.response_clusters;
  j["key_twinless"] = r.key_twinless;
  j["response_twinless"] = r.response_twinless;
  if (r.empty) j["empty"] = true;
  return j;
}

nlohmann::ordered_json ScoresToJson(const CorpusScores &s) {
  nlohmann::ordered_json j;
  j["bcubed"] = ReportToJson(s.bcubed);
  j["ceaf"] = ReportToJson(s.ceaf);
  nlohmann::ordered_json docs = nlohmann::ordered_json::array();
  for (const auto &[id, d] : s.per_doc) {
    nlohmann::ordered_json row;
    row["doc_id"] = id;
    row["bcubed"] = ReportToJson(d.bcubed);
    row["ceaf"] = ReportToJson(d.ceaf);
    docs.push_back(std::move(row));
  }
  j["documents"] = std::move(docs);
  return j;
}

}  // namespace coref
