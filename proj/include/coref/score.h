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

#ifndef COREF_SCORE_H_
#define COREF_SCORE_H_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/corpus.h"
#include "coref/resolve.h"
#include "json.hpp"

namespace coref {

class ScoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recall and precision with their numerators and denominators; corpus
// reports sum the counts.
struct ScoreReport {
  std::string metric;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double recall_num = 0.0;
  double recall_den = 0.0;
  double precision_num = 0.0;
  double precision_den = 0.0;
  int key_mentions = 0;
  int response_mentions = 0;
  int key_clusters = 0;
  int response_clusters = 0;
  int key_twinless = 0;
  int response_twinless = 0;
  bool empty = false;

  // Recomputes recall, precision and f1 from the counts.
  void Finalize();
  // Adds counts of another report of the same metric.
  void Accumulate(const ScoreReport &other);
};

double F1(double recall, double precision);

// Exact-span alignment by (sent, start, end). Maps are keyed by mention id;
// twinless mentions are absent.
struct MentionAlignment {
  std::map<int, int> response_to_key;
  std::map<int, int> key_to_response;
};

MentionAlignment AlignMentions(const PartitionDoc &key,
                               const PartitionDoc &response);

// Drops response mentions that are twinless singletons.
PartitionDoc PreprocessResponse(const PartitionDoc &key,
                                const PartitionDoc &response);

// Both metrics expect a preprocessed response.
ScoreReport BCubed(const PartitionDoc &key, const PartitionDoc &response);
ScoreReport CeafPhi3(const PartitionDoc &key, const PartitionDoc &response);

// Maximum-weight one-to-one assignment of rows to columns. Returns, for each
// row, its column or -1.
std::vector<int> KuhnMunkres(const std::vector<std::vector<double>> &score);

struct DocScores {
  ScoreReport bcubed;
  ScoreReport ceaf;
};

// Preprocesses the response, then applies both metrics.
DocScores ScoreDocument(const PartitionDoc &key, const PartitionDoc &response);

// Corpus scores: documents matched by doc_id; micro-averaged.
struct CorpusScores {
  ScoreReport bcubed;
  ScoreReport ceaf;
  std::vector<std::pair<std::string, DocScores>> per_doc;
};
CorpusScores ScoreCorpus(const std::vector<PartitionDoc> &keys,
                         const std::vector<PartitionDoc> &responses);

struct AnaphoricityScores {
  double accuracy = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  int tp = 0, fp = 0, fn = 0, tn = 0;
};
AnaphoricityScores AnaphoricityMetrics(const std::vector<bool> &predicted,
                                       const std::vector<bool> &gold);

// Gold anaphoricity of every mention of a document.
std::vector<bool> GoldAnaphoric(const Document &doc);
// A mention is predicted anaphoric iff it was linked to a predecessor.
std::vector<bool> PredictedAnaphoric(const Resolution &r);

// The 13 resolution classes, in table order.
const std::vector<std::string> &ResolutionClasses();
std::string ResolutionClassOf(const Document &doc, int k);

// In-class mentions are resolved by the model, all others by a gold oracle
// that prefers the closest antecedent outside the class. B3 over in-class
// mentions only; `empty` is set when the class has no mentions.
ScoreReport ResolutionClassScore(const std::vector<Document> &docs,
                                 const ResolverSpec &spec,
                                 const std::string &cls);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  bool degenerate = false;
};
// Two-sided paired t-test.
TTestResult PairedTTest(const std::vector<double> &a,
                        const std::vector<double> &b);

nlohmann::ordered_json ReportToJson(const ScoreReport &r);
nlohmann::ordered_json ScoresToJson(const CorpusScores &s);

}  // namespace coref

#endif  // COREF_SCORE_H_
