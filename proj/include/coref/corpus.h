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

#ifndef COREF_CORPUS_H_
#define COREF_CORPUS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coref {

enum class MentionType { kPronoun, kProper, kCommon };
enum class Number { kSingular, kPlural, kUnknown };
enum class Gender { kMale, kFemale, kNeuter, kUnknown };
enum class SemClass {
  kPerson, kLocation, kOrganization, kDate, kTime, kMoney, kPercent,
  kObject, kOthers, kUnknown
};
enum class Animacy { kYes, kNo, kUnknown };
enum class NeTag { kPerson, kLocation, kOrganization, kNone };

// Uppercase wire names, e.g. "PRONOUN", "SINGULAR", "Y".
std::string_view ToString(MentionType v);
std::string_view ToString(Number v);
std::string_view ToString(Gender v);
std::string_view ToString(SemClass v);
std::string_view ToString(Animacy v);
std::string_view ToString(NeTag v);

bool FromString(std::string_view s, MentionType *v);
bool FromString(std::string_view s, Number *v);
bool FromString(std::string_view s, Gender *v);
bool FromString(std::string_view s, SemClass *v);
bool FromString(std::string_view s, Animacy *v);
bool FromString(std::string_view s, NeTag *v);

// Value used for optional mention references (appositive, copular).
inline constexpr int kNoMention = -1;

struct Mention {
  int id = 0;
  int sent = 0;
  int start = 0;  // token offset within the sentence
  int end = 0;    // exclusive
  std::optional<int> head_start;
  std::optional<int> head_end;
  MentionType mtype = MentionType::kCommon;
  Number number = Number::kUnknown;
  Gender gender = Gender::kUnknown;
  SemClass semclass = SemClass::kUnknown;
  Animacy animacy = Animacy::kUnknown;
  NeTag ne_tag = NeTag::kNone;
  bool subject = false;
  bool nested = false;
  bool embedded = false;
  bool indefinite = false;
  bool definite = false;
  bool demonstrative = false;
  bool quantified = false;
  int appositive_with = kNoMention;
  int copular_with = kNoMention;
  int maximalnp_group = -1;  // -1: no group annotation
  bool unseen = false;

  bool operator==(const Mention &other) const = default;
};

// A set of disjoint, non-empty mention-id clusters.
struct Partition {
  std::vector<std::vector<int>> clusters;

  // cluster index of each id in [0, n); -1 for ids not covered.
  std::vector<int> ClusterOf(int n) const;

  // Sorts members and clusters into a canonical order.
  void Canonicalize();

  bool operator==(const Partition &other) const = default;
};

struct Document {
  std::string doc_id;
  std::string source = "OTHER";
  std::vector<std::vector<std::string>> sentences;
  std::vector<Mention> mentions;
  Partition gold;

  int size() const { return static_cast<int>(mentions.size()); }
  bool operator==(const Document &other) const = default;
};

// Error raised by corpus loading and validation. The message names the
// violated rule and the location (line number or document id).
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string &rule, const std::string &where,
              const std::string &detail);
  const std::string &rule() const { return rule_; }
  const std::string &where() const { return where_; }

 private:
  std::string rule_;
  std::string where_;
};

// Checks every Document and Mention invariant; throws CorpusError.
void ValidateDocument(const Document &doc);

// Line-delimited JSON corpus I/O. One document record per line.
std::vector<Document> LoadCorpus(const std::string &path);
std::vector<Document> ParseCorpus(std::istream &in);
std::string SerializeDocument(const Document &doc);
void WriteCorpus(std::ostream &out, const std::vector<Document> &docs);
void WriteCorpus(const std::string &path, const std::vector<Document> &docs);

// Partition-only record used for key/response scoring files.
struct MentionSpan {
  int id = 0;
  int sent = 0;
  int start = 0;
  int end = 0;
  bool operator==(const MentionSpan &other) const = default;
};

struct PartitionDoc {
  std::string doc_id;
  std::vector<MentionSpan> mentions;
  Partition partition;
};

PartitionDoc ToPartitionDoc(const Document &doc, const Partition &p);
void ValidatePartitionDoc(const PartitionDoc &pd);
// Accepts both partition records and full corpus records.
std::vector<PartitionDoc> LoadPartitions(const std::string &path);
std::vector<PartitionDoc> ParsePartitions(std::istream &in);
void WritePartitions(std::ostream &out, const std::vector<PartitionDoc> &docs);

// Pronoun attributes. Nominative form is uppercase ("HE" for "him").
struct PronounInfo {
  int person = 3;
  Gender gender = Gender::kUnknown;
  Number number = Number::kUnknown;
  std::string nominative;
  // False for wh-, relative and generic pronouns.
  bool personal = true;
};

class PronounLexicon {
 public:
  PronounLexicon() = default;
  void Add(std::string word, PronounInfo info);

  // Lookup by lowercase surface string; nullptr when absent.
  const PronounInfo *Find(std::string_view word) const;
  int size() const { return static_cast<int>(entries_.size()); }
  const std::unordered_map<std::string, PronounInfo> &entries() const {
    return entries_;
  }

  // Every distinct nominative form, sorted.
  std::vector<std::string> NominativeForms() const;

 private:
  std::unordered_map<std::string, PronounInfo> entries_;
};

// The bundled English lexicon.
const PronounLexicon &DefaultPronounLexicon();

// Text helpers.
std::string Lowercase(std::string_view s);
std::vector<std::string> MentionTokens(const Document &doc, const Mention &m);
// Tokens joined by single spaces, original case.
std::string SurfaceString(const Document &doc, const Mention &m);
// Lowercased surface string; the key used for UNSEEN matching.
std::string SurfaceKey(const Document &doc, const Mention &m);
// Token offset of the mention start counted from the document start.
int GlobalOffset(const Document &doc, const Mention &m);

// Lowercased head word(s): the whole string for proper names, otherwise the
// last token of the head span (or of the mention when no head is given).
std::string HeadOf(const Mention &m, const Document &doc);

// Pronoun attributes come from the lexicon; everything else from the
// annotation.
const PronounInfo *PronounOf(const Document &doc, const Mention &m);
Number EffectiveNumber(const Document &doc, const Mention &m);
Gender EffectiveGender(const Document &doc, const Mention &m);

// UNSEEN preprocessing. Training: marks about `rate` of the COMMON mentions
// of the corpus, closing each mark over all mentions with the same
// case-insensitive surface string.
std::vector<Document> UnseenTrain(std::vector<Document> docs, double rate,
                                  uint64_t seed);
// Surface keys of every training mention that is not marked unseen.
std::set<std::string> CollectVocab(const std::vector<Document> &docs);
// Test: marks mentions whose surface key is outside the vocabulary.
std::vector<Document> UnseenTest(std::vector<Document> docs,
                                 const std::set<std::string> &vocab);

}  // namespace coref

#endif  // COREF_CORPUS_H_
