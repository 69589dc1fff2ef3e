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

#include "coref/corpus.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "coref/random.h"
#include "json.hpp"

namespace coref {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

template <typename E, size_t N>
struct EnumNames {
  std::array<std::pair<E, std::string_view>, N> names;

  std::string_view Get(E v) const {
    for (const auto &[e, s] : names) {
      if (e == v) return s;
    }
    return "?";
  }
  bool Parse(std::string_view s, E *v) const {
    for (const auto &[e, name] : names) {
      if (name == s) {
        *v = e;
        return true;
      }
    }
    return false;
  }
};

constexpr EnumNames<MentionType, 3> kMentionTypeNames{{{
    {MentionType::kPronoun, "PRONOUN"},
    {MentionType::kProper, "PROPER"},
    {MentionType::kCommon, "COMMON"},
}}};

constexpr EnumNames<Number, 3> kNumberNames{{{
    {Number::kSingular, "SINGULAR"},
    {Number::kPlural, "PLURAL"},
    {Number::kUnknown, "UNKNOWN"},
}}};

constexpr EnumNames<Gender, 4> kGenderNames{{{
    {Gender::kMale, "MALE"},
    {Gender::kFemale, "FEMALE"},
    {Gender::kNeuter, "NEUTER"},
    {Gender::kUnknown, "UNKNOWN"},
}}};

constexpr EnumNames<SemClass, 10> kSemClassNames{{{
    {SemClass::kPerson, "PERSON"},
    {SemClass::kLocation, "LOCATION"},
    {SemClass::kOrganization, "ORGANIZATION"},
    {SemClass::kDate, "DATE"},
    {SemClass::kTime, "TIME"},
    {SemClass::kMoney, "MONEY"},
    {SemClass::kPercent, "PERCENT"},
    {SemClass::kObject, "OBJECT"},
    {SemClass::kOthers, "OTHERS"},
    {SemClass::kUnknown, "UNKNOWN"},
}}};

constexpr EnumNames<Animacy, 3> kAnimacyNames{{{
    {Animacy::kYes, "Y"},
    {Animacy::kNo, "N"},
    {Animacy::kUnknown, "UNKNOWN"},
}}};

constexpr EnumNames<NeTag, 4> kNeTagNames{{{
    {NeTag::kPerson, "PERSON"},
    {NeTag::kLocation, "LOCATION"},
    {NeTag::kOrganization, "ORGANIZATION"},
    {NeTag::kNone, "NONE"},
}}};

const std::set<std::string> &KnownSources() {
  static const std::set<std::string> kSources = {"BN", "BC", "NW", "WL",
                                                 "UN", "CTS", "OTHER"};
  return kSources;
}

std::string DocWhere(const Document &doc) { return "doc " + doc.doc_id; }

void Fail(const Document &doc, const std::string &rule,
          const std::string &detail) {
  throw CorpusError(rule, DocWhere(doc), detail);
}

// Cluster checks shared by documents and partition records.
void ValidateClusters(const Partition &p, const std::set<int> &universe,
                      const std::string &where) {
  std::set<int> seen;
  for (const auto &cluster : p.clusters) {
    if (cluster.empty()) {
      throw CorpusError("clusters non-empty", where, "empty cluster");
    }
    for (int id : cluster) {
      if (!universe.count(id)) {
        throw CorpusError("cluster ids are declared mentions", where,
                          "unknown mention id " + std::to_string(id));
      }
      if (!seen.insert(id).second) {
        throw CorpusError("clusters pairwise disjoint", where,
                          "mention " + std::to_string(id) +
                              " appears in more than one cluster");
      }
    }
  }
  if (seen.size() != universe.size()) {
    for (int id : universe) {
      if (!seen.count(id)) {
        throw CorpusError("every mention in exactly one cluster", where,
                          "mention " + std::to_string(id) +
                              " is not in any cluster");
      }
    }
  }
}

template <typename E>
E ReadEnum(const json &obj, const char *key, E fallback,
           const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw CorpusError("schema", where, std::string(key) + " must be a string");
  }
  E v;
  if (!FromString(it->get<std::string>(), &v)) {
    throw CorpusError("schema", where,
                      std::string("bad value for ") + key + ": " +
                          it->get<std::string>());
  }
  return v;
}

int ReadInt(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw CorpusError("schema", where,
                      std::string("missing integer field ") + key);
  }
  return it->get<int>();
}

int ReadOptInt(const json &obj, const char *key, int fallback,
               const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number_integer()) {
    throw CorpusError("schema", where,
                      std::string(key) + " must be an integer");
  }
  return it->get<int>();
}

bool ReadBool(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) {
    throw CorpusError("schema", where, std::string(key) + " must be a bool");
  }
  return it->get<bool>();
}

Partition ReadClusters(const json &obj, const std::string &where) {
  auto it = obj.find("clusters");
  if (it == obj.end() || !it->is_array()) {
    throw CorpusError("schema", where, "missing clusters array");
  }
  Partition p;
  for (const auto &c : *it) {
    if (!c.is_array()) throw CorpusError("schema", where, "bad cluster");
    std::vector<int> cluster;
    for (const auto &id : c) {
      if (!id.is_number_integer()) {
        throw CorpusError("schema", where, "cluster ids must be integers");
      }
      cluster.push_back(id.get<int>());
    }
    p.clusters.push_back(std::move(cluster));
  }
  return p;
}

Mention MentionFromJson(const json &m, const std::string &where) {
  if (!m.is_object()) throw CorpusError("schema", where, "mention not object");
  Mention out;
  out.id = ReadInt(m, "id", where);
  out.sent = ReadInt(m, "sent", where);
  out.start = ReadInt(m, "start", where);
  out.end = ReadInt(m, "end", where);
  auto hs = m.find("head_start");
  auto he = m.find("head_end");
  bool has_hs = hs != m.end() && !hs->is_null();
  bool has_he = he != m.end() && !he->is_null();
  if (has_hs != has_he) {
    throw CorpusError("schema", where,
                      "head_start and head_end must appear together");
  }
  if (has_hs) {
    out.head_start = ReadInt(m, "head_start", where);
    out.head_end = ReadInt(m, "head_end", where);
  }
  out.mtype = ReadEnum(m, "mtype", MentionType::kCommon, where);
  out.number = ReadEnum(m, "number", Number::kUnknown, where);
  out.gender = ReadEnum(m, "gender", Gender::kUnknown, where);
  out.semclass = ReadEnum(m, "semclass", SemClass::kUnknown, where);
  out.animacy = ReadEnum(m, "animacy", Animacy::kUnknown, where);
  out.ne_tag = ReadEnum(m, "ne_tag", NeTag::kNone, where);
  out.subject = ReadBool(m, "subject", where);
  out.nested = ReadBool(m, "nested", where);
  out.embedded = ReadBool(m, "embedded", where);
  out.indefinite = ReadBool(m, "indefinite", where);
  out.definite = ReadBool(m, "definite", where);
  out.demonstrative = ReadBool(m, "demonstrative", where);
  out.quantified = ReadBool(m, "quantified", where);
  out.appositive_with = ReadOptInt(m, "appositive_with", kNoMention, where);
  out.copular_with = ReadOptInt(m, "copular_with", kNoMention, where);
  out.maximalnp_group = ReadOptInt(m, "maximalnp_group", -1, where);
  out.unseen = ReadBool(m, "unseen", where);
  return out;
}

Document DocumentFromJson(const json &obj, const std::string &where) {
  if (!obj.is_object()) throw CorpusError("schema", where, "not an object");
  Document doc;
  auto id = obj.find("doc_id");
  if (id == obj.end() || !id->is_string()) {
    throw CorpusError("schema", where, "missing doc_id");
  }
  doc.doc_id = id->get<std::string>();
  auto src = obj.find("source");
  if (src != obj.end() && !src->is_null()) {
    if (!src->is_string()) throw CorpusError("schema", where, "bad source");
    doc.source = src->get<std::string>();
  }
  auto sents = obj.find("sentences");
  if (sents == obj.end() || !sents->is_array()) {
    throw CorpusError("schema", where, "missing sentences array");
  }
  for (const auto &s : *sents) {
    if (!s.is_array()) throw CorpusError("schema", where, "bad sentence");
    std::vector<std::string> tokens;
    for (const auto &t : s) {
      if (!t.is_string()) throw CorpusError("schema", where, "bad token");
      tokens.push_back(t.get<std::string>());
    }
    doc.sentences.push_back(std::move(tokens));
  }
  auto mentions = obj.find("mentions");
  if (mentions == obj.end() || !mentions->is_array()) {
    throw CorpusError("schema", where, "missing mentions array");
  }
  for (const auto &m : *mentions) {
    doc.mentions.push_back(MentionFromJson(m, where));
  }
  doc.gold = ReadClusters(obj, where);
  return doc;
}

ordered_json MentionToJson(const Mention &m) {
  ordered_json j;
  j["id"] = m.id;
  j["sent"] = m.sent;
  j["start"] = m.start;
  j["end"] = m.end;
  if (m.head_start && m.head_end) {
    j["head_start"] = *m.head_start;
    j["head_end"] = *m.head_end;
  }
  j["mtype"] = ToString(m.mtype);
  j["number"] = ToString(m.number);
  j["gender"] = ToString(m.gender);
  j["semclass"] = ToString(m.semclass);
  j["animacy"] = ToString(m.animacy);
  j["ne_tag"] = ToString(m.ne_tag);
  j["subject"] = m.subject;
  j["nested"] = m.nested;
  j["embedded"] = m.embedded;
  j["indefinite"] = m.indefinite;
  j["definite"] = m.definite;
  j["demonstrative"] = m.demonstrative;
  j["quantified"] = m.quantified;
  j["appositive_with"] =
      m.appositive_with == kNoMention ? ordered_json() : ordered_json(m.appositive_with);
  j["copular_with"] =
      m.copular_with == kNoMention ? ordered_json() : ordered_json(m.copular_with);
  j["maximalnp_group"] = m.maximalnp_group;
  j["unseen"] = m.unseen;
  return j;
}

ordered_json ClustersToJson(const Partition &p) {
  ordered_json arr = ordered_json::array();
  for (const auto &c : p.clusters) arr.push_back(c);
  return arr;
}

template <typename T, typename Parser>
std::vector<T> ParseLines(std::istream &in, Parser parse) {
  std::vector<T> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = "line " + std::to_string(lineno);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw CorpusError("parse", where, e.what());
    }
    out.push_back(parse(obj, where));
  }
  return out;
}

}  // namespace

std::string_view ToString(MentionType v) { return kMentionTypeNames.Get(v); }
std::string_view ToString(Number v) { return kNumberNames.Get(v); }
std::string_view ToString(Gender v) { return kGenderNames.Get(v); }
std::string_view ToString(SemClass v) { return kSemClassNames.Get(v); }
std::string_view ToString(Animacy v) { return kAnimacyNames.Get(v); }
std::string_view ToString(NeTag v) { return kNeTagNames.Get(v); }

bool FromString(std::string_view s, MentionType *v) {
  return kMentionTypeNames.Parse(s, v);
}
bool FromString(std::string_view s, Number *v) { return kNumberNames.Parse(s, v); }
bool FromString(std::string_view s, Gender *v) { return kGenderNames.Parse(s, v); }
bool FromString(std::string_view s, SemClass *v) {
  return kSemClassNames.Parse(s, v);
}
bool FromString(std::string_view s, Animacy *v) {
  return kAnimacyNames.Parse(s, v);
}
bool FromString(std::string_view s, NeTag *v) { return kNeTagNames.Parse(s, v); }

std::vector<int> Partition::ClusterOf(int n) const {
  std::vector<int> out(n, -1);
  for (size_t c = 0; c < clusters.size(); ++c) {
    for (int id : clusters[c]) {
      if (id >= 0 && id < n) out[id] = static_cast<int>(c);
    }
  }
  return out;
}

void Partition::Canonicalize() {
  for (auto &c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end());
}

CorpusError::CorpusError(const std::string &rule, const std::string &where,
                         const std::string &detail)
    : std::runtime_error(where + ": " + rule + ": " + detail),
      rule_(rule),
      where_(where) {}

void ValidateDocument(const Document &doc) {
  if (!KnownSources().count(doc.source)) {
    Fail(doc, "source is a known data source", "unknown source " + doc.source);
  }
  const int n = doc.size();
  for (int i = 0; i < n; ++i) {
    const Mention &m = doc.mentions[i];
    std::string at = "mention " + std::to_string(m.id);
    if (m.id != i) {
      Fail(doc, "mention ids are 0..n-1 in document order",
           "expected id " + std::to_string(i) + ", found " +
               std::to_string(m.id));
    }
    if (m.sent < 0 || m.sent >= static_cast<int>(doc.sentences.size())) {
      Fail(doc, "mention span lies within its sentence", at + ": bad sentence");
    }
    int len = static_cast<int>(doc.sentences[m.sent].size());
    if (m.start < 0 || m.end > len || m.start >= m.end) {
      Fail(doc, "mention span lies within its sentence", at + ": bad span");
    }
    if (i > 0) {
      const Mention &p = doc.mentions[i - 1];
      if (std::tie(p.sent, p.start, p.end) >= std::tie(m.sent, m.start, m.end)) {
        Fail(doc, "mention ids are 0..n-1 in document order",
             at + " is out of order");
      }
    }
    if (m.head_start.has_value() != m.head_end.has_value()) {
      Fail(doc, "head span is contained in the mention span",
           at + ": partial head span");
    }
    if (m.head_start &&
        (*m.head_start < m.start || *m.head_end > m.end ||
         *m.head_start >= *m.head_end)) {
      Fail(doc, "head span is contained in the mention span", at);
    }
    int flags = m.indefinite + m.definite + m.demonstrative + m.quantified;
    if (flags > 1) {
      Fail(doc, "at most one of indefinite/definite/demonstrative/quantified",
           at);
    }
    for (int ref : {m.appositive_with, m.copular_with}) {
      if (ref == kNoMention) continue;
      if (ref < 0 || ref >= n || ref == i || doc.mentions[ref].sent != m.sent) {
        Fail(doc, "appositive/copular partner is in the same sentence",
             at + " references " + std::to_string(ref));
      }
    }
  }
  std::set<int> universe;
  for (int i = 0; i < n; ++i) universe.insert(i);
  ValidateClusters(doc.gold, universe, DocWhere(doc));
}

std::vector<Document> ParseCorpus(std::istream &in) {
  return ParseLines<Document>(in, [](const json &obj, const std::string &where) {
    Document doc = DocumentFromJson(obj, where);
    ValidateDocument(doc);
    return doc;
  });
}

std::vector<Document> LoadCorpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("file exists", path, "cannot open");
  return ParseCorpus(in);
}

std::string SerializeDocument(const Document &doc) {
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["source"] = doc.source;
  j["sentences"] = doc.sentences;
  ordered_json mentions = ordered_json::array();
  for (const auto &m : doc.mentions) mentions.push_back(MentionToJson(m));
  j["mentions"] = std::move(mentions);
  j["clusters"] = ClustersToJson(doc.gold);
  return j.dump();
}

void WriteCorpus(std::ostream &out, const std::vector<Document> &docs) {
  for (const auto &doc : docs) out << SerializeDocument(doc) << '\n';
}

void WriteCorpus(const std::string &path, const std::vector<Document> &docs) {
  std::ofstream out(path);
  if (!out) throw CorpusError("file writable", path, "cannot open");
  WriteCorpus(out, docs);
}

PartitionDoc ToPartitionDoc(const Document &doc, const Partition &p) {
  PartitionDoc pd;
  pd.doc_id = doc.doc_id;
  for (const auto &m : doc.mentions) {
    pd.mentions.push_back({m.id, m.sent, m.start, m.end});
  }
  pd.partition = p;
  return pd;
}

void ValidatePartitionDoc(const PartitionDoc &pd) {
  std::string where = "doc " + pd.doc_id;
  std::set<int> universe;
  std::set<std::tuple<int, int, int>> spans;
  for (const auto &m : pd.mentions) {
    if (!universe.insert(m.id).second) {
      throw CorpusError("mention ids unique", where,
                        "duplicate id " + std::to_string(m.id));
    }
    if (m.start >= m.end || m.start < 0) {
      throw CorpusError("mention span non-empty", where,
                        "mention " + std::to_string(m.id));
    }
    if (!spans.insert({m.sent, m.start, m.end}).second) {
      throw CorpusError("mention spans unique", where,
                        "mention " + std::to_string(m.id));
    }
  }
  ValidateClusters(pd.partition, universe, where);
}

std::vector<PartitionDoc> ParsePartitions(std::istream &in) {
  return ParseLines<PartitionDoc>(
      in, [](const json &obj, const std::string &where) {
        PartitionDoc pd;
        auto id = obj.find("doc_id");
        if (id == obj.end() || !id->is_string()) {
          throw CorpusError("schema", where, "missing doc_id");
        }
        pd.doc_id = id->get<std::string>();
        auto mentions = obj.find("mentions");
        if (mentions == obj.end() || !mentions->is_array()) {
          throw CorpusError("schema", where, "missing mentions array");
        }
        for (const auto &m : *mentions) {
          pd.mentions.push_back({ReadInt(m, "id", where),
                                 ReadInt(m, "sent", where),
                                 ReadInt(m, "start", where),
                                 ReadInt(m, "end", where)});
        }
        pd.partition = ReadClusters(obj, where);
        ValidatePartitionDoc(pd);
        return pd;
      });
}

std::vector<PartitionDoc> LoadPartitions(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("file exists", path, "cannot open");
  return ParsePartitions(in);
}

void WritePartitions(std::ostream &out, const std::vector<PartitionDoc> &docs) {
  for (const auto &pd : docs) {
    ordered_json j;
    j["doc_id"] = pd.doc_id;
    ordered_json mentions = ordered_json::array();
    for (const auto &m : pd.mentions) {
      ordered_json mj;
      mj["id"] = m.id;
      mj["sent"] = m.sent;
      mj["start"] = m.start;
      mj["end"] = m.end;
      mentions.push_back(std::move(mj));
    }
    j["mentions"] = std::move(mentions);
    j["clusters"] = ClustersToJson(pd.partition);
    out << j.dump() << '\n';
  }
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> MentionTokens(const Document &doc, const Mention &m) {
  const auto &sent = doc.sentences[m.sent];
  return {sent.begin() + m.start, sent.begin() + m.end};
}

std::string SurfaceString(const Document &doc, const Mention &m) {
  const auto &sent = doc.sentences[m.sent];
  std::string out;
  for (int i = m.start; i < m.end; ++i) {
    if (i > m.start) out += ' ';
    out += sent[i];
  }
  return out;
}

std::string SurfaceKey(const Document &doc, const Mention &m) {
  return Lowercase(SurfaceString(doc, m));
}

int GlobalOffset(const Document &doc, const Mention &m) {
  int offset = 0;
  for (int s = 0; s < m.sent; ++s) {
    offset += static_cast<int>(doc.sentences[s].size());
  }
  return offset + m.start;
}

std::string HeadOf(const Mention &m, const Document &doc) {
  if (m.mtype == MentionType::kProper) return SurfaceKey(doc, m);
  int last = m.head_end ? *m.head_end - 1 : m.end - 1;
  return Lowercase(doc.sentences[m.sent][last]);
}

const PronounInfo *PronounOf(const Document &doc, const Mention &m) {
  if (m.mtype != MentionType::kPronoun) return nullptr;
  return DefaultPronounLexicon().Find(SurfaceKey(doc, m));
}

Number EffectiveNumber(const Document &doc, const Mention &m) {
  const PronounInfo *p = PronounOf(doc, m);
  return p ? p->number : m.number;
}

Gender EffectiveGender(const Document &doc, const Mention &m) {
  const PronounInfo *p = PronounOf(doc, m);
  return p ? p->gender : m.gender;
}

std::vector<Document> UnseenTrain(std::vector<Document> docs, double rate,
                                  uint64_t seed) {
  // Group every mention of the corpus by surface key.
  std::map<std::string, std::vector<std::pair<int, int>>> by_key;
  std::vector<std::pair<int, int>> common;
  for (int d = 0; d < static_cast<int>(docs.size()); ++d) {
    for (auto &m : docs[d].mentions) {
      m.unseen = false;
      by_key[SurfaceKey(docs[d], m)].push_back({d, m.id});
      if (m.mtype == MentionType::kCommon) common.push_back({d, m.id});
    }
  }
  const size_t target = static_cast<size_t>(
      std::llround(std::clamp(rate, 0.0, 1.0) * static_cast<double>(common.size())));
  Random rng(seed);
  rng.Shuffle(common);
  size_t marked = 0;
  for (const auto &[d, id] : common) {
    if (marked >= target) break;
    if (docs[d].mentions[id].unseen) continue;
    for (const auto &[d2, id2] : by_key[SurfaceKey(docs[d], docs[d].mentions[id])]) {
      Mention &other = docs[d2].mentions[id2];
      other.unseen = true;
      if (other.mtype == MentionType::kCommon) ++marked;
    }
  }
  return docs;
}

std::set<std::string> CollectVocab(const std::vector<Document> &docs) {
  std::set<std::string> vocab;
  for (const auto &doc : docs) {
    for (const auto &m : doc.mentions) {
      if (!m.unseen) vocab.insert(SurfaceKey(doc, m));
    }
  }
  return vocab;
}

std::vector<Document> UnseenTest(std::vector<Document> docs,
                                 const std::set<std::string> &vocab) {
  for (auto &doc : docs) {
    for (auto &m : doc.mentions) {
      m.unseen = !vocab.count(SurfaceKey(doc, m));
    }
  }
  return docs;
}

}  // namespace coref
