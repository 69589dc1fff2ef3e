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

#include "coref/features.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace coref {

SparseVector::SparseVector(std::initializer_list<Map::value_type> init) {
  for (const auto &[name, value] : init) Add(name, value);
}

void SparseVector::Add(const std::string &name, double value) {
  if (value == 0.0) return;
  auto [it, inserted] = entries_.emplace(name, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) entries_.erase(it);
  }
}

double SparseVector::Get(const std::string &name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? 0.0 : it->second;
}

void SparseVector::Merge(const SparseVector &other) {
  for (const auto &[name, value] : other.entries_) {
    auto [it, inserted] = entries_.emplace(name, value);
    if (!inserted && it->second != value) {
      throw std::logic_error("conflicting values for feature " + name);
    }
  }
}

std::string_view ToString(FeatureSetId fs) {
  switch (fs) {
    case FeatureSetId::kConventional: return "conventional";
    case FeatureSetId::kLexical: return "lexical";
    case FeatureSetId::kCombined: return "combined";
  }
  return "?";
}

bool FromString(std::string_view s, FeatureSetId *fs) {
  for (auto v : {FeatureSetId::kConventional, FeatureSetId::kLexical,
                 FeatureSetId::kCombined}) {
    if (ToString(v) == s) {
      *fs = v;
      return true;
    }
  }
  return false;
}

namespace {

const std::set<std::string> &Determiners() {
  static const std::set<std::string> kSet = {"the", "a", "an", "this",
                                             "that", "these", "those"};
  return kSet;
}

const std::set<std::string> &NumberWords() {
  static const std::set<std::string> kSet = {
      "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
      "ten", "eleven", "twelve", "twenty", "thirty", "forty", "fifty",
      "hundred", "thousand", "million", "billion", "dozen", "several"};
  return kSet;
}

const std::set<std::string> &AdjectiveWords() {
  static const std::set<std::string> kSet = {
      "new", "old", "big", "small", "large", "great", "good", "bad", "high",
      "low", "long", "short", "young", "first", "last", "former", "next",
      "same", "other", "top", "main", "major", "senior", "chief", "local",
      "whole", "entire", "early", "late", "recent", "current", "final"};
  return kSet;
}

bool IsCardinal(const std::string &t) {
  if (NumberWords().count(t)) return true;
  bool digit = false;
  for (char c : t) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.') {
      return false;
    }
  }
  return digit;
}

bool IsCapitalized(const std::string &t) {
  return !t.empty() && std::isupper(static_cast<unsigned char>(t[0]));
}

bool IsLowerWord(const std::string &t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (!std::islower(static_cast<unsigned char>(c)) && c != '-') return false;
  }
  return true;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() + 1 &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsAdjective(const std::string &t) {
  if (!IsLowerWord(t)) return false;
  if (AdjectiveWords().count(t)) return true;
  for (std::string_view suf : {"able", "ible", "al", "ful", "ic", "ive",
                               "less", "ous", "ish", "ian", "ern"}) {
    if (EndsWith(t, suf)) return true;
  }
  return false;
}

bool IsCommonNoun(const std::string &t) {
  return IsLowerWord(t) && !IsCardinal(t) && !IsAdjective(t) &&
         !Determiners().count(t);
}

std::string Join(const std::vector<std::string> &tokens, size_t from = 0) {
  std::string out;
  for (size_t i = from; i < tokens.size(); ++i) {
    if (i > from) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string_view YesNo(bool b) { return b ? "Y" : "N"; }
std::string_view CompatIncompat(bool b) { return b ? "C" : "I"; }

// Per-mention attributes shared by the pair and anaphoricity features.
struct MentionInfo {
  const Mention *m = nullptr;
  std::vector<std::string> tokens;        // original case
  std::vector<std::string> lower_tokens;  // lowercased
  std::string key;                        // lowercased surface string
  std::string stripped;                   // key without leading determiners
  std::string head;
  const PronounInfo *pronoun = nullptr;
  Number number = Number::kUnknown;
  Gender gender = Gender::kUnknown;
  std::string pro_type;                   // nominative form, OTHER or NA
  std::vector<std::string> modifiers;     // sorted non-head tokens
  bool is_pronoun = false;
  bool is_proper = false;
};

MentionInfo Describe(const Document &doc, int id) {
  MentionInfo info;
  const Mention &m = doc.mentions[id];
  info.m = &m;
  info.tokens = MentionTokens(doc, m);
  for (const auto &t : info.tokens) info.lower_tokens.push_back(Lowercase(t));
  info.key = Join(info.lower_tokens);
  size_t first = 0;
  while (first + 1 < info.lower_tokens.size() &&
         Determiners().count(info.lower_tokens[first])) {
    ++first;
  }
  info.stripped = Join(info.lower_tokens, first);
  info.head = HeadOf(m, doc);
  info.is_pronoun = m.mtype == MentionType::kPronoun;
  info.is_proper = m.mtype == MentionType::kProper;
  info.pronoun = PronounOf(doc, m);
  info.number = info.pronoun ? info.pronoun->number : m.number;
  info.gender = info.pronoun ? info.pronoun->gender : m.gender;
  if (!info.is_pronoun) {
    info.pro_type = "NA";
  } else {
    info.pro_type = info.pronoun ? info.pronoun->nominative : "OTHER";
  }
  if (!info.is_proper) {
    int head_lo = m.head_start ? *m.head_start : m.end - 1;
    int head_hi = m.head_end ? *m.head_end : m.end;
    for (int t = m.start; t < m.end; ++t) {
      if (t >= head_lo && t < head_hi) continue;
      info.modifiers.push_back(info.lower_tokens[t - m.start]);
    }
    std::sort(info.modifiers.begin(), info.modifiers.end());
  }
  return info;
}

// Contiguous token subsequence test.
bool ContainsTokens(const std::vector<std::string> &hay,
                    const std::vector<std::string> &needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) !=
         hay.end();
}

std::string Initials(const std::vector<std::string> &tokens) {
  std::string out;
  for (const auto &t : tokens) {
    if (IsCapitalized(t)) out += t[0];
  }
  return out;
}

std::string WithoutPeriods(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c != '.') out += c;
  }
  return out;
}

bool IsAcronymOf(const MentionInfo &acr, const MentionInfo &full) {
  if (acr.tokens.size() != 1 || full.tokens.size() < 2) return false;
  std::string a = WithoutPeriods(acr.tokens[0]);
  if (a.size() < 2) return false;
  for (char c : a) {
    if (!std::isupper(static_cast<unsigned char>(c))) return false;
  }
  return a == Initials(full.tokens);
}

std::vector<std::string> StrippedTokens(const MentionInfo &info) {
  size_t first = 0;
  while (first + 1 < info.lower_tokens.size() &&
         Determiners().count(info.lower_tokens[first])) {
    ++first;
  }
  return {info.lower_tokens.begin() + first, info.lower_tokens.end()};
}

bool IsTokenPrefix(const std::vector<std::string> &shorter,
                   const std::vector<std::string> &longer) {
  if (shorter.empty() || shorter.size() > longer.size()) return false;
  return std::equal(shorter.begin(), shorter.end(), longer.begin());
}

bool AliasOf(const MentionInfo &a, const MentionInfo &b) {
  if (IsAcronymOf(a, b) || IsAcronymOf(b, a)) return true;
  if (a.is_proper && b.is_proper) {
    auto ta = StrippedTokens(a);
    auto tb = StrippedTokens(b);
    if (IsTokenPrefix(ta, tb) || IsTokenPrefix(tb, ta)) return true;
  }
  return a.m->ne_tag != NeTag::kNone && a.m->ne_tag == b.m->ne_tag &&
         a.key == b.key;
}

// Three-valued agreement on an attribute with an "unknown" value.
template <typename T>
std::string_view Agreement(T a, T b, T unknown) {
  if (a == unknown || b == unknown) return "NA";
  return a == b ? "C" : "I";
}

bool SpansOverlapNested(const Mention &a, const Mention &b) {
  if (a.sent != b.sent) return false;
  bool a_in_b = a.start >= b.start && a.end <= b.end;
  bool b_in_a = b.start >= a.start && b.end <= a.end;
  return a_in_b || b_in_a;
}

// Values of features 4-10 for the active mention.
std::array<std::string, 7> ActiveValues(const MentionInfo &k) {
  const Mention &m = *k.m;
  return {std::string(ToString(k.number)), std::string(ToString(k.gender)),
          std::string(YesNo(k.is_pronoun)), std::string(YesNo(m.nested)),
          std::string(ToString(m.semclass)), std::string(ToString(m.animacy)),
          k.pro_type};
}

// All 39 feature values for candidate a and active mention b.
std::vector<std::string> PairValues(const MentionInfo &a,
                                    const MentionInfo &b) {
  const Mention &mj = *a.m;
  const Mention &mk = *b.m;
  std::vector<std::string> v;
  v.reserve(kNumPairFeatures);
  // 1-3: candidate antecedent.
  v.emplace_back(YesNo(a.is_pronoun));
  v.emplace_back(YesNo(mj.subject));
  v.emplace_back(YesNo(mj.nested));
  // 4-10: active mention.
  auto active = ActiveValues(b);
  for (auto &s : active) v.push_back(s);
  // 11-32: relational.
  bool same_string = a.key == b.key;
  v.emplace_back(CompatIncompat(a.head == b.head));
  v.emplace_back(CompatIncompat(same_string));
  v.emplace_back(CompatIncompat(ContainsTokens(a.lower_tokens, b.lower_tokens) ||
                                ContainsTokens(b.lower_tokens, a.lower_tokens)));
  v.emplace_back(CompatIncompat(a.is_pronoun && b.is_pronoun && same_string));
  v.emplace_back(CompatIncompat(a.is_proper && b.is_proper && same_string));
  v.emplace_back(CompatIncompat(!a.is_pronoun && !b.is_pronoun && same_string));
  if (a.modifiers.empty() || b.modifiers.empty()) {
    v.emplace_back("NA");
  } else {
    v.emplace_back(CompatIncompat(a.modifiers == b.modifiers));
  }
  if (!a.is_pronoun || !b.is_pronoun) {
    v.emplace_back("NA");
  } else {
    v.emplace_back(CompatIncompat(same_string || a.pro_type == b.pro_type));
  }
  std::string_view number = Agreement(a.number, b.number, Number::kUnknown);
  std::string_view gender = Agreement(a.gender, b.gender, Gender::kUnknown);
  v.emplace_back(number);
  v.emplace_back(gender);
  if (number == "C" && gender == "C") {
    v.emplace_back("C");
  } else if (number == "I" && gender == "I") {
    v.emplace_back("I");
  } else {
    v.emplace_back("NA");
  }
  v.emplace_back(Agreement(mj.animacy, mk.animacy, Animacy::kUnknown));
  if (a.is_pronoun && b.is_pronoun) {
    v.emplace_back("C");
  } else if (!a.is_pronoun && !b.is_pronoun) {
    v.emplace_back("I");
  } else {
    v.emplace_back("NA");
  }
  if (a.is_proper && b.is_proper) {
    v.emplace_back("C");
  } else if (!a.is_proper && !b.is_proper) {
    v.emplace_back("I");
  } else {
    v.emplace_back("NA");
  }
  // C when the maximal NP projections differ.
  bool same_maximal = mj.maximalnp_group >= 0 &&
                      mj.maximalnp_group == mk.maximalnp_group;
  v.emplace_back(CompatIncompat(!same_maximal));
  v.emplace_back(CompatIncompat(!SpansOverlapNested(mj, mk)));
  v.emplace_back(CompatIncompat(mk.indefinite && mk.appositive_with == kNoMention));
  v.emplace_back(CompatIncompat(mj.appositive_with == mk.id ||
                                mk.appositive_with == mj.id));
  v.emplace_back(CompatIncompat(mj.copular_with == mk.id ||
                                mk.copular_with == mj.id));
  v.emplace_back(Agreement(mj.semclass, mk.semclass, SemClass::kUnknown));
  v.emplace_back(CompatIncompat(AliasOf(a, b)));
  v.push_back(DistanceBin(std::abs(mk.sent - mj.sent)));
  // 33-39: concatenations of the active-mention values of both mentions.
  auto cand = ActiveValues(a);
  for (size_t i = 0; i < cand.size(); ++i) {
    v.push_back(cand[i] + "-" + active[i]);
  }
  return v;
}

std::vector<std::string> Product(const std::vector<std::string> &a) {
  std::vector<std::string> out;
  for (const auto &x : a) {
    for (const auto &y : a) out.push_back(x + "-" + y);
  }
  return out;
}

std::vector<PairFeatureDef> BuildDefs() {
  const std::vector<std::string> yn = {"Y", "N"};
  const std::vector<std::string> ci = {"C", "I"};
  const std::vector<std::string> cin = {"C", "I", "NA"};
  const std::vector<std::string> number = {"SINGULAR", "PLURAL", "UNKNOWN"};
  const std::vector<std::string> gender = {"MALE", "FEMALE", "NEUTER",
                                           "UNKNOWN"};
  std::vector<std::string> semclass;
  for (int i = 0; i <= static_cast<int>(SemClass::kUnknown); ++i) {
    semclass.emplace_back(ToString(static_cast<SemClass>(i)));
  }
  const std::vector<std::string> animacy = {"Y", "N", "UNKNOWN"};
  std::vector<std::string> pro_type = DefaultPronounLexicon().NominativeForms();
  pro_type.push_back("OTHER");
  pro_type.push_back("NA");
  std::vector<std::string> distance;
  for (int d = 0; d <= 5; ++d) distance.push_back(DistanceBin(d));

  return {
      {1, "PRONOUN_1", yn},
      {2, "SUBJECT_1", yn},
      {3, "NESTED_1", yn},
      {4, "NUMBER_2", number},
      {5, "GENDER_2", gender},
      {6, "PRONOUN_2", yn},
      {7, "NESTED_2", yn},
      {8, "SEMCLASS_2", semclass},
      {9, "ANIMACY_2", animacy},
      {10, "PRO_TYPE_2", pro_type},
      {11, "HEAD_MATCH", ci},
      {12, "STR_MATCH", ci},
      {13, "SUBSTR_MATCH", ci},
      {14, "PRO_STR_MATCH", ci},
      {15, "PN_STR_MATCH", ci},
      {16, "NONPRO_STR_MATCH", ci},
      {17, "MODIFIER_MATCH", cin},
      {18, "PRO_TYPE_MATCH", cin},
      {19, "NUMBER", cin},
      {20, "GENDER", cin},
      {21, "AGREEMENT", cin},
      {22, "ANIMACY", cin},
      {23, "BOTH_PRONOUNS", cin},
      {24, "BOTH_PROPER_NOUNS", cin},
      {25, "MAXIMALNP", ci},
      {26, "SPAN", ci},
      {27, "INDEFINITE", ci},
      {28, "APPOSITIVE", ci},
      {29, "COPULAR", ci},
      {30, "SEMCLASS", cin},
      {31, "ALIAS", ci},
      {32, "DISTANCE", distance},
      {33, "NUMBER_PAIR", Product(number)},
      {34, "GENDER_PAIR", Product(gender)},
      {35, "PRONOUN_PAIR", Product(yn)},
      {36, "NESTED_PAIR", Product(yn)},
      {37, "SEMCLASS_PAIR", Product(semclass)},
      {38, "ANIMACY_PAIR", Product(animacy)},
      {39, "PRO_TYPE_PAIR", Product(pro_type)},
  };
}

// Positions in PairFeatureDefs() of ALIAS and DISTANCE.
constexpr int kAliasIndex = 30;
constexpr int kDistanceIndex = 31;
constexpr int kFirstRelational = 10;

std::string_view NeLabel(NeTag tag) { return ToString(tag); }

// One mention's word set contains the other's.
bool WordSubset(const MentionInfo &a, const MentionInfo &b) {
  std::set<std::string> sa(a.lower_tokens.begin(), a.lower_tokens.end());
  std::set<std::string> sb(b.lower_tokens.begin(), b.lower_tokens.end());
  return std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()) ||
         std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

// Unseen, lexical and semi-lexical features; no ALIAS/DISTANCE.
void AddLexicalCore(const MentionInfo &a,
                    const MentionInfo &b, SparseVector *out) {
  const Mention &mj = *a.m;
  const Mention &mk = *b.m;
  if (mj.unseen && mk.unseen) {
    out->Add(a.key == b.key ? "UNSEEN-SAME" : "UNSEEN-DIFF");
    return;
  }
  if (mj.unseen || mk.unseen) return;
  out->Add("LEX:" + a.head + "|" + b.head);
  bool ne_a = mj.ne_tag != NeTag::kNone;
  bool ne_b = mk.ne_tag != NeTag::kNone;
  if (ne_a && ne_b) {
    if (a.key == b.key) {
      out->Add(std::string(NeLabel(mj.ne_tag)) + "-SAME");
    } else if (mj.ne_tag == mk.ne_tag && WordSubset(a, b)) {
      out->Add(std::string(NeLabel(mj.ne_tag)) + "-SUBSAME");
    } else {
      out->Add(std::string(NeLabel(mj.ne_tag)) + "-" +
               std::string(NeLabel(mk.ne_tag)));
    }
  } else if (ne_a) {
    out->Add(std::string(NeLabel(mj.ne_tag)) + "|" + b.head);
  } else if (ne_b) {
    out->Add(a.head + "|" + std::string(NeLabel(mk.ne_tag)));
  }
}

void AddPredicates(const std::string &name, const std::vector<std::string> &domain,
                   const std::unordered_map<std::string, int> &counts,
                   int cluster_size, SparseVector *out) {
  for (const auto &value : domain) {
    auto it = counts.find(value);
    int t = it == counts.end() ? 0 : it->second;
    out->Add(std::string(PredicatePrefix(PredicateFor(t, cluster_size))) +
             name + "=" + value);
  }
}

void AddActive(const MentionInfo &k, SparseVector *out) {
  const auto &defs = PairFeatureDefs();
  auto values = ActiveValues(k);
  for (int i = 0; i < 7; ++i) out->Add(defs[3 + i].name + "=" + values[i]);
}

}  // namespace

const std::vector<PairFeatureDef> &PairFeatureDefs() {
  static const std::vector<PairFeatureDef> kDefs = BuildDefs();
  return kDefs;
}

std::string DistanceBin(int sentence_distance) {
  if (sentence_distance >= 5) return "5+";
  return std::to_string(std::max(0, sentence_distance));
}

bool IsAlias(const Document &doc, const Mention &a, const Mention &b) {
  return AliasOf(Describe(doc, a.id), Describe(doc, b.id));
}

SparseVector ConventionalPair(const Document &doc, int j, int k) {
  const auto &defs = PairFeatureDefs();
  auto values = PairValues(Describe(doc, j), Describe(doc, k));
  SparseVector v;
  for (int i = 0; i < kNumPairFeatures; ++i) {
    v.Add(defs[i].name + "=" + values[i]);
  }
  return v;
}

SparseVector ActiveMentionFeatures(const Document &doc, int k) {
  SparseVector v;
  AddActive(Describe(doc, k), &v);
  return v;
}

SparseVector Anaphoricity(const Document &doc, int k) {
  MentionInfo info = Describe(doc, k);
  const Mention &m = *info.m;
  bool str_match = false, head_match = false, alias = false;
  for (int j = 0; j < k; ++j) {
    MentionInfo other = Describe(doc, j);
    str_match = str_match || other.stripped == info.stripped;
    head_match = head_match || other.head == info.head;
    alias = alias || AliasOf(other, info);
  }
  bool uppercase = false;
  {
    bool letters = false, all_upper = true;
    for (const auto &t : info.tokens) {
      for (char c : t) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          letters = true;
          if (!std::isupper(static_cast<unsigned char>(c))) all_upper = false;
        }
      }
    }
    uppercase = letters && all_upper;
  }
  bool article = m.definite || m.indefinite;
  bool contains_pn = false;
  if (!info.is_proper) {
    for (const auto &o : doc.mentions) {
      if (o.id != m.id && o.sent == m.sent && o.start >= m.start &&
          o.end <= m.end && o.mtype == MentionType::kProper) {
        contains_pn = true;
      }
    }
  }
  // Token-shape patterns over the words following a leading "the".
  bool starts_the = !info.lower_tokens.empty() && info.lower_tokens[0] == "the";
  std::vector<std::string> rest;
  if (starts_the) rest.assign(info.tokens.begin() + 1, info.tokens.end());
  auto all_caps = [](const std::vector<std::string> &ts, size_t from,
                     size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i) {
      if (!IsCapitalized(ts[i])) return false;
    }
    return true;
  };
  bool the_n = starts_the && rest.size() == 1 && IsCommonNoun(rest[0]);
  bool the_2n = starts_the && rest.size() == 2 && IsCommonNoun(rest[0]) &&
                IsCommonNoun(rest[1]);
  bool the_pn = starts_the && all_caps(rest, 0, rest.size());
  bool the_pn_n = starts_the && rest.size() >= 2 &&
                  all_caps(rest, 0, rest.size() - 1) &&
                  IsCommonNoun(rest.back());
  bool the_adj_n = starts_the && rest.size() == 2 && IsAdjective(rest[0]) &&
                   IsCommonNoun(rest[1]);
  bool the_num_n = starts_the && rest.size() == 2 && IsCardinal(rest[0]) &&
                   IsCommonNoun(rest[1]);
  bool the_ne = false;
  if (starts_the && !rest.empty()) {
    for (const auto &o : doc.mentions) {
      if (o.sent == m.sent && o.start == m.start + 1 && o.end == m.end &&
          o.ne_tag != NeTag::kNone) {
        the_ne = true;
      }
    }
  }
  bool the_sing_n = starts_the && !rest.empty() &&
                    info.number == Number::kSingular && !contains_pn &&
                    std::none_of(rest.begin(), rest.end(), IsCapitalized);

  std::string art = m.definite ? "DEFINITE"
                    : m.quantified ? "QUANTIFIED"
                                   : "INDEFINITE";
  SparseVector v;
  auto yn = [&v](const char *name, bool b) {
    v.Add(std::string(name) + "=" + std::string(YesNo(b)));
  };
  yn("STR_MATCH", str_match);
  yn("HEAD_MATCH", head_match);
  yn("UPPERCASE", uppercase);
  yn("DEFINITE", m.definite);
  yn("DEMONSTRATIVE", m.demonstrative);
  yn("INDEFINITE", m.indefinite);
  yn("QUANTIFIED", m.quantified);
  v.Add("ARTICLE=" + art);
  yn("PRONOUN", info.is_pronoun);
  yn("PROPER_NOUN", info.is_proper);
  yn("BARE_SINGULAR", info.number == Number::kSingular && !article);
  yn("BARE_PLURAL", info.number == Number::kPlural && !article);
  yn("EMBEDDED", m.embedded);
  yn("APPOSITIVE", m.appositive_with != kNoMention && m.appositive_with > m.id);
  yn("PREDNOM", m.copular_with != kNoMention && m.copular_with > m.id);
  v.Add("NUMBER=" + std::string(ToString(info.number)));
  yn("CONTAINS_PN", contains_pn);
  yn("THE_N", the_n);
  yn("THE_2N", the_2n);
  yn("THE_PN", the_pn);
  yn("THE_PN_N", the_pn_n);
  yn("THE_ADJ_N", the_adj_n);
  yn("THE_NUM_N", the_num_n);
  yn("THE_NE", the_ne);
  yn("THE_SING_N", the_sing_n);
  yn("ALIAS", alias);
  return v;
}

SparseVector LexicalPair(const Document &doc, int j, int k) {
  MentionInfo a = Describe(doc, j);
  MentionInfo b = Describe(doc, k);
  SparseVector v;
  AddLexicalCore(a, b, &v);
  bool any_unseen = a.m->unseen || b.m->unseen;
  if (!any_unseen) {
    v.Add(std::string("ALIAS=") + std::string(CompatIncompat(AliasOf(a, b))));
    v.Add("DISTANCE=" + DistanceBin(std::abs(b.m->sent - a.m->sent)));
  }
  return v;
}

Predicate PredicateFor(int true_count, int cluster_size) {
  if (true_count <= 0) return Predicate::kNone;
  if (true_count >= cluster_size) return Predicate::kAll;
  if (2 * true_count < cluster_size) return Predicate::kMostFalse;
  return Predicate::kMostTrue;
}

std::string_view PredicatePrefix(Predicate p) {
  switch (p) {
    case Predicate::kNone: return "NONE-";
    case Predicate::kMostFalse: return "MOST-FALSE-";
    case Predicate::kMostTrue: return "MOST-TRUE-";
    case Predicate::kAll: return "ALL-";
  }
  return "";
}

SparseVector ClusterConventional(const Document &doc,
                                 std::span<const int> cluster, int k) {
  const auto &defs = PairFeatureDefs();
  MentionInfo active = Describe(doc, k);
  std::vector<std::unordered_map<std::string, int>> counts(kNumPairFeatures);
  for (int j : cluster) {
    auto values = PairValues(Describe(doc, j), active);
    for (int i = kFirstRelational; i < kNumPairFeatures; ++i) {
      ++counts[i][values[i]];
    }
  }
  SparseVector v;
  AddActive(active, &v);
  const int n = static_cast<int>(cluster.size());
  for (int i = kFirstRelational; i < kNumPairFeatures; ++i) {
    AddPredicates(defs[i].name, defs[i].domain, counts[i], n, &v);
  }
  return v;
}

SparseVector ClusterLexical(const Document &doc, std::span<const int> cluster,
                            int k) {
  const auto &defs = PairFeatureDefs();
  MentionInfo active = Describe(doc, k);
  std::unordered_map<std::string, int> alias_counts, distance_counts;
  SparseVector v;
  for (int j : cluster) {
    MentionInfo cand = Describe(doc, j);
    ++alias_counts[std::string(CompatIncompat(AliasOf(cand, active)))];
    ++distance_counts[DistanceBin(std::abs(active.m->sent - cand.m->sent))];
    AddLexicalCore(cand, active, &v);
  }
  const int n = static_cast<int>(cluster.size());
  AddPredicates(defs[kAliasIndex].name, defs[kAliasIndex].domain, alias_counts,
                n, &v);
  AddPredicates(defs[kDistanceIndex].name, defs[kDistanceIndex].domain,
                distance_counts, n, &v);
  return v;
}

SparseVector NullOption(const Document &doc, int k, FeatureSetId fs) {
  SparseVector v;
  if (fs != FeatureSetId::kLexical) v = ActiveMentionFeatures(doc, k);
  if (fs != FeatureSetId::kConventional) {
    const Mention &m = doc.mentions[k];
    v.Add(m.unseen ? "NULL-UNSEEN" : "NULL-" + HeadOf(m, doc));
  }
  return v;
}

std::string_view ToString(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::kUnseen: return "unseen";
    case FeatureGroup::kLexical: return "lexical";
    case FeatureGroup::kSemiLexical: return "semi-lexical";
    case FeatureGroup::kDistance: return "DISTANCE";
    case FeatureGroup::kAlias: return "ALIAS";
    case FeatureGroup::kStringMatching: return "STRING-MATCHING";
    case FeatureGroup::kGrammatical: return "GRAMMATICAL";
    case FeatureGroup::kSemantic: return "SEMANTIC";
  }
  return "?";
}

bool FromString(std::string_view s, FeatureGroup *g) {
  for (int i = 0; i <= static_cast<int>(FeatureGroup::kSemantic); ++i) {
    auto v = static_cast<FeatureGroup>(i);
    if (ToString(v) == s) {
      *g = v;
      return true;
    }
  }
  return false;
}

namespace {

FeatureGroup GroupOfTableRow(int number, FeatureSetId fs) {
  if (number == 32) return FeatureGroup::kDistance;
  if (number == 31) {
    return fs == FeatureSetId::kLexical ? FeatureGroup::kAlias
                                        : FeatureGroup::kSemantic;
  }
  if (number >= 11 && number <= 18) return FeatureGroup::kStringMatching;
  // Row 37 (semantic-class concatenation) is grouped with the semantic rows.
  if (number == 8 || number == 30 || number == 37) return FeatureGroup::kSemantic;
  return FeatureGroup::kGrammatical;
}

const std::unordered_map<std::string, int> &RowByName() {
  static const std::unordered_map<std::string, int> kMap = [] {
    std::unordered_map<std::string, int> m;
    for (const auto &def : PairFeatureDefs()) m[def.name] = def.number;
    return m;
  }();
  return kMap;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

FeatureGroup GroupOf(std::string_view name, FeatureSetId fs) {
  if (StartsWith(name, "LEX:")) return FeatureGroup::kLexical;
  if (StartsWith(name, "UNSEEN-") || name == "NULL-UNSEEN") {
    return FeatureGroup::kUnseen;
  }
  if (StartsWith(name, "NULL-")) return FeatureGroup::kLexical;
  std::string_view base = name;
  for (auto p : {Predicate::kNone, Predicate::kMostFalse, Predicate::kMostTrue,
                 Predicate::kAll}) {
    if (StartsWith(base, PredicatePrefix(p))) {
      base.remove_prefix(PredicatePrefix(p).size());
      break;
    }
  }
  size_t eq = base.find('=');
  if (eq != std::string_view::npos) {
    auto it = RowByName().find(std::string(base.substr(0, eq)));
    if (it != RowByName().end()) return GroupOfTableRow(it->second, fs);
  }
  return FeatureGroup::kSemiLexical;
}

std::vector<FeatureGroup> DefaultGroups(FeatureSetId fs) {
  switch (fs) {
    case FeatureSetId::kConventional:
      return {FeatureGroup::kStringMatching, FeatureGroup::kGrammatical,
              FeatureGroup::kSemantic, FeatureGroup::kDistance};
    case FeatureSetId::kLexical:
      return {FeatureGroup::kUnseen, FeatureGroup::kLexical,
              FeatureGroup::kSemiLexical, FeatureGroup::kDistance,
              FeatureGroup::kAlias};
    case FeatureSetId::kCombined:
      return {FeatureGroup::kUnseen, FeatureGroup::kLexical,
              FeatureGroup::kSemiLexical, FeatureGroup::kDistance,
              FeatureGroup::kStringMatching, FeatureGroup::kGrammatical,
              FeatureGroup::kSemantic};
  }
  return {};
}

FeatureExtractor::FeatureExtractor(FeatureSetId fs,
                                   std::vector<FeatureGroup> dropped)
    : fs_(fs), dropped_(std::move(dropped)) {}

SparseVector FeatureExtractor::Filter(SparseVector v) const {
  if (dropped_.empty()) return v;
  SparseVector out;
  for (const auto &[name, value] : v) {
    FeatureGroup g = GroupOf(name, fs_);
    if (std::find(dropped_.begin(), dropped_.end(), g) == dropped_.end()) {
      out.Add(name, value);
    }
  }
  return out;
}

SparseVector FeatureExtractor::Pair(const Document &doc, int j, int k) const {
  SparseVector v;
  if (fs_ != FeatureSetId::kLexical) v = ConventionalPair(doc, j, k);
  if (fs_ != FeatureSetId::kConventional) v.Merge(LexicalPair(doc, j, k));
  return Filter(std::move(v));
}

SparseVector FeatureExtractor::Cluster(const Document &doc,
                                       std::span<const int> cluster,
                                       int k) const {
  SparseVector v;
  if (fs_ != FeatureSetId::kLexical) v = ClusterConventional(doc, cluster, k);
  if (fs_ != FeatureSetId::kConventional) {
    v.Merge(ClusterLexical(doc, cluster, k));
  }
  return Filter(std::move(v));
}

SparseVector FeatureExtractor::Null(const Document &doc, int k) const {
  return Filter(NullOption(doc, k, fs_));
}

}  // namespace coref
