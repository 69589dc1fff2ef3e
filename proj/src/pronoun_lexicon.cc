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
#include <set>

#include "coref/corpus.h"

namespace coref {

void PronounLexicon::Add(std::string word, PronounInfo info) {
  entries_[std::move(word)] = std::move(info);
}

const PronounInfo *PronounLexicon::Find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> PronounLexicon::NominativeForms() const {
  std::set<std::string> forms;
  for (const auto &[word, info] : entries_) forms.insert(info.nominative);
  return {forms.begin(), forms.end()};
}

namespace {

struct Row {
  const char *word;
  int person;
  Gender gender;
  Number number;
  const char *nominative;
  bool personal;
};

constexpr Gender M = Gender::kMale;
constexpr Gender F = Gender::kFemale;
constexpr Gender N = Gender::kNeuter;
constexpr Gender U = Gender::kUnknown;
constexpr Number SG = Number::kSingular;
constexpr Number PL = Number::kPlural;
constexpr Number UN = Number::kUnknown;

// Personal, possessive, reflexive, archaic, colloquial and wh-forms.
constexpr Row kRows[] = {
    {"i", 1, U, SG, "I", true},
    {"me", 1, U, SG, "I", true},
    {"my", 1, U, SG, "I", true},
    {"mine", 1, U, SG, "I", true},
    {"myself", 1, U, SG, "I", true},
    {"we", 1, U, PL, "WE", true},
    {"us", 1, U, PL, "WE", true},
    {"our", 1, U, PL, "WE", true},
    {"ours", 1, U, PL, "WE", true},
    {"ourselves", 1, U, PL, "WE", true},
    {"ourself", 1, U, PL, "WE", true},
    {"you", 2, U, UN, "YOU", true},
    {"your", 2, U, UN, "YOU", true},
    {"yours", 2, U, UN, "YOU", true},
    {"yourself", 2, U, SG, "YOU", true},
    {"yourselves", 2, U, PL, "YOU", true},
    {"ye", 2, U, PL, "YOU", true},
    {"ya", 2, U, UN, "YOU", true},
    {"y'all", 2, U, PL, "YOU", true},
    {"u", 2, U, UN, "YOU", true},
    {"thou", 2, U, SG, "THOU", true},
    {"thee", 2, U, SG, "THOU", true},
    {"thy", 2, U, SG, "THOU", true},
    {"thine", 2, U, SG, "THOU", true},
    {"thyself", 2, U, SG, "THOU", true},
    {"he", 3, M, SG, "HE", true},
    {"him", 3, M, SG, "HE", true},
    {"his", 3, M, SG, "HE", true},
    {"himself", 3, M, SG, "HE", true},
    {"hisself", 3, M, SG, "HE", true},
    {"she", 3, F, SG, "SHE", true},
    {"her", 3, F, SG, "SHE", true},
    {"hers", 3, F, SG, "SHE", true},
    {"herself", 3, F, SG, "SHE", true},
    {"it", 3, N, SG, "IT", true},
    {"its", 3, N, SG, "IT", true},
    {"itself", 3, N, SG, "IT", true},
    {"they", 3, U, PL, "THEY", true},
    {"them", 3, U, PL, "THEY", true},
    {"their", 3, U, PL, "THEY", true},
    {"theirs", 3, U, PL, "THEY", true},
    {"themselves", 3, U, PL, "THEY", true},
    {"themself", 3, U, SG, "THEY", true},
    {"'em", 3, U, PL, "THEY", true},
    {"em", 3, U, PL, "THEY", true},
    {"one", 3, U, SG, "ONE", false},
    {"one's", 3, U, SG, "ONE", false},
    {"oneself", 3, U, SG, "ONE", false},
    {"who", 3, U, UN, "WHO", false},
    {"whom", 3, U, UN, "WHO", false},
    {"whose", 3, U, UN, "WHO", false},
    {"whoever", 3, U, UN, "WHO", false},
    {"whomever", 3, U, UN, "WHO", false},
    {"whosoever", 3, U, UN, "WHO", false},
    {"which", 3, N, UN, "WHICH", false},
    {"whichever", 3, N, UN, "WHICH", false},
    {"what", 3, N, UN, "WHAT", false},
    {"whatever", 3, N, UN, "WHAT", false},
    {"whatsoever", 3, N, UN, "WHAT", false},
};

PronounLexicon BuildDefault() {
  PronounLexicon lex;
  for (const Row &r : kRows) {
    lex.Add(r.word, {r.person, r.gender, r.number, r.nominative, r.personal});
  }
  return lex;
}

}  // namespace

const PronounLexicon &DefaultPronounLexicon() {
  static const PronounLexicon kLexicon = BuildDefault();
  return kLexicon;
}

}  // namespace coref
