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

#include "coref/synth.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coref {
namespace {

const std::vector<std::string> &CommonHeads() {
  static const std::vector<std::string> kHeads = {
      "turbine", "airline", "senator", "reporter", "bridge", "factory",
      "contract", "ship", "village", "hospital", "engineer", "doctor",
      "teacher", "court", "judge", "committee", "union", "bank",
      "plan", "report", "budget", "election", "vote", "treaty",
      "border", "river", "harbor", "station", "train", "truck",
      "pilot", "soldier", "officer", "minister", "agency", "company",
      "school", "student", "museum", "painting", "book", "letter",
      "camera", "phone", "computer", "network", "satellite", "rocket",
      "island", "mountain", "valley", "forest", "farm", "farmer",
      "market", "shop", "restaurant", "chef", "hotel", "guest",
      "festival", "concert", "singer", "band", "album", "film",
      "director", "actor", "theater", "stadium", "team", "coach",
      "player", "match", "trophy", "league", "route", "highway",
      "tunnel", "airport", "runway", "engine", "wheel", "tower",
      "castle", "palace", "garden", "fountain", "statue", "church",
      "temple", "library", "archive", "document", "survey", "study",
      "laboratory", "scientist", "vaccine", "virus", "patient", "clinic",
      "pharmacy", "drug", "lawyer", "witness", "suspect", "prison",
      "guard", "police", "detective", "crime", "fire", "storm",
      "flood", "drought", "harvest", "crop", "mine", "miner",
      "pipeline", "refinery", "tanker", "port", "ferry", "canal",
      "dam", "reservoir", "well", "pump", "generator", "battery",
      "sensor", "robot", "drone", "printer", "server", "database",
      "website", "platform", "startup", "investor", "fund", "loan",
      "debt", "tax", "tariff", "policy", "reform", "strike",
      "protest", "march", "rally", "speech", "debate", "poll",
      "campaign", "candidate", "party", "parliament", "council", "mayor",
      "governor", "embassy", "ambassador", "envoy", "summit", "deal",
  };
  return kHeads;
}

const std::vector<std::string> &Adjectives() {
  static const std::vector<std::string> kAdjectives = {
      "old", "new", "large", "small", "local", "foreign",
      "national", "private", "public", "former", "main", "second",
  };
  return kAdjectives;
}

const std::vector<std::string> &MaleFirst() {
  static const std::vector<std::string> kNames = {
      "John", "Peter", "Ahmed", "Carlos", "Ivan", "Kenji", "Omar",
      "Lucas", "David", "Samuel", "Victor", "Hugo", "Felix", "Marco",
      "Tomas", "Nikolai", "Rahul", "Daniel", "Oscar", "Pavel",
  };
  return kNames;
}

const std::vector<std::string> &FemaleFirst() {
  static const std::vector<std::string> kNames = {
      "Mary", "Anna", "Fatima", "Sofia", "Olga", "Yuki", "Leila",
      "Emma", "Sarah", "Grace", "Clara", "Ines", "Nadia", "Elena",
      "Maria", "Priya", "Hannah", "Julia", "Alice", "Irene",
  };
  return kNames;
}

const std::vector<std::string> &LastNames() {
  static const std::vector<std::string> kNames = {
      "Smith", "Garcia", "Ivanova", "Tanaka", "Haddad", "Novak",
      "Keller", "Moreau", "Rossi", "Silva", "Kowalski", "Jensen",
      "Okafor", "Mendes", "Larsen", "Dubois", "Weber", "Fischer",
      "Romero", "Costa", "Hansen", "Nakamura", "Petrov", "Ortiz",
      "Brennan", "Lindqvist", "Amari", "Castillo", "Varga", "Quinn",
  };
  return kNames;
}

const std::vector<std::vector<std::string>> &OrgNames() {
  static const std::vector<std::vector<std::string>> kNames = {
      {"Acme", "Corp"},      {"Globex", "Group"},   {"Initech", "Inc"},
      {"Vandelay", "Ltd"},   {"Hooli", "Labs"},     {"Umbra", "Holdings"},
      {"Stark", "Industries"}, {"Wayne", "Enterprises"}, {"Tyrell", "Corp"},
      {"Cyberdyne", "Systems"}, {"Soylent", "Foods"}, {"Gringotts", "Bank"},
      {"Oceanic", "Airlines"}, {"Nakatomi", "Trading"}, {"Monarch", "Energy"},
      {"Polaris", "Shipping"}, {"Zenith", "Media"},  {"Helix", "Pharma"},
      {"Apex", "Mining"},    {"Orion", "Motors"},   {"Vertex", "Bank"},
      {"Summit", "Partners"}, {"Atlas", "Logistics"}, {"Nova", "Telecom"},
  };
  return kNames;
}

const std::vector<std::string> &Places() {
  static const std::vector<std::string> kNames = {
      "Oslo", "Lima", "Nairobi", "Hanoi", "Quito", "Tbilisi", "Riga",
      "Accra", "Dakar", "Lisbon", "Porto", "Krakow", "Bergen", "Tunis",
      "Cusco", "Mombasa", "Hue", "Tartu", "Gdansk", "Seville",
      "Valencia", "Turin", "Basel", "Graz", "Malmo", "Tampere",
  };
  return kNames;
}

const std::vector<std::string> &Fillers() {
  static const std::vector<std::string> kWords = {
      "said", "met", "visited", "praised", "questioned", "joined",
      "left", "reached", "described", "supported", "near", "with",
  };
  return kWords;
}

enum class Kind { kMale, kFemale, kOrg, kPlace, kCommon };

struct Entity {
  Kind kind;
  std::vector<std::string> name;  // proper names
  std::string head;               // common nouns
  std::string adjective;          // may be empty
  int mentions = 1;
  bool pronouns = false;
};

// Draws a value from `pool` that is not in `used`.
template <typename T>
T Fresh(Random &rng, const std::vector<T> &pool, std::set<T> *used) {
  if (used->size() >= pool.size()) {
    throw std::logic_error("synthetic name pool exhausted");
  }
  while (true) {
    const T &v = rng.Pick(pool);
    if (used->insert(v).second) return v;
  }
}

struct Rendered {
  std::vector<std::string> tokens;
  Mention m;
};

Rendered Render(const Entity &e, int occurrence, Random &rng,
                double pronoun_rate) {
  Rendered r;
  Mention &m = r.m;
  m.number = Number::kSingular;
  switch (e.kind) {
    case Kind::kMale:
    case Kind::kFemale: {
      bool male = e.kind == Kind::kMale;
      m.gender = male ? Gender::kMale : Gender::kFemale;
      m.semclass = SemClass::kPerson;
      m.animacy = Animacy::kYes;
      if (occurrence > 0 && e.pronouns && rng.Bernoulli(pronoun_rate)) {
        m.mtype = MentionType::kPronoun;
        m.gender = Gender::kUnknown;
        m.number = Number::kUnknown;
        r.tokens = {male ? (rng.Bernoulli(0.5) ? "he" : "him") : "she"};
      } else {
        m.mtype = MentionType::kProper;
        m.ne_tag = NeTag::kPerson;
        r.tokens = e.name;
      }
      break;
    }
    case Kind::kOrg:
    case Kind::kPlace: {
      bool org = e.kind == Kind::kOrg;
      m.mtype = MentionType::kProper;
      m.gender = Gender::kNeuter;
      m.animacy = Animacy::kNo;
      m.semclass = org ? SemClass::kOrganization : SemClass::kLocation;
      m.ne_tag = org ? NeTag::kOrganization : NeTag::kLocation;
      r.tokens = e.name;
      break;
    }
    case Kind::kCommon: {
      m.mtype = MentionType::kCommon;
      m.gender = Gender::kNeuter;
      m.animacy = Animacy::kNo;
      m.semclass = SemClass::kObject;
      bool first = occurrence == 0;
      const std::string &lead = e.adjective.empty() ? e.head : e.adjective;
      std::string article = "the";
      if (first) {
        article = std::string("aeiou").find(lead[0]) != std::string::npos
                      ? "an"
                      : "a";
      }
      m.indefinite = first;
      m.definite = !first;
      r.tokens.push_back(article);
      if (!e.adjective.empty()) r.tokens.push_back(e.adjective);
      r.tokens.push_back(e.head);
      break;
    }
  }
  return r;
}

}  // namespace

Document SynthDocument(const SynthConfig &cfg, Random &rng,
                       const std::string &doc_id, const std::string &source) {
  if (cfg.min_entities < 1 || cfg.max_entities < cfg.min_entities ||
      cfg.max_mentions_per_entity < 2 || cfg.distractors < 0) {
    throw std::invalid_argument("bad synthetic corpus configuration");
  }
  std::set<std::string> used_heads;
  std::set<std::vector<std::string>> used_names;
  std::set<std::string> used_first, used_last;
  std::vector<Entity> entities;

  auto person = [&](bool male) {
    Entity e;
    e.kind = male ? Kind::kMale : Kind::kFemale;
    e.name = {Fresh(rng, male ? MaleFirst() : FemaleFirst(), &used_first),
              Fresh(rng, LastNames(), &used_last)};
    used_names.insert(e.name);
    return e;
  };
  auto common = [&]() {
    Entity e;
    e.kind = Kind::kCommon;
    e.head = Fresh(rng, CommonHeads(), &used_heads);
    if (rng.Bernoulli(0.3)) e.adjective = rng.Pick(Adjectives());
    return e;
  };
  auto named = [&](bool org) {
    Entity e;
    e.kind = org ? Kind::kOrg : Kind::kPlace;
    if (org) {
      e.name = Fresh(rng, OrgNames(), &used_names);
    } else {
      std::vector<std::vector<std::string>> places;
      for (const auto &p : Places()) places.push_back({p});
      e.name = Fresh(rng, places, &used_names);
    }
    return e;
  };

  int num_entities = cfg.min_entities +
                     static_cast<int>(rng.Below(cfg.max_entities - cfg.min_entities + 1));
  for (int i = 0; i < num_entities; ++i) {
    uint64_t roll = rng.Below(10);
    Entity e = roll < 2   ? person(true)
               : roll < 4 ? person(false)
               : roll < 5 ? named(true)
               : roll < 6 ? named(false)
                          : common();
    e.mentions = 2 + static_cast<int>(rng.Below(cfg.max_mentions_per_entity - 1));
    entities.push_back(std::move(e));
  }
  int males = 0, females = 0;
  for (const auto &e : entities) {
    males += e.kind == Kind::kMale;
    females += e.kind == Kind::kFemale;
  }
  for (auto &e : entities) {
    e.pronouns = (e.kind == Kind::kMale && males == 1) ||
                 (e.kind == Kind::kFemale && females == 1);
  }
  int num_distractors = static_cast<int>(rng.Below(2 * cfg.distractors + 1));
  for (int i = 0; i < num_distractors; ++i) {
    Entity e = rng.Bernoulli(0.75) ? common() : named(rng.Bernoulli(0.5));
    e.mentions = 1;
    entities.push_back(std::move(e));
  }

  // Random interleaving that keeps each entity's mentions in order.
  std::vector<int> remaining;
  int total = 0;
  for (const auto &e : entities) {
    remaining.push_back(e.mentions);
    total += e.mentions;
  }
  std::vector<int> order;
  for (int left = total; left > 0; --left) {
    int r = static_cast<int>(rng.Below(left));
    int e = 0;
    while (r >= remaining[e]) r -= remaining[e++];
    --remaining[e];
    order.push_back(e);
  }

  Document doc;
  doc.doc_id = doc_id;
  doc.source = source;
  std::vector<int> seen(entities.size(), 0);
  std::vector<std::vector<int>> clusters(entities.size());
  size_t next = 0;
  while (next < order.size()) {
    int in_sentence = 1 + static_cast<int>(rng.Below(3));
    std::vector<std::string> sentence;
    int sent = static_cast<int>(doc.sentences.size());
    for (int i = 0; i < in_sentence && next < order.size(); ++i, ++next) {
      int e = order[next];
      const Entity &ent = entities[e];
      bool definite_distractor = ent.mentions == 1 &&
                                 ent.kind == Kind::kCommon &&
                                 rng.Bernoulli(0.5);
      Rendered r = Render(ent, definite_distractor ? 1 : seen[e], rng,
                          cfg.pronoun_rate);
      ++seen[e];
      if (i > 0) sentence.push_back(rng.Pick(Fillers()));
      Mention m = r.m;
      m.id = doc.size();
      m.sent = sent;
      m.start = static_cast<int>(sentence.size());
      m.end = m.start + static_cast<int>(r.tokens.size());
      m.head_start = m.mtype == MentionType::kCommon ? m.end - 1 : m.start;
      m.head_end = m.end;
      m.subject = i == 0;
      m.maximalnp_group = m.id;
      sentence.insert(sentence.end(), r.tokens.begin(), r.tokens.end());
      clusters[e].push_back(m.id);
      doc.mentions.push_back(std::move(m));
    }
    sentence.push_back(".");
    doc.sentences.push_back(std::move(sentence));
  }
  for (auto &c : clusters) doc.gold.clusters.push_back(std::move(c));
  doc.gold.Canonicalize();
  ValidateDocument(doc);
  return doc;
}

std::vector<Document> SynthCorpus(const SynthConfig &cfg) {
  if (cfg.docs < 0 || cfg.sources.empty()) {
    throw std::invalid_argument("bad synthetic corpus configuration");
  }
  Random rng(cfg.seed);
  std::vector<Document> docs;
  for (int i = 0; i < cfg.docs; ++i) {
    const std::string &source = cfg.sources[i % cfg.sources.size()];
    docs.push_back(SynthDocument(cfg, rng, "synth-" + std::to_string(i), source));
  }
  return docs;
}

}  // namespace coref
