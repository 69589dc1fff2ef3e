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

// Seeded synthetic corpora. Within a document every entity has its own head
// word, common entities are introduced indefinitely and referred back to
// definitely, and pronouns only refer to a person whose gender is unique in
// the document, so the annotations determine the gold partition.

#ifndef COREF_SYNTH_H_
#define COREF_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "coref/corpus.h"
#include "coref/random.h"

namespace coref {

struct SynthConfig {
  int docs = 200;
  uint64_t seed = 1;
  std::vector<std::string> sources = {"NW", "BN"};
  int min_entities = 3;
  int max_entities = 5;
  int max_mentions_per_entity = 4;
  // Expected number of singleton distractors per document.
  int distractors = 2;
  double pronoun_rate = 0.5;
};

// One document drawn from `rng`.
Document SynthDocument(const SynthConfig &cfg, Random &rng,
                       const std::string &doc_id, const std::string &source);

// cfg.docs documents; sources are assigned round-robin.
std::vector<Document> SynthCorpus(const SynthConfig &cfg);

}  // namespace coref

#endif  // COREF_SYNTH_H_
