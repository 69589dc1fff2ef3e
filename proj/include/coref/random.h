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

#ifndef COREF_RANDOM_H_
#define COREF_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace coref {

// Seeded generator whose output sequence does not depend on the standard
// library's distribution implementations.
class Random {
 public:
  explicit Random(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n).
  uint64_t Below(uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  // Uniform real in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T> &v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T &Pick(const std::vector<T> &v) {
    return v[static_cast<size_t>(Below(v.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coref

#endif  // COREF_RANDOM_H_
