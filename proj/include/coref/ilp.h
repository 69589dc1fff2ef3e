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

#ifndef COREF_ILP_H_
#define COREF_ILP_H_

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coref/corpus.h"
#include "coref/features.h"
#include "coref/learn.h"

namespace coref {

class IlpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kProbClamp = 1e-6;

// -log of a probability clamped to [kProbClamp, 1 - kProbClamp].
double CostOf(double prob);

// Index of the pair variable for j < k.
inline int PairIndex(int j, int k) { return k * (k - 1) / 2 + j; }

// 0/1 program over anaphoricity variables y_k and pair variables x<j,k>.
// Setting a variable to 1 costs `cost`, leaving it 0 costs `cost_bar`.
struct IlpProgram {
  std::string doc_id;
  int n = 0;
  std::vector<double> coref_cost;      // by PairIndex
  std::vector<double> coref_cost_bar;  // by PairIndex
  std::vector<double> anaph_cost;      // by mention
  std::vector<double> anaph_cost_bar;  // by mention

  int NumPairs() const { return n * (n - 1) / 2; }
  int NumVars() const { return NumPairs() + n; }
};

struct IlpSolution {
  std::vector<char> x;  // by PairIndex
  std::vector<char> y;  // by mention
  double objective = 0.0;
  long nodes = 0;  // search nodes visited
};

// pair_prob[PairIndex(j, k)] and anaph_prob[k] are probabilities.
IlpProgram BuildProgram(const std::string &doc_id, int n,
                        const std::vector<double> &pair_prob,
                        const std::vector<double> &anaph_prob);
// Probabilities from a log-loss mention-pair model and a log-loss
// anaphoricity model. Throws IlpError for hinge models.
IlpProgram BuildProgram(const Document &doc, const LinearModel &coref_model,
                        const LinearModel &anaph_model, FeatureSetId fs);

double Objective(const IlpProgram &p, const IlpSolution &s);
// x<j,k> <= y_k and y_k <= sum_j x<j,k> for every k.
bool Feasible(const IlpProgram &p, const IlpSolution &s);

inline constexpr int kDefaultMaxVars = 40;

// Exact minimization by depth-first branch-and-bound. Throws IlpError when
// the program has more than `max_vars` variables.
IlpSolution SolveExact(const IlpProgram &p, int max_vars = kDefaultMaxVars);

// Transitive closure of the selected pairs.
Partition DecodePartition(const IlpSolution &s, int n);

// CPLEX LP text format; the objective constant is written as a comment.
void WriteLp(const IlpProgram &p, std::ostream &out);

}  // namespace coref

#endif  // COREF_ILP_H_
