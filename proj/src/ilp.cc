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

#include "coref/ilp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace coref {

double CostOf(double prob) {
  return -std::log(std::clamp(prob, kProbClamp, 1.0 - kProbClamp));
}

IlpProgram BuildProgram(const std::string &doc_id, int n,
                        const std::vector<double> &pair_prob,
                        const std::vector<double> &anaph_prob) {
  IlpProgram p;
  p.doc_id = doc_id;
  p.n = n;
  if (static_cast<int>(pair_prob.size()) != p.NumPairs() ||
      static_cast<int>(anaph_prob.size()) != n) {
    throw IlpError("probability table sizes do not match the mention count");
  }
  for (double prob : pair_prob) {
    if (!std::isfinite(prob)) throw IlpError("non-finite probability");
    p.coref_cost.push_back(CostOf(prob));
    p.coref_cost_bar.push_back(CostOf(1.0 - prob));
  }
  for (double prob : anaph_prob) {
    if (!std::isfinite(prob)) throw IlpError("non-finite probability");
    p.anaph_cost.push_back(CostOf(prob));
    p.anaph_cost_bar.push_back(CostOf(1.0 - prob));
  }
  return p;
}

IlpProgram BuildProgram(const Document &doc, const LinearModel &coref_model,
                        const LinearModel &anaph_model, FeatureSetId fs) {
  if (coref_model.loss != Loss::kLog || anaph_model.loss != Loss::kLog) {
    throw IlpError("joint inference needs log-loss models");
  }
  if (coref_model.kind != TaskKind::kClassify ||
      anaph_model.kind != TaskKind::kClassify) {
    throw IlpError("joint inference needs classification models");
  }
  FeatureExtractor fx(fs);
  const int n = doc.size();
  std::vector<double> pair_prob(n * (n - 1) / 2);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      pair_prob[PairIndex(j, k)] = PredictProb(coref_model, fx.Pair(doc, j, k));
    }
  }
  std::vector<double> anaph_prob(n);
  for (int k = 0; k < n; ++k) {
    anaph_prob[k] = PredictProb(anaph_model, Anaphoricity(doc, k));
  }
  return BuildProgram(doc.doc_id, n, pair_prob, anaph_prob);
}

double Objective(const IlpProgram &p, const IlpSolution &s) {
  double obj = 0.0;
  for (int k = 0; k < p.n; ++k) {
    obj += s.y[k] ? p.anaph_cost[k] : p.anaph_cost_bar[k];
    for (int j = 0; j < k; ++j) {
      int i = PairIndex(j, k);
      obj += s.x[i] ? p.coref_cost[i] : p.coref_cost_bar[i];
    }
  }
  return obj;
}

bool Feasible(const IlpProgram &p, const IlpSolution &s) {
  if (static_cast<int>(s.x.size()) != p.NumPairs() ||
      static_cast<int>(s.y.size()) != p.n) {
    return false;
  }
  for (int k = 0; k < p.n; ++k) {
    int links = 0;
    for (int j = 0; j < k; ++j) {
      char x = s.x[PairIndex(j, k)];
      if (x && !s.y[k]) return false;
      links += x;
    }
    if (s.y[k] && links == 0) return false;
  }
  return true;
}

namespace {

// Branch-and-bound over the variables of one mention k: y_k and the pair
// variables x<0,k>..x<k-1,k>. No constraint spans two mentions, so the
// program's optimum is the sum of the per-mention optima.
class BlockSearch {
 public:
  BlockSearch(const std::vector<double> &c, const std::vector<double> &cbar,
              double a, double abar)
      : c_(c), cbar_(cbar), a_(a), abar_(abar), m_(c.size()) {
    suffix_min_.assign(m_ + 1, 0.0);
    suffix_penalty_.assign(m_ + 1, std::numeric_limits<double>::infinity());
    for (size_t j = m_; j-- > 0;) {
      suffix_min_[j] = suffix_min_[j + 1] + std::min(c_[j], cbar_[j]);
      suffix_penalty_[j] =
          std::min(suffix_penalty_[j + 1], std::max(0.0, c_[j] - cbar_[j]));
    }
  }

  void Run() {
    // y = 0 forces every pair variable to 0.
    ++nodes_;
    best_ = abar_ + std::accumulate(cbar_.begin(), cbar_.end(), 0.0);
    best_x_.assign(m_, 0);
    best_y_ = 0;
    if (m_ == 0) return;  // y = 1 needs a predecessor
    current_.assign(m_, 0);
    Descend(0, a_, false);
  }

  double best() const { return best_; }
  const std::vector<char> &best_x() const { return best_x_; }
  char best_y() const { return best_y_; }
  long nodes() const { return nodes_; }

 private:
  double Bound(size_t i, double fixed, bool any) const {
    double b = fixed + suffix_min_[i];
    if (!any) b += suffix_penalty_[i];
    return b;
  }

  void Descend(size_t i, double fixed, bool any) {
    ++nodes_;
    if (!(Bound(i, fixed, any) < best_)) return;
    if (i == m_) {
      best_ = fixed;
      best_x_ = current_;
      best_y_ = 1;
      return;
    }
    // The last free variable must be 1 if nothing links yet.
    bool forced = !any && i + 1 == m_;
    bool one_first = forced || c_[i] < cbar_[i];
    for (int pass = 0; pass < 2; ++pass) {
      bool one = (pass == 0) == one_first;
      if (!one && forced) continue;
      current_[i] = one;
      Descend(i + 1, fixed + (one ? c_[i] : cbar_[i]), any || one);
      current_[i] = 0;
    }
  }

  const std::vector<double> &c_;
  const std::vector<double> &cbar_;
  double a_, abar_;
  size_t m_;
  std::vector<double> suffix_min_;
  std::vector<double> suffix_penalty_;
  std::vector<char> current_;
  std::vector<char> best_x_;
  char best_y_ = 0;
  double best_ = 0.0;
  long nodes_ = 0;
};

}  // namespace

IlpSolution SolveExact(const IlpProgram &p, int max_vars) {
  if (p.NumVars() > max_vars) {
    throw IlpError("program has " + std::to_string(p.NumVars()) +
                   " variables, above the exact-solver limit of " +
                   std::to_string(max_vars));
  }
  IlpSolution s;
  s.x.assign(p.NumPairs(), 0);
  s.y.assign(p.n, 0);
  for (int k = 0; k < p.n; ++k) {
    std::vector<double> c(k), cbar(k);
    for (int j = 0; j < k; ++j) {
      c[j] = p.coref_cost[PairIndex(j, k)];
      cbar[j] = p.coref_cost_bar[PairIndex(j, k)];
    }
    BlockSearch search(c, cbar, p.anaph_cost[k], p.anaph_cost_bar[k]);
    search.Run();
    s.y[k] = search.best_y();
    for (int j = 0; j < k; ++j) s.x[PairIndex(j, k)] = search.best_x()[j];
    s.nodes += search.nodes();
  }
  s.objective = Objective(p, s);
  return s;
}

Partition DecodePartition(const IlpSolution &s, int n) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      if (s.x[PairIndex(j, k)]) parent[find(k)] = find(j);
    }
  }
  std::vector<std::vector<int>> by_root(n);
  for (int v = 0; v < n; ++v) by_root[find(v)].push_back(v);
  Partition out;
  for (auto &c : by_root) {
    if (!c.empty()) out.clusters.push_back(std::move(c));
  }
  out.Canonicalize();
  return out;
}

void WriteLp(const IlpProgram &p, std::ostream &out) {
  auto x = [](int j, int k) {
    return "x_" + std::to_string(j) + "_" + std::to_string(k);
  };
  auto y = [](int k) { return "y_" + std::to_string(k); };
  auto term = [&out](double coef, const std::string &var) {
    out << (coef < 0 ? " - " : " + ") << std::abs(coef) << " " << var;
  };
  double constant = 0.0;
  out << "\\ document " << p.doc_id << "\n";
  out.precision(17);
  out << "Minimize\n obj:";
  for (int k = 0; k < p.n; ++k) {
    term(p.anaph_cost[k] - p.anaph_cost_bar[k], y(k));
    constant += p.anaph_cost_bar[k];
    for (int j = 0; j < k; ++j) {
      int i = PairIndex(j, k);
      term(p.coref_cost[i] - p.coref_cost_bar[i], x(j, k));
      constant += p.coref_cost_bar[i];
    }
  }
  out << "\n\\ objective constant " << constant << "\n";
  out << "Subject To\n";
  for (int k = 0; k < p.n; ++k) {
    for (int j = 0; j < k; ++j) {
      out << " link_" << j << "_" << k << ": " << x(j, k) << " - " << y(k)
          << " <= 0\n";
    }
    out << " anaph_" << k << ": " << y(k);
    for (int j = 0; j < k; ++j) out << " - " << x(j, k);
    out << " <= 0\n";
  }
  out << "Binary\n";
  for (int k = 0; k < p.n; ++k) {
    out << " " << y(k) << "\n";
    for (int j = 0; j < k; ++j) out << " " << x(j, k) << "\n";
  }
  out << "End\n";
}

}  // namespace coref
