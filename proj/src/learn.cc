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

#include "coref/learn.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "coref/random.h"

namespace coref {

std::string_view ToString(Loss loss) {
  return loss == Loss::kHinge ? "HINGE" : "LOG";
}

bool FromString(std::string_view s, Loss *loss) {
  if (s == "HINGE" || s == "hinge") {
    *loss = Loss::kHinge;
  } else if (s == "LOG" || s == "log") {
    *loss = Loss::kLog;
  } else {
    return false;
  }
  return true;
}

double LinearModel::Weight(const std::string &name) const {
  auto it = weights.find(name);
  return it == weights.end() ? 0.0 : it->second;
}

void ValidateConfig(const TrainerConfig &cfg) {
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
    throw LearnError("C must be positive");
  }
  if (cfg.epochs < 1) throw LearnError("epochs must be at least 1");
}

double Logistic(double score) {
  if (score >= 0) return 1.0 / (1.0 + std::exp(-score));
  double e = std::exp(score);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  if (x > 0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double Dot(const FeatureList &x, const std::vector<double> &w) {
  double s = 0.0;
  for (const auto &[id, value] : x) s += w[id] * value;
  return s;
}

double HalfSquaredNorm(const std::vector<double> &w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return 0.5 * s;
}

// Averaged stochastic (sub)gradient descent with a scaled weight vector, so
// that the shrink step of the regularizer costs O(1). The average runs over
// the iterates of the current epoch:
//   current iterate w_t = scale * v,
//   running sum of iterates = total * v - offset.
class AveragedSgd {
 public:
  AveragedSgd(int dim, double lambda)
      : lambda_(lambda), v_(dim, 0.0), offset_(dim, 0.0) {}

  double Dot(const FeatureList &x) const { return scale_ * coref::Dot(x, v_); }

  // Starts step t: shrinks the iterate by (1 - eta * lambda).
  void BeginStep() {
    ++t_;
    double shrink = 1.0 - 1.0 / static_cast<double>(t_);
    if (shrink == 0.0) {
      std::fill(v_.begin(), v_.end(), 0.0);
      scale_ = 1.0;
    } else {
      scale_ *= shrink;
    }
  }

  // Adds eta * coef * x to the current iterate.
  void Update(const FeatureList &x, double coef) {
    if (coef == 0.0) return;
    double eta = 1.0 / (lambda_ * static_cast<double>(t_));
    double step = eta * coef / scale_;
    for (const auto &[id, value] : x) {
      double delta = step * value;
      v_[id] += delta;
      offset_[id] += delta * total_;
    }
  }

  void EndStep() {
    total_ += scale_;
    ++count_;
  }

  // Restarts the running average at the current iterate.
  void ResetAverage() {
    std::fill(offset_.begin(), offset_.end(), 0.0);
    total_ = 0.0;
    count_ = 0;
  }

  double Eta() const { return 1.0 / (lambda_ * static_cast<double>(t_)); }

  std::vector<double> Average() const {
    std::vector<double> w(v_.size(), 0.0);
    if (count_ == 0) return w;
    for (size_t i = 0; i < v_.size(); ++i) {
      w[i] = (total_ * v_[i] - offset_[i]) / static_cast<double>(count_);
    }
    return w;
  }

 private:
  double lambda_;
  std::vector<double> v_;
  std::vector<double> offset_;
  double scale_ = 1.0;
  double total_ = 0.0;
  long t_ = 0;
  long count_ = 0;
};

// Classification examples with an optional trailing bias coordinate of
// value -1.
struct ClassProblem {
  int dim = 0;
  bool bias = false;
  std::vector<FeatureList> x;
  std::vector<double> y;
};

ClassProblem MakeClassProblem(const TrainSet &ts, bool fit_bias) {
  ClassProblem p;
  p.bias = fit_bias;
  p.dim = ts.vocab.size() + (fit_bias ? 1 : 0);
  for (const Instance &inst : ts.instances) {
    if (inst.label != 1.0 && inst.label != -1.0) {
      throw LearnError("classification labels must be +1 or -1");
    }
    FeatureList x = inst.features;
    if (fit_bias) x.emplace_back(ts.vocab.size(), -1.0);
    p.x.push_back(std::move(x));
    p.y.push_back(inst.label);
  }
  return p;
}

struct Group {
  std::vector<int> members;
  std::vector<char> correct;
};

std::vector<Group> MakeGroups(const TrainSet &ts) {
  std::vector<Group> groups;
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < ts.instances.size(); ++i) {
    const Instance &inst = ts.instances[i];
    if (inst.label != 1.0 && inst.label != 2.0) {
      throw LearnError("rank labels must be 1 or 2");
    }
    auto [it, inserted] = index.emplace(inst.group, groups.size());
    if (inserted) groups.emplace_back();
    Group &g = groups[it->second];
    g.members.push_back(static_cast<int>(i));
    g.correct.push_back(inst.label == 2.0);
  }
  for (const Group &g : groups) {
    if (std::none_of(g.correct.begin(), g.correct.end(),
                     [](char c) { return c != 0; })) {
      throw LearnError("ranking group without a rank-2 instance");
    }
  }
  return groups;
}

double ClassLoss(Loss loss, double margin) {
  return loss == Loss::kHinge ? std::max(0.0, 1.0 - margin)
                              : Softplus(-margin);
}

// Derivative of the loss w.r.t. the margin, negated.
double ClassCoef(Loss loss, double margin) {
  if (loss == Loss::kHinge) return margin < 1.0 ? 1.0 : 0.0;
  return Logistic(-margin);
}

double ClassObjective(const ClassProblem &p, const std::vector<double> &w,
                      double lambda, Loss loss) {
  double sum = 0.0;
  for (size_t i = 0; i < p.x.size(); ++i) {
    sum += ClassLoss(loss, p.y[i] * Dot(p.x[i], w));
  }
  return lambda * HalfSquaredNorm(w) + sum / static_cast<double>(p.x.size());
}

// Per-group softmax probabilities.
std::vector<double> GroupProbs(const TrainSet &ts, const Group &g,
                               const std::vector<double> &w) {
  std::vector<double> s(g.members.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.size(); ++i) {
    s[i] = Dot(ts.instances[g.members[i]].features, w);
    mx = std::max(mx, s[i]);
  }
  double z = 0.0;
  for (double &v : s) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double &v : s) v /= z;
  return s;
}

double GroupLoss(const Group &g, const std::vector<double> &probs) {
  double pc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (g.correct[i]) pc += probs[i];
  }
  return -std::log(std::max(pc, std::numeric_limits<double>::min()));
}

double RankObjective(const TrainSet &ts, const std::vector<Group> &groups,
                     const std::vector<double> &w, double lambda) {
  double sum = 0.0;
  for (const Group &g : groups) sum += GroupLoss(g, GroupProbs(ts, g, w));
  return lambda * HalfSquaredNorm(w) + sum / static_cast<double>(groups.size());
}

// Gradient coefficients of the group loss: q_i - p_i, where q is p
// renormalized over the correct instances.
std::vector<double> GroupCoefs(const Group &g, const std::vector<double> &p) {
  double pc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (g.correct[i]) pc += p[i];
  }
  std::vector<double> c(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    double q = g.correct[i] && pc > 0 ? p[i] / pc : 0.0;
    c[i] = q - p[i];
  }
  return c;
}

LinearModel MakeModel(const TrainSet &ts, const std::vector<double> &w,
                      bool has_bias, TaskKind kind, Loss loss,
                      const TrainerConfig &cfg) {
  LinearModel m;
  m.kind = kind;
  m.loss = loss;
  m.feature_vocab = ts.vocab.names();
  std::sort(m.feature_vocab.begin(), m.feature_vocab.end());
  for (int i = 0; i < ts.vocab.size(); ++i) {
    if (w[i] != 0.0) m.weights[ts.vocab.name(i)] = w[i];
  }
  m.bias = has_bias ? w[ts.vocab.size()] : 0.0;
  m.meta.seed = cfg.seed;
  m.meta.c = cfg.c;
  m.meta.epochs = cfg.epochs;
  m.meta.num_instances = static_cast<int>(ts.instances.size());
  return m;
}

LinearModel TrainClassifier(const TrainSet &ts, const TrainerConfig &cfg,
                            Loss loss) {
  ValidateConfig(cfg);
  if (ts.instances.empty()) throw LearnError("empty training set");
  ClassProblem p = MakeClassProblem(ts, cfg.fit_bias);
  const size_t n = p.x.size();
  const double lambda = 1.0 / (cfg.c * static_cast<double>(n));
  AveragedSgd sgd(p.dim, lambda);
  Random rng(cfg.seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> best;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(order);
    sgd.ResetAverage();
    for (size_t i : order) {
      double margin = p.y[i] * sgd.Dot(p.x[i]);
      sgd.BeginStep();
      sgd.Update(p.x[i], p.y[i] * ClassCoef(loss, margin));
      sgd.EndStep();
    }
    std::vector<double> avg = sgd.Average();
    double obj = ClassObjective(p, avg, lambda, loss);
    if (obj <= best_obj) {
      best_obj = obj;
      best = std::move(avg);
    }
    trace.push_back(best_obj);
  }
  LinearModel m =
      MakeModel(ts, best, cfg.fit_bias, TaskKind::kClassify, loss, cfg);
  m.objective_trace = std::move(trace);
  return m;
}

}  // namespace

LinearModel TrainHingeClassifier(const TrainSet &ts, const TrainerConfig &cfg) {
  if (ts.kind != TaskKind::kClassify) {
    throw LearnError("hinge classifier needs a CLASSIFY training set");
  }
  return TrainClassifier(ts, cfg, Loss::kHinge);
}

LinearModel TrainLogClassifier(const TrainSet &ts, const TrainerConfig &cfg) {
  if (ts.kind != TaskKind::kClassify) {
    throw LearnError("log classifier needs a CLASSIFY training set");
  }
  return TrainClassifier(ts, cfg, Loss::kLog);
}

TrainSet PairwiseDifferences(const TrainSet &ts) {
  TrainSet out;
  out.kind = TaskKind::kClassify;
  out.vocab = ts.vocab;
  std::vector<Group> groups = MakeGroups(ts);
  for (const Group &g : groups) {
    for (size_t a = 0; a < g.members.size(); ++a) {
      for (size_t b = a + 1; b < g.members.size(); ++b) {
        const Instance &xi = ts.instances[g.members[a]];
        const Instance &xj = ts.instances[g.members[b]];
        if (xi.label == xj.label) continue;
        // Sorted merge of x_i - x_j.
        FeatureList diff;
        size_t p = 0, q = 0;
        while (p < xi.features.size() || q < xj.features.size()) {
          if (q == xj.features.size() ||
              (p < xi.features.size() &&
               xi.features[p].first < xj.features[q].first)) {
            diff.push_back(xi.features[p++]);
          } else if (p == xi.features.size() ||
                     xj.features[q].first < xi.features[p].first) {
            diff.emplace_back(xj.features[q].first, -xj.features[q].second);
            ++q;
          } else {
            double v = xi.features[p].second - xj.features[q].second;
            if (v != 0.0) diff.emplace_back(xi.features[p].first, v);
            ++p;
            ++q;
          }
        }
        Instance d;
        d.features = std::move(diff);
        d.label = xi.label > xj.label ? 1.0 : -1.0;
        d.group = xi.group;
        d.doc_id = xi.doc_id;
        d.k = xi.k;
        d.candidate = xi.candidate + "-" + xj.candidate;
        out.instances.push_back(std::move(d));
      }
    }
  }
  return out;
}

LinearModel TrainHingeRanker(const TrainSet &ts, const TrainerConfig &cfg) {
  ValidateConfig(cfg);
  if (ts.kind != TaskKind::kRank) {
    throw LearnError("hinge ranker needs a RANK training set");
  }
  if (ts.instances.empty()) throw LearnError("empty training set");
  TrainSet diffs = PairwiseDifferences(ts);
  TrainerConfig pair_cfg = cfg;
  pair_cfg.fit_bias = false;
  LinearModel m;
  if (diffs.instances.empty()) {
    m = MakeModel(ts, std::vector<double>(ts.vocab.size(), 0.0), false,
                  TaskKind::kRank, Loss::kHinge, pair_cfg);
  } else {
    m = TrainClassifier(diffs, pair_cfg, Loss::kHinge);
  }
  m.kind = TaskKind::kRank;
  m.meta.num_instances = static_cast<int>(ts.instances.size());
  return m;
}

LinearModel TrainLogRanker(const TrainSet &ts, const TrainerConfig &cfg) {
  ValidateConfig(cfg);
  if (ts.kind != TaskKind::kRank) {
    throw LearnError("log ranker needs a RANK training set");
  }
  if (ts.instances.empty()) throw LearnError("empty training set");
  std::vector<Group> groups = MakeGroups(ts);
  const size_t n = groups.size();
  const double lambda = 1.0 / (cfg.c * static_cast<double>(n));
  AveragedSgd sgd(ts.vocab.size(), lambda);
  Random rng(cfg.seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> best;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  std::vector<double> scores;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(order);
    sgd.ResetAverage();
    for (size_t gi : order) {
      const Group &g = groups[gi];
      scores.assign(g.members.size(), 0.0);
      double mx = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < g.members.size(); ++i) {
        scores[i] = sgd.Dot(ts.instances[g.members[i]].features);
        mx = std::max(mx, scores[i]);
      }
      double z = 0.0;
      for (double &s : scores) {
        s = std::exp(s - mx);
        z += s;
      }
      for (double &s : scores) s /= z;
      std::vector<double> coefs = GroupCoefs(g, scores);
      sgd.BeginStep();
      for (size_t i = 0; i < g.members.size(); ++i) {
        sgd.Update(ts.instances[g.members[i]].features, coefs[i]);
      }
      sgd.EndStep();
    }
    std::vector<double> avg = sgd.Average();
    double obj = RankObjective(ts, groups, avg, lambda);
    if (obj <= best_obj) {
      best_obj = obj;
      best = std::move(avg);
    }
    trace.push_back(best_obj);
  }
  LinearModel m = MakeModel(ts, best, false, TaskKind::kRank, Loss::kLog, cfg);
  m.objective_trace = std::move(trace);
  return m;
}

LinearModel Train(const TrainSet &ts, Loss loss, const TrainerConfig &cfg) {
  if (ts.kind == TaskKind::kClassify) {
    return loss == Loss::kHinge ? TrainHingeClassifier(ts, cfg)
                                : TrainLogClassifier(ts, cfg);
  }
  return loss == Loss::kHinge ? TrainHingeRanker(ts, cfg)
                              : TrainLogRanker(ts, cfg);
}

double Score(const LinearModel &model, const SparseVector &v) {
  double s = 0.0;
  for (const auto &[name, value] : v) {
    auto it = model.weights.find(name);
    if (it != model.weights.end()) s += it->second * value;
  }
  return s - model.bias;
}

double PredictProb(const LinearModel &model, const SparseVector &v) {
  if (model.loss != Loss::kLog) {
    throw LearnError("probabilities need a log-loss model");
  }
  return Logistic(Score(model, v));
}

bool Positive(const LinearModel &model, const SparseVector &v) {
  if (model.loss == Loss::kLog) return PredictProb(model, v) > 0.5;
  return Score(model, v) > 0.0;
}

namespace {

std::vector<double> WithBias(const std::vector<double> &w, double bias) {
  std::vector<double> out = w;
  out.push_back(bias);
  return out;
}

}  // namespace

double HingeObjective(const TrainSet &ts, const std::vector<double> &w,
                      double bias, double lambda) {
  ClassProblem p = MakeClassProblem(ts, true);
  return ClassObjective(p, WithBias(w, bias), lambda, Loss::kHinge);
}

double LogClassifierObjective(const TrainSet &ts, const std::vector<double> &w,
                              double bias, double lambda) {
  ClassProblem p = MakeClassProblem(ts, true);
  return ClassObjective(p, WithBias(w, bias), lambda, Loss::kLog);
}

std::vector<double> LogClassifierGradient(const TrainSet &ts,
                                          const std::vector<double> &w,
                                          double bias, double lambda) {
  ClassProblem p = MakeClassProblem(ts, true);
  std::vector<double> full = WithBias(w, bias);
  std::vector<double> grad(full.size());
  for (size_t i = 0; i < full.size(); ++i) grad[i] = lambda * full[i];
  const double inv_n = 1.0 / static_cast<double>(p.x.size());
  for (size_t i = 0; i < p.x.size(); ++i) {
    double margin = p.y[i] * Dot(p.x[i], full);
    double coef = -p.y[i] * Logistic(-margin) * inv_n;
    for (const auto &[id, value] : p.x[i]) grad[id] += coef * value;
  }
  return grad;
}

double LogRankerObjective(const TrainSet &ts, const std::vector<double> &w,
                          double lambda) {
  return RankObjective(ts, MakeGroups(ts), w, lambda);
}

std::vector<double> LogRankerGradient(const TrainSet &ts,
                                      const std::vector<double> &w,
                                      double lambda) {
  std::vector<Group> groups = MakeGroups(ts);
  std::vector<double> grad(w.size());
  for (size_t i = 0; i < w.size(); ++i) grad[i] = lambda * w[i];
  const double inv_n = 1.0 / static_cast<double>(groups.size());
  for (const Group &g : groups) {
    std::vector<double> coefs = GroupCoefs(g, GroupProbs(ts, g, w));
    for (size_t i = 0; i < g.members.size(); ++i) {
      for (const auto &[id, value] : ts.instances[g.members[i]].features) {
        grad[id] -= coefs[i] * value * inv_n;
      }
    }
  }
  return grad;
}

std::vector<double> DenseWeights(const LinearModel &model, const TrainSet &ts) {
  std::vector<double> w(ts.vocab.size());
  for (int i = 0; i < ts.vocab.size(); ++i) w[i] = model.Weight(ts.vocab.name(i));
  return w;
}

nlohmann::ordered_json ModelToJson(const LinearModel &model) {
  nlohmann::ordered_json j;
  j["format"] = "coref-linear-model";
  j["version"] = 1;
  j["kind"] = ToString(model.kind);
  j["loss"] = ToString(model.loss);
  nlohmann::ordered_json meta;
  meta["family"] = model.meta.family;
  meta["feature_set"] = model.meta.feature_set;
  meta["seed"] = model.meta.seed;
  meta["c"] = model.meta.c;
  meta["epochs"] = model.meta.epochs;
  meta["num_instances"] = model.meta.num_instances;
  meta["unseen_vocab"] = model.meta.unseen_vocab;
  j["meta"] = std::move(meta);
  j["feature_vocab"] = model.feature_vocab;
  std::vector<std::pair<std::string, double>> weights(model.weights.begin(),
                                                      model.weights.end());
  std::sort(weights.begin(), weights.end());
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (const auto &[name, value] : weights) w.push_back({name, value});
  j["weights"] = std::move(w);
  j["bias"] = model.bias;
  j["objective_trace"] = model.objective_trace;
  return j;
}

LinearModel ModelFromJson(const nlohmann::json &j) {
  try {
    if (j.at("format").get<std::string>() != "coref-linear-model") {
      throw LearnError("not a linear model record");
    }
    if (j.at("version").get<int>() != 1) {
      throw LearnError("unsupported model version");
    }
    LinearModel m;
    if (!FromString(j.at("kind").get<std::string>(), &m.kind) ||
        !FromString(j.at("loss").get<std::string>(), &m.loss)) {
      throw LearnError("bad model kind or loss");
    }
    const auto &meta = j.at("meta");
    m.meta.family = meta.at("family").get<std::string>();
    m.meta.feature_set = meta.at("feature_set").get<std::string>();
    m.meta.seed = meta.at("seed").get<uint64_t>();
    m.meta.c = meta.at("c").get<double>();
    m.meta.epochs = meta.at("epochs").get<int>();
    m.meta.num_instances = meta.at("num_instances").get<int>();
    m.meta.unseen_vocab =
        meta.at("unseen_vocab").get<std::vector<std::string>>();
    m.feature_vocab = j.at("feature_vocab").get<std::vector<std::string>>();
    for (const auto &entry : j.at("weights")) {
      double value = entry.at(1).get<double>();
      if (!std::isfinite(value)) throw LearnError("non-finite weight");
      m.weights[entry.at(0).get<std::string>()] = value;
    }
    m.bias = j.at("bias").get<double>();
    m.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw LearnError(std::string("malformed model: ") + e.what());
  }
}

void SaveModel(const LinearModel &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw LearnError("cannot write " + path);
  out << ModelToJson(model).dump(1) << "\n";
}

LinearModel LoadModel(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LearnError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw LearnError("malformed model file " + path + ": " + e.what());
  }
  return ModelFromJson(j);
}

}  // namespace coref
