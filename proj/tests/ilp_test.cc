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


#include <cmath>
#include <sstream>

#include "coref/ilp.h"
#include "doctest.h"
#include "test_util.h"

namespace coref {
namespace {

using testing::BruteIlp;
using testing::RandomProgram;

TEST_CASE("costs are clamped negative logs") {
  CHECK(CostOf(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(CostOf(1.0) == doctest::Approx(-std::log(1 - 1e-6)));
  CHECK(CostOf(0.0) == doctest::Approx(-std::log(1e-6)));
  CHECK(std::isfinite(CostOf(0.0)));
}

TEST_CASE("two-mention program") {
  IlpProgram p = BuildProgram("two", 2, {0.9}, {0.1, 0.8});
  CHECK(p.coref_cost[0] == doctest::Approx(-std::log(0.9)));
  CHECK(p.coref_cost_bar[0] == doctest::Approx(-std::log(0.1)));
  CHECK(p.anaph_cost[1] == doctest::Approx(-std::log(0.8)));
  CHECK(p.anaph_cost_bar[1] == doctest::Approx(-std::log(0.2)));
  CHECK(p.anaph_cost[0] == doctest::Approx(-std::log(0.1)));
  CHECK(p.anaph_cost_bar[0] == doctest::Approx(-std::log(0.9)));

  IlpSolution s = SolveExact(p);
  CHECK(s.x[0] == 1);
  CHECK(s.y[1] == 1);
  CHECK(s.y[0] == 0);
  double want = -std::log(0.9) - std::log(0.8) - std::log(0.9);
  CHECK(s.objective == doctest::Approx(want));
  CHECK(BruteIlp(p) == doctest::Approx(want));

  IlpProgram weak = BuildProgram("weak", 2, {0.9}, {0.1, 0.01});
  IlpSolution w = SolveExact(weak);
  CHECK(w.objective == doctest::Approx(BruteIlp(weak)));
  CHECK(w.x[0] == 0);
}

TEST_CASE("symmetric costs") {
  const int n = 4;
  IlpProgram p = BuildProgram("flat", n, std::vector<double>(6, 0.5),
                              std::vector<double>(n, 0.5));
  IlpSolution s = SolveExact(p);
  CHECK(s.objective == doctest::Approx((6 + n) * std::log(2.0)));
}

TEST_CASE("exact solver matches enumeration on random programs") {
  Random rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng.Below(5));
    IlpProgram p = RandomProgram(rng, n);
    IlpSolution s = SolveExact(p);
    CHECK(Feasible(p, s));
    CHECK(s.y[0] == 0);
    CHECK(Objective(p, s) == doctest::Approx(s.objective).epsilon(1e-12));
    CHECK(s.objective == doctest::Approx(BruteIlp(p)).epsilon(1e-12));
  }
}

TEST_CASE("feasibility") {
  IlpProgram p = BuildProgram("f", 3, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5});
  IlpSolution s;
  s.x = {0, 0, 0};
  s.y = {0, 0, 0};
  CHECK(Feasible(p, s));
  s.y[2] = 1;  // anaphoric without a link
  CHECK(!Feasible(p, s));
  s.y[2] = 0;
  s.x[PairIndex(1, 2)] = 1;  // link without anaphoricity
  CHECK(!Feasible(p, s));
  s.y[2] = 1;
  CHECK(Feasible(p, s));
}

TEST_CASE("decoding takes the transitive closure") {
  IlpSolution s;
  s.x.assign(6, 0);
  s.y.assign(4, 0);
  CHECK(DecodePartition(s, 4).clusters.size() == 4);
  s.x[PairIndex(0, 1)] = s.x[PairIndex(1, 2)] = 1;
  CHECK(DecodePartition(s, 4).clusters ==
        std::vector<std::vector<int>>{{0, 1, 2}, {3}});
  s.x.assign(6, 0);
  s.x[PairIndex(0, 1)] = s.x[PairIndex(2, 3)] = 1;
  CHECK(DecodePartition(s, 4).clusters ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("size limit and model checks") {
  Random rng(2);
  IlpProgram big = RandomProgram(rng, 10);  // 55 variables
  CHECK_THROWS_AS(SolveExact(big), IlpError);
  CHECK_NOTHROW(SolveExact(big, 100));

  LinearModel hinge, log;
  log.loss = Loss::kLog;
  CHECK_THROWS_AS(BuildProgram(testing::NominationExample(), hinge, log,
                               FeatureSetId::kConventional),
                  IlpError);
  IlpProgram flat = BuildProgram(testing::NominationExample(), log, log,
                                 FeatureSetId::kConventional);
  CHECK(flat.n == 6);
  for (double c : flat.coref_cost) CHECK(c == doctest::Approx(std::log(2.0)));
  for (double c : flat.anaph_cost_bar) {
    CHECK(c == doctest::Approx(std::log(2.0)));
  }
}

TEST_CASE("LP text lists every variable") {
  IlpProgram p = BuildProgram("lp", 3, {0.9, 0.2, 0.6}, {0.1, 0.7, 0.4});
  std::ostringstream out;
  WriteLp(p, out);
  std::string lp = out.str();
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Binar") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
  for (const char *v : {"y_0", "y_1", "y_2", "x_0_1", "x_0_2", "x_1_2"}) {
    CHECK(lp.find(v) != std::string::npos);
  }
}

}  // namespace
}  // namespace coref
