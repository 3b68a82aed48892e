// Copyright 2026 The nosig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "nosig/simplex.hpp"
#include "test_support.hpp"

namespace nosig {
namespace {

template <Scalar T>
using Terms = std::vector<typename LinearProgram<T>::Term>;

TEST(Simplex, TextbookMaximization) {
  LinearProgram<Rational> lp(Direction::kMaximize);
  const std::size_t x = lp.add_variable(), y = lp.add_variable();
  lp.set_cost(x, 3);
  lp.set_cost(y, 2);
  lp.add_constraint({{x, 1}, {y, 1}}, Sense::kLessEqual, 4);
  lp.add_constraint({{x, 1}, {y, 3}}, Sense::kLessEqual, 6);
  lp.add_constraint({{x, 1}}, Sense::kLessEqual, 3);
  const auto sol = lp.solve();
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, 11);
  EXPECT_EQ(sol.values[x], 3);
  EXPECT_EQ(sol.values[y], 1);
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  LinearProgram<Rational> lp(Direction::kMinimize);
  const std::size_t x4 = lp.add_variables(4);
  const std::size_t x5 = x4 + 1, x6 = x4 + 2, x7 = x4 + 3;
  lp.set_cost(x4, Rational(-3, 4));
  lp.set_cost(x5, 20);
  lp.set_cost(x6, Rational(-1, 2));
  lp.set_cost(x7, 6);
  lp.add_constraint({{x4, Rational(1, 4)}, {x5, -8}, {x6, -1}, {x7, 9}}, Sense::kLessEqual, 0);
  lp.add_constraint({{x4, Rational(1, 2)}, {x5, -12}, {x6, Rational(-1, 2)}, {x7, 3}}, Sense::kLessEqual, 0);
  lp.add_constraint({{x6, 1}}, Sense::kLessEqual, 1);
  const auto sol = lp.solve();
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, Rational(-5, 4));
}

TEST(Simplex, DetectsInfeasibility) {
  LinearProgram<Rational> lp;
  const std::size_t x = lp.add_variable();
  lp.add_constraint({{x, 1}}, Sense::kGreaterEqual, 2);
  lp.add_constraint({{x, 1}}, Sense::kLessEqual, 1);
  EXPECT_EQ(lp.solve().status, LpStatus::kInfeasible);
}

TEST(Simplex, DetectsUnboundedness) {
  LinearProgram<double> lp(Direction::kMaximize);
  const std::size_t x = lp.add_variable(), y = lp.add_variable();
  lp.set_cost(x, 1);
  lp.add_constraint({{x, 1}, {y, -1}}, Sense::kLessEqual, 1);
  EXPECT_EQ(lp.solve().status, LpStatus::kUnbounded);
}

TEST(Simplex, FreeVariablesGoNegative) {
  LinearProgram<Rational> lp(Direction::kMinimize);
  const std::size_t x = lp.add_variable(/*free=*/true);
  lp.set_cost(x, 1);
  lp.add_constraint({{x, 1}}, Sense::kGreaterEqual, -5);
  const auto sol = lp.solve();
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, -5);
  EXPECT_EQ(sol.values[x], -5);
}

TEST(Simplex, RedundantEqualitiesAreHandled) {
  LinearProgram<Rational> lp(Direction::kMaximize);
  const std::size_t x = lp.add_variable(), y = lp.add_variable();
  lp.set_cost(x, 1);
  lp.add_constraint({{x, 1}, {y, 1}}, Sense::kEqual, 1);
  lp.add_constraint({{x, 2}, {y, 2}}, Sense::kEqual, 2);
  lp.add_constraint({{x, -1}, {y, -1}}, Sense::kEqual, -1);
  const auto sol = lp.solve();
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, 1);
}

TEST(Simplex, EmptyProblemIsOptimalAtZero) {
  LinearProgram<Rational> lp;
  lp.add_variable();
  const auto sol = lp.solve();
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.objective, 0);
}

TEST(Simplex, RejectsUnknownVariable) {
  LinearProgram<Rational> lp;
  EXPECT_THROW(lp.add_constraint({{3, 1}}, Sense::kEqual, 0), StructuralError);
}

// Random bounded LPs: the double and rational solvers agree, and the
// rational optimum is feasible and matches a vertex bound from its dual.
TEST(Simplex, FloatingAndExactAgreeOnRandomLps) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + testing::below(rng, 5), m = 1 + testing::below(rng, 5);
    std::vector<std::vector<long>> a(m, std::vector<long>(n));
    std::vector<long> b(m), c(n);
    for (auto& row : a)
      for (long& x : row) x = static_cast<long>(testing::below(rng, 7)) - 2;
    for (long& x : b) x = static_cast<long>(testing::below(rng, 10));
    for (long& x : c) x = static_cast<long>(testing::below(rng, 9)) - 4;
    LinearProgram<Rational> lq(Direction::kMaximize);
    LinearProgram<double> ld(Direction::kMaximize);
    lq.add_variables(n);
    ld.add_variables(n);
    for (std::size_t j = 0; j < n; ++j) {
      lq.set_cost(j, c[j]);
      ld.set_cost(j, static_cast<double>(c[j]));
      // Box keeps every instance bounded.
      lq.add_constraint({{j, 1}}, Sense::kLessEqual, 10);
      ld.add_constraint({{j, 1.0}}, Sense::kLessEqual, 10.0);
    }
    for (std::size_t i = 0; i < m; ++i) {
      Terms<Rational> tq;
      Terms<double> td;
      for (std::size_t j = 0; j < n; ++j) {
        tq.push_back({j, a[i][j]});
        td.push_back({j, static_cast<double>(a[i][j])});
      }
      lq.add_constraint(tq, Sense::kLessEqual, b[i]);
      ld.add_constraint(td, Sense::kLessEqual, static_cast<double>(b[i]));
    }
    const auto sq = lq.solve();
    const auto sd = ld.solve();
    ASSERT_EQ(sq.status, LpStatus::kOptimal);
    ASSERT_EQ(sd.status, LpStatus::kOptimal);
    EXPECT_NEAR(sq.objective.get_d(), sd.objective, 1e-9);
    Rational value(0);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_GE(sq.values[j], 0);
      EXPECT_LE(sq.values[j], 10);
      value += c[j] * sq.values[j];
    }
    EXPECT_EQ(value, sq.objective);
    for (std::size_t i = 0; i < m; ++i) {
      Rational lhs(0);
      for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * sq.values[j];
      EXPECT_LE(lhs, b[i]);
    }
    // Brute force over the integer grid gives a lower bound on the optimum.
    if (n <= 3) {
      long best = std::numeric_limits<long>::min();
      std::vector<long> x(n, 0);
      while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
          long lhs = 0;
          for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * x[j];
          ok = lhs <= b[i];
        }
        if (ok) {
          long v = 0;
          for (std::size_t j = 0; j < n; ++j) v += c[j] * x[j];
          best = std::max(best, v);
        }
        std::size_t k = 0;
        while (k < n && ++x[k] > 10) x[k++] = 0;
        if (k == n) break;
      }
      EXPECT_GE(sq.objective, best);
    }
  }
}

}  // namespace
}  // namespace nosig
