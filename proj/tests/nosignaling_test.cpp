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

#include "nosig/generators.hpp"
#include "nosig/nosignaling.hpp"
#include "test_support.hpp"

namespace nosig {
namespace {

using testing::all_two;
using testing::random_alice_triple;
using testing::random_stochastic;

const SpaceDims kDims = all_two();

Space a0_space() { return Space::of(kDims, {Factor::A0}); }
Space a1_space() { return Space::of(kDims, {Factor::A1}); }

TEST(CheckNoSignaling, ConstantColumnsAreNoSignaling) {
  const Matrix<Rational> a(alice_answers(kDims), Space{}, {Rational(1, 8), Rational(3, 8), Rational(1, 4), Rational(1, 4)});
  const Matrix<Rational> ones = Matrix<Rational>::filled(Space{}, alice_questions(kDims), 1);
  const SignalingCheck<Rational> c = check_no_signaling(kron(a, ones), Rational(0));
  EXPECT_EQ(c.violation, 0);
  ASSERT_TRUE(c.witnesses.has_value());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(c.witnesses->first(0, i), Rational(1, 2));
    EXPECT_EQ(c.witnesses->second(0, i), Rational(3, 8));
    EXPECT_EQ(c.witnesses->second(1, i), Rational(5, 8));
  }
}

TEST(CheckNoSignaling, PrBoxHasZeroViolation) {
  const auto pr = testing::pr_box<Rational>(alice_answers(kDims), alice_questions(kDims));
  const SignalingCheck<Rational> c = check_no_signaling(pr, Rational(0));
  EXPECT_EQ(c.violation, 0);
  ASSERT_TRUE(c.witnesses.has_value());
  for (const Rational& x : c.witnesses->first.entries()) EXPECT_EQ(x, Rational(1, 2));
}

TEST(CheckNoSignaling, EchoStrategyViolatesByOne) {
  const auto echo = testing::echo_signaling<Rational>(alice_answers(kDims), alice_questions(kDims));
  const SignalingCheck<Rational> c = check_no_signaling(echo, Rational(0));
  EXPECT_EQ(c.violation, 1);
  EXPECT_FALSE(c.witnesses.has_value());
}

TEST(CheckNoSignaling, RejectsNonStochasticInput) {
  Matrix<Rational> m(alice_answers(kDims), alice_questions(kDims));
  EXPECT_THROW(check_no_signaling(m, Rational(0)), DomainError);
}

TEST(CheckNoSignaling, VerticesAndMixturesPass) {
  std::mt19937_64 rng(5);
  for (const auto& v : testing::binary_no_signaling_vertices(alice_answers(kDims), alice_questions(kDims))) {
    EXPECT_EQ(check_no_signaling(v, Rational(0)).violation, 0);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_binary_no_signaling(alice_answers(kDims), alice_questions(kDims), rng);
    const auto c = check_no_signaling(m, Rational(0));
    EXPECT_EQ(c.violation, 0);
    ASSERT_TRUE(c.witnesses);
    EXPECT_EQ(marginal(Factor::A1, m), replicate_columns(Factor::S1, 2, c.witnesses->first));
    EXPECT_EQ(marginal(Factor::A0, m), replicate_columns(Factor::S0, 2, c.witnesses->second));
  }
}

TEST(OptimalPenalties, ExactWitnessesGiveZero) {
  const auto v = build_verifier<Rational>(random_game(kDims, 1));
  const auto pr = testing::pr_box<Rational>(alice_answers(kDims), alice_questions(kDims));
  const WitnessTriple<Rational> x{pr, Matrix<Rational>::filled(a0_space(), Space::of(kDims, {Factor::S0}), Rational(1, 2)),
                                  Matrix<Rational>::filled(a1_space(), Space::of(kDims, {Factor::S1}), Rational(1, 2))};
  const PenaltyPair<Rational> p = optimal_penalties(x, v.p_alice());
  for (const Rational& e : p.pi0.entries()) EXPECT_EQ(e, 0);
  for (const Rational& e : p.pi1.entries()) EXPECT_EQ(e, 0);
}

TEST(OptimalPenalties, AllPositiveDefectsGiveTheUpperBound) {
  // Zero witnesses against A = [1] make every defect entry positive.
  const SpaceDims d{1, 1, 1, 1, 1, 1, 1, 1};
  const auto v = build_verifier<Rational>(always_reject_game(d));
  const Matrix<Rational> a(alice_answers(d), alice_questions(d), {1});
  const WitnessTriple<Rational> x{a, Matrix<Rational>(Space::of(d, {Factor::A0}), Space::of(d, {Factor::S0}), {0}),
                                  Matrix<Rational>(Space::of(d, {Factor::A1}), Space::of(d, {Factor::S1}), {0})};
  const PenaltyPair<Rational> p = optimal_penalties(x, v.p_alice());
  EXPECT_EQ(p.pi0, penalty_bound(v, Factor::A0));
  EXPECT_EQ(p.pi1, penalty_bound(v, Factor::A1));
}

TEST(OptimalPenalties, AchieveThePositivePartIdentity) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto v = build_verifier<double>(random_game(kDims, seed));
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_alice_triple<double>(kDims, rng);
      const PenaltyPair<double> p = optimal_penalties(x, v.p_alice());
      const auto [delta0, delta1] = signaling_defects(x);
      EXPECT_NEAR(inner(delta0, p.pi0), inner(positive_part(delta0), penalty_bound(v, Factor::A0)), 1e-12);
      EXPECT_NEAR(inner(delta1, p.pi1), inner(positive_part(delta1), penalty_bound(v, Factor::A1)), 1e-12);
      for (std::size_t k = 0; k < p.pi0.num_rows(); ++k)
        for (std::size_t i = 0; i < p.pi0.num_cols(); ++i) {
          EXPECT_GE(p.pi0(k, i), 0.0);
          EXPECT_LE(p.pi0(k, i), v.p_alice()[i]);
        }
    }
  }
}

TEST(PreimageOfMarginal, HandExample) {
  const std::vector<Rational> a{Rational(1, 2), Rational(1, 2), 0, 0};
  const std::vector<Rational> dvec{Rational(1, 2), 0};
  const std::vector<Rational> d = preimage_of_marginal<Rational>(a, 2, 2, dvec);
  EXPECT_EQ(d, (std::vector<Rational>{Rational(1, 4), Rational(1, 4), 0, 0}));
}

TEST(PreimageOfMarginal, FullAndEmptyTargets) {
  const std::vector<Rational> a{Rational(1, 3), Rational(1, 6), Rational(1, 5), 0, Rational(3, 10), 0};
  EXPECT_EQ(preimage_of_marginal<Rational>(a, 2, 3, std::vector<Rational>{Rational(1, 2) + Rational(1, 5), Rational(3, 10)}), a);
  const std::vector<Rational> zero = preimage_of_marginal<Rational>(a, 2, 3, std::vector<Rational>{0, 0});
  for (const Rational& x : zero) EXPECT_EQ(x, 0);
}

TEST(PreimageOfMarginal, RejectsOversizedTarget) {
  const std::vector<Rational> a{Rational(1, 2), Rational(1, 2), 0, 0};
  EXPECT_THROW(preimage_of_marginal<Rational>(a, 2, 2, std::vector<Rational>{0, Rational(1, 10)}), DomainError);
}

TEST(PreimageOfMarginal, RandomInputsSatisfyPostconditions) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n0 = 1 + testing::below(rng, 4), n1 = 1 + testing::below(rng, 4);
    std::vector<Rational> a(n0 * n1), dvec(n0);
    for (auto& x : a) x = testing::below(rng, 3) == 0 ? Rational(0) : ratio(static_cast<long>(testing::below(rng, 20)), 7);
    for (std::size_t k0 = 0; k0 < n0; ++k0) {
      Rational s(0);
      for (std::size_t k1 = 0; k1 < n1; ++k1) s += a[k0 * n1 + k1];
      dvec[k0] = s * ratio(static_cast<long>(testing::below(rng, 6)), 5);
    }
    const auto d = preimage_of_marginal<Rational>(a, n0, n1, dvec);
    for (std::size_t k0 = 0; k0 < n0; ++k0) {
      Rational s(0);
      for (std::size_t k1 = 0; k1 < n1; ++k1) {
        EXPECT_GE(d[k0 * n1 + k1], 0);
        EXPECT_LE(d[k0 * n1 + k1], a[k0 * n1 + k1]);
        s += d[k0 * n1 + k1];
      }
      EXPECT_EQ(s, dvec[k0]);
    }
  }
}

TEST(ConsistentJoin, FormulaExample) {
  const auto t = consistent_join<Rational>(std::vector<Rational>{1, 1}, std::vector<Rational>{2, 0});
  EXPECT_EQ(t, (std::vector<Rational>{1, 0, 1, 0}));
}

TEST(ConsistentJoin, ZeroInputsGiveZero) {
  const auto t = consistent_join<Rational>(std::vector<Rational>{0, 0}, std::vector<Rational>{0, 0, 0});
  EXPECT_EQ(t.size(), 6u);
  for (const Rational& x : t) EXPECT_EQ(x, 0);
}

TEST(ConsistentJoin, SingletonFactorCopiesTheOther) {
  const std::vector<Rational> t1{Rational(1, 3), 0, Rational(2, 3)};
  EXPECT_EQ(consistent_join<Rational>(std::vector<Rational>{1}, t1), t1);
}

TEST(ConsistentJoin, RejectsMismatchedSums) {
  EXPECT_THROW(consistent_join<Rational>(std::vector<Rational>{1, 1}, std::vector<Rational>{1, 0}), DomainError);
  EXPECT_THROW(consistent_join<double>(std::vector<double>{1, 1}, std::vector<double>{1, 0.99}), DomainError);
}

TEST(RoundToNoSignaling, IdentityOnWitnessedInput) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_binary_no_signaling(alice_answers(kDims), alice_questions(kDims), rng);
    const auto c = check_no_signaling(m, Rational(0));
    ASSERT_TRUE(c.witnesses);
    const WitnessTriple<Rational> x{m, c.witnesses->first, c.witnesses->second};
    EXPECT_EQ(round_to_no_signaling(x).strategy, m);
  }
}

TEST(RoundToNoSignaling, RepairsTheEchoStrategy) {
  const auto echo = testing::echo_signaling<Rational>(alice_answers(kDims), alice_questions(kDims));
  const WitnessTriple<Rational> x{echo, Matrix<Rational>::filled(a0_space(), Space::of(kDims, {Factor::S0}), Rational(1, 2)),
                                  Matrix<Rational>::filled(a1_space(), Space::of(kDims, {Factor::S1}), Rational(1, 2))};
  const Matrix<Rational> a_ns = round_to_no_signaling(x).strategy;
  EXPECT_TRUE(is_stochastic(a_ns));
  EXPECT_EQ(check_no_signaling(a_ns, Rational(0)).violation, 0);
  EXPECT_EQ(marginal(Factor::A1, a_ns), replicate_columns(Factor::S1, 2, x.part0));
  EXPECT_EQ(marginal(Factor::A0, a_ns), replicate_columns(Factor::S0, 2, x.part1));
}

TEST(RoundToNoSignaling, PenalizedObjectiveBoundsTheRoundedPayoff) {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const GameSpec g = random_game(kDims, seed);
    const auto v = build_verifier<Rational>(g);
    for (int trial = 0; trial < 25; ++trial) {
      const auto x = random_alice_triple<Rational>(kDims, rng, trial % 2 == 0);
      const Matrix<Rational> a_ns = round_to_no_signaling(x).strategy;
      EXPECT_TRUE(is_stochastic(a_ns));
      EXPECT_EQ(marginal(Factor::A1, a_ns), replicate_columns(Factor::S1, 2, x.part0));
      EXPECT_EQ(marginal(Factor::A0, a_ns), replicate_columns(Factor::S0, 2, x.part1));
      const auto b = testing::random_binary_no_signaling(bob_answers(kDims), bob_questions(kDims), rng);
      const PenaltyPair<Rational> pi = optimal_penalties(x, v.p_alice());
      const Rational lhs = payoff(v, a_ns, b);
      const Rational rhs = inner(f(v, x), BobTriple<Rational>{b, pi.pi0, pi.pi1});
      EXPECT_LE(lhs, rhs);
    }
  }
}

TEST(RoundToNoSignaling, FloatingModeClampsAndNormalizes) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const SpaceDims d{3, 2, 1, 1, 2, 3, 1, 1};
    const auto x = random_alice_triple<double>(d, rng);
    const RoundingResult<double> r = round_to_no_signaling(x);
    EXPECT_TRUE(is_stochastic(r.strategy));
    EXPECT_LE(r.clamp_magnitude, kClampTolerance);
    EXPECT_LE(check_no_signaling(r.strategy, 1e-9).violation, 1e-12);
  }
}

TEST(RoundToNoSignaling, WorksForBobSpaces) {
  std::mt19937_64 rng(6);
  const SpaceDims d{1, 1, 3, 2, 1, 1, 2, 2};
  const WitnessTriple<Rational> x{random_stochastic<Rational>(bob_answers(d), bob_questions(d), rng),
                                  random_stochastic<Rational>(Space::of(d, {Factor::B0}), Space::of(d, {Factor::T0}), rng),
                                  random_stochastic<Rational>(Space::of(d, {Factor::B1}), Space::of(d, {Factor::T1}), rng)};
  const Matrix<Rational> b = round_to_no_signaling(x).strategy;
  EXPECT_EQ(check_no_signaling(b, Rational(0)).violation, 0);
}

TEST(RoundToNoSignaling, RejectsMalformedWitnessShape) {
  const WitnessTriple<Rational> x{testing::pr_box<Rational>(alice_answers(kDims), alice_questions(kDims)),
                                  Matrix<Rational>::filled(Space{{Factor::A0, 3}}, Space::of(kDims, {Factor::S0}), Rational(1, 3)),
                                  Matrix<Rational>::filled(a1_space(), Space::of(kDims, {Factor::S1}), Rational(1, 2))};
  EXPECT_THROW(round_to_no_signaling(x), StructuralError);
}

}  // namespace
}  // namespace nosig
