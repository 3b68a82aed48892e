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

#include <array>
#include <random>
#include <vector>

#include "nosig/tensor.hpp"
#include "test_support.hpp"

namespace nosig {
namespace {

using testing::random_matrix;
using testing::random_stochastic;

const Space kA0{{Factor::A0, 2}};
const Space kA1{{Factor::A1, 2}};
const Space kA01{{Factor::A0, 2}, {Factor::A1, 2}};

TEST(SpaceDims, CompositeDimensionsAreProducts) {
  const SpaceDims d{2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_EQ(d.s01(), 6u);
  EXPECT_EQ(d.t01(), 20u);
  EXPECT_EQ(d.a01(), 42u);
  EXPECT_EQ(d.b01(), 72u);
  EXPECT_EQ(SpaceDims::from_array(d.as_array()), d);
}

TEST(SpaceDims, RejectsZeroDimension) {
  EXPECT_THROW(SpaceDims::from_array({1, 1, 1, 0, 1, 1, 1, 1}), StructuralError);
}

TEST(Space, EncodeDecodeIsABijection) {
  for (std::size_t n0 = 1; n0 <= 5; ++n0) {
    for (std::size_t n1 = 1; n1 <= 5; ++n1) {
      const Space s{{Factor::S0, n0}, {Factor::S1, n1}};
      ASSERT_EQ(s.dim(), n0 * n1);
      for (std::size_t x0 = 0; x0 < n0; ++x0) {
        for (std::size_t x1 = 0; x1 < n1; ++x1) {
          const std::array<std::size_t, 2> digits{x0, x1};
          const std::size_t idx = s.encode(digits);
          EXPECT_EQ(idx, x0 * n1 + x1);
          std::array<std::size_t, 2> back{};
          s.decode(idx, back);
          EXPECT_EQ(back, digits);
        }
      }
    }
  }
}

TEST(Space, DuplicateAndMissingTagsThrow) {
  EXPECT_THROW((Space{{Factor::A0, 2}, {Factor::A0, 2}}), StructuralError);
  EXPECT_THROW(kA01.position(Factor::B0), StructuralError);
}

TEST(Kron, BlockStructureMatchesLeftMajorConvention) {
  Matrix<Rational> a(kA0, Space{{Factor::S0, 2}}, {1, 2, 3, 4});
  Matrix<Rational> b(kA1, Space{{Factor::S1, 2}}, {5, 6, 7, 8});
  const Matrix<Rational> k = kron(a, b);
  ASSERT_EQ(k.num_rows(), 4u);
  ASSERT_EQ(k.num_cols(), 4u);
  for (std::size_t r0 = 0; r0 < 2; ++r0)
    for (std::size_t r1 = 0; r1 < 2; ++r1)
      for (std::size_t c0 = 0; c0 < 2; ++c0)
        for (std::size_t c1 = 0; c1 < 2; ++c1)
          EXPECT_EQ(k(r0 * 2 + r1, c0 * 2 + c1), a(r0, c0) * b(r1, c1));
  // Upper-left block is a(0,0) * B.
  EXPECT_EQ(k(0, 0), 5);
  EXPECT_EQ(k(0, 1), 6);
  EXPECT_EQ(k(1, 0), 7);
  EXPECT_EQ(k(0, 2), 10);
  EXPECT_EQ(k(3, 3), 32);
}

TEST(Kron, IdentityTimesIdentityIsIdentity) {
  const Matrix<double> i2a = Matrix<double>::identity(kA0);
  const Matrix<double> i2b = Matrix<double>::identity(kA1);
  EXPECT_EQ(kron(i2a, i2b), Matrix<double>::identity(kA01));
}

TEST(Kron, OnesVectorsGiveOnes) {
  const Matrix<Rational> e2 = Matrix<Rational>::filled(Space{{Factor::B0, 2}}, Space{}, 1);
  const Matrix<Rational> e3 = Matrix<Rational>::filled(Space{{Factor::B1, 3}}, Space{}, 1);
  const Matrix<Rational> e6 = kron(e2, e3);
  ASSERT_EQ(e6.num_rows(), 6u);
  for (const Rational& x : e6.entries()) EXPECT_EQ(x, 1);
}

TEST(Marginal, SumsOverTheNamedFactor) {
  const Matrix<Rational> a(kA01, Space{}, {Rational(1, 2), Rational(1, 2), 0, 0});
  const Matrix<Rational> m = marginal(Factor::A1, a);
  EXPECT_EQ(m.rows(), kA0);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(1, 0), 0);
  const Matrix<Rational> m0 = marginal(Factor::A0, a);
  EXPECT_EQ(m0(0, 0), Rational(1, 2));
  EXPECT_EQ(m0(1, 0), Rational(1, 2));
}

TEST(Marginal, OfNormalizedProductRecoversFactor) {
  std::mt19937_64 rng(11);
  const Matrix<Rational> x = random_matrix<Rational>(Space{{Factor::A0, 3}}, Space{}, rng);
  const Matrix<Rational> u = Matrix<Rational>::filled(Space{{Factor::A1, 4}}, Space{}, Rational(1, 4));
  EXPECT_EQ(marginal(Factor::A1, kron(x, u)), x);
}

TEST(Marginal, OfZeroIsZero) {
  const Matrix<double> z(kA01, Space{{Factor::S0, 3}});
  const Matrix<double> m = marginal(Factor::A1, z);
  for (double x : m.entries()) EXPECT_EQ(x, 0.0);
}

TEST(Marginal, UnknownFactorThrows) {
  const Matrix<double> z(kA01, Space{});
  EXPECT_THROW(marginal(Factor::B1, z), StructuralError);
}

TEST(Marginal, OfProductScalesByColumnSums) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix<Rational> m = random_matrix<Rational>(Space{{Factor::A0, 3}}, Space{{Factor::S0, 2}}, rng, 0, 1);
    const Matrix<Rational> n = random_stochastic<Rational>(Space{{Factor::A1, 2}}, Space{{Factor::S1, 3}}, rng);
    const Matrix<Rational> k = kron(m, n);
    const Matrix<Rational> got = marginal(Factor::A1, k);
    // Brute force: sum rows (x, y) over y.
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t c = 0; c < k.num_cols(); ++c) {
        Rational s(0);
        for (std::size_t y = 0; y < 2; ++y) s += k(x * 2 + y, c);
        EXPECT_EQ(got(x, c), s);
        EXPECT_EQ(got(x, c), m(x, c / 3));
      }
  }
}

TEST(MarginalAdjoint, ReplicatesAcrossTheFactor) {
  const Matrix<Rational> p(kA0, Space{}, {1, 0});
  const Matrix<Rational> out = marginal_adjoint(Factor::A1, 2, p);
  EXPECT_EQ(out.rows(), kA01);
  EXPECT_EQ(out, Matrix<Rational>(kA01, Space{}, {1, 1, 0, 0}));
  const Matrix<Rational> z = marginal_adjoint(Factor::A1, 2, Matrix<Rational>(kA0, Space{}));
  for (const Rational& x : z.entries()) EXPECT_EQ(x, 0);
}

TEST(MarginalAdjoint, AdjointIdentityExactAndFloating) {
  std::mt19937_64 rng(3);
  for (Factor over : {Factor::A0, Factor::A1}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Space rows{{Factor::A0, 1 + testing::below(rng, 4)}, {Factor::A1, 1 + testing::below(rng, 4)}};
      const Space cols{{Factor::S0, 1 + testing::below(rng, 3)}};
      const Matrix<Rational> xq = random_matrix<Rational>(rows, cols, rng);
      const Matrix<Rational> pq = random_matrix<Rational>(rows.without(over), cols, rng);
      EXPECT_EQ(inner(marginal(over, xq), pq),
                inner(xq, marginal_adjoint(over, rows.factor_dim(rows.position(over)), pq)));
      const Matrix<double> xd = random_matrix<double>(rows, cols, rng);
      const Matrix<double> pd = random_matrix<double>(rows.without(over), cols, rng);
      const double lhs = inner(marginal(over, xd), pd);
      const double rhs = inner(xd, marginal_adjoint(over, rows.factor_dim(rows.position(over)), pd));
      EXPECT_LE(testing::relative_error(lhs, rhs), 1e-12);
    }
  }
}

TEST(PositivePart, ClampsNegativesOnly) {
  const Matrix<Rational> m(kA0, Space{{Factor::S0, 2}}, {1, -2, 0, 3});
  EXPECT_EQ(positive_part(m), Matrix<Rational>(kA0, Space{{Factor::S0, 2}}, {1, 0, 0, 3}));
  std::mt19937_64 rng(9);
  const Matrix<Rational> nonneg = random_matrix<Rational>(kA01, kA0, rng, 0, 1);
  EXPECT_EQ(positive_part(nonneg), nonneg);
  const Matrix<Rational> cleared = positive_part(-nonneg);
  for (const Rational& x : cleared.entries()) EXPECT_EQ(x, 0);
  const Matrix<double> any = random_matrix<double>(kA01, kA0, rng);
  const Matrix<double> pp = positive_part(any);
  for (std::size_t k = 0; k < pp.entries().size(); ++k) {
    EXPECT_GE(pp.entries()[k], 0.0);
    EXPECT_GE(pp.entries()[k], any.entries()[k]);
  }
}

TEST(Inner, BasicCases) {
  EXPECT_EQ(inner(Matrix<Rational>::identity(kA0), Matrix<Rational>::identity(kA0)), 2);
  std::mt19937_64 rng(2);
  const Matrix<Rational> m = random_matrix<Rational>(kA01, kA0, rng);
  Rational sum(0);
  for (const Rational& x : m.entries()) sum += x;
  EXPECT_EQ(inner(Matrix<Rational>::filled(kA01, kA0, 1), m), sum);
  EXPECT_THROW(inner(m, Matrix<Rational>(kA0, kA0)), StructuralError);
}

TEST(Inner, IsMultiplicativeOverKron) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Space s0{{Factor::S0, 2}};
    const Space s1{{Factor::S1, 2}};
    const auto a = random_matrix<double>(kA0, s0, rng);
    const auto b = random_matrix<double>(kA1, s1, rng);
    const auto c = random_matrix<double>(kA0, s0, rng);
    const auto d = random_matrix<double>(kA1, s1, rng);
    EXPECT_LE(testing::relative_error(inner(kron(a, b), kron(c, d)), inner(a, c) * inner(b, d)),
              1e-12);
  }
}

TEST(NormalizeColumns, Cases) {
  const Space cols{{Factor::S0, 3}};
  const Matrix<Rational> ones = Matrix<Rational>::filled(kA01, cols, 1);
  const Matrix<Rational> uniform = normalize_columns(ones);
  for (const Rational& x : uniform.entries()) EXPECT_EQ(x, Rational(1, 4));

  std::mt19937_64 rng(8);
  const Matrix<Rational> stoch = random_stochastic<Rational>(kA01, cols, rng);
  EXPECT_EQ(normalize_columns(stoch), stoch);

  const Matrix<Rational> zero(kA0, Space{});
  EXPECT_EQ(normalize_columns(zero), Matrix<Rational>(kA0, Space{}, {Rational(1, 2), Rational(1, 2)}));

  Matrix<double> bad(kA0, Space{}, {0.5, -0.1});
  EXPECT_THROW(normalize_columns(bad), DomainError);
}

TEST(Stochastic, ToleranceInFloatingModeAndExactInRational) {
  Matrix<double> near(kA0, Space{}, {0.5, 0.5 + 1e-12});
  EXPECT_TRUE(is_stochastic(near));
  Matrix<double> far(kA0, Space{}, {0.5, 0.5 + 1e-6});
  EXPECT_FALSE(is_stochastic(far));
  Matrix<Rational> off(kA0, Space{}, {Rational(1, 2), Rational(1, 2) + parse_rational("1/1000000000000")});
  EXPECT_FALSE(is_stochastic(off));
}

TEST(Scalar, RationalTextRoundTrip) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(format_rational(Rational(1, 2)), "1/2");
  EXPECT_EQ(format_rational(Rational(0)), "0/1");
  EXPECT_EQ(format_rational(parse_rational("7")), "7/1");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("0.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(rationalize(0.25), Rational(1, 4));
  EXPECT_EQ(rationalize(1.0 / 3.0) * parse_rational("1099511627776"), parse_rational("366503875925"));
}

}  // namespace
}  // namespace nosig
