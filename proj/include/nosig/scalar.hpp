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

// Arithmetic backends. Every algorithm in the library is a template over a
// scalar type that is either `double` (floating mode) or `Rational`
// (exact mode, GMP rationals).

#ifndef NOSIG_SCALAR_HPP_
#define NOSIG_SCALAR_HPP_

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "nosig/errors.hpp"

namespace nosig {

using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool kIsExact = std::is_same_v<T, Rational>;

// Column sums of floating strategies may drift by this much.
inline constexpr double kStochasticTolerance = 1e-9;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

template <Scalar T>
T from_double(double x) {
  if constexpr (kIsExact<T>) {
    // Exact: every finite double is a dyadic rational.
    return Rational(x);
  } else {
    return x;
  }
}

inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return abs(x); }

// Entry tolerance for comparisons: zero in exact mode.
template <Scalar T>
T comparison_slack(double floating_slack) {
  if constexpr (kIsExact<T>) {
    return T(0);
  } else {
    return floating_slack;
  }
}

// Parses "num/den" or "num". Throws ParseError.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  for (char ch : s) {
    if (!(ch == '-' || ch == '+' || ch == '/' || (ch >= '0' && ch <= '9'))) {
      throw ParseError("malformed rational '" + s + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw ParseError("malformed rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

// num/den in lowest terms. The two-argument mpq_class constructor does not
// reduce, and GMP arithmetic assumes reduced operands.
inline Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Canonical "num/den" form; integers are written with denominator 1.
inline std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Nearest multiple of 2^-bits. Used to move floating averages into exact
// arithmetic with bounded denominators.
inline Rational rationalize(double x, int bits = 40) {
  if (!std::isfinite(x)) throw DomainError("cannot rationalize a non-finite value");
  const double scaled = std::nearbyint(std::ldexp(x, bits));
  mpz_class num(0);
  mpz_set_d(num.get_mpz_t(), scaled);
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace nosig

#endif  // NOSIG_SCALAR_HPP_
