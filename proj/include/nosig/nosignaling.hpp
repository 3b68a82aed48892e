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

// No-signaling strategies for a team of two provers.
//
// A stochastic A: Q0 Q1 -> X0 X1 is no-signaling iff for both c there is a
// stochastic witness A_c: Q_c -> X_c with marginal over the other answer equal
// to A_c (x) e^*. Everything here is team-agnostic: factor tags are read off
// the strategy's row and column spaces.
//
// The rounding construction turns an arbitrary stochastic strategy with
// (possibly false) witnesses into a no-signaling strategy witnessed exactly by
// those witnesses, without increasing the penalized objective.

#ifndef NOSIG_NOSIGNALING_HPP_
#define NOSIG_NOSIGNALING_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/game.hpp"
#include "nosig/scalar.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

// Default floating tolerance for no-signaling checks.
inline constexpr double kNoSignalingTolerance = 1e-9;

// Negative intermediates of the floating rounding pipeline down to this
// magnitude are treated as round-off and clamped.
inline constexpr double kClampTolerance = 1e-12;

namespace detail {

inline void require_two_prover(const Space& rows, const Space& cols, const char* what) {
  if (rows.rank() != 2 || cols.rank() != 2) {
    throw StructuralError(std::string(what) + ": expected a two-prover strategy, got " +
                          rows.to_string() + "<-" + cols.to_string());
  }
}

}  // namespace detail

template <Scalar T>
struct SignalingCheck {
  T violation;
  // Present when violation <= tol: witnesses built by averaging marginal
  // columns over the other prover's question.
  std::optional<std::pair<Matrix<T>, Matrix<T>>> witnesses;
};

template <Scalar T>
SignalingCheck<T> check_no_signaling(const Matrix<T>& a, const T& tol) {
  detail::require_two_prover(a.rows(), a.cols(), "check_no_signaling");
  require_stochastic(a, "check_no_signaling: strategy");
  const Space& rows = a.rows();
  const Space& cols = a.cols();
  const std::size_t q0 = cols.factor_dim(0);
  const std::size_t q1 = cols.factor_dim(1);
  const Matrix<T> m0 = marginal(rows.tag(1), a);  // X0 <- Q0 Q1
  const Matrix<T> m1 = marginal(rows.tag(0), a);  // X1 <- Q0 Q1

  T violation(0);
  auto widen = [&](const T& x, const T& y) {
    T gap = abs_value(x - y);
    if (gap > violation) violation = gap;
  };
  for (std::size_t x = 0; x < m0.num_rows(); ++x) {
    for (std::size_t i0 = 0; i0 < q0; ++i0) {
      for (std::size_t i1 = 1; i1 < q1; ++i1) {
        for (std::size_t i1b = 0; i1b < i1; ++i1b) widen(m0(x, i0 * q1 + i1), m0(x, i0 * q1 + i1b));
      }
    }
  }
  for (std::size_t x = 0; x < m1.num_rows(); ++x) {
    for (std::size_t i1 = 0; i1 < q1; ++i1) {
      for (std::size_t i0 = 1; i0 < q0; ++i0) {
        for (std::size_t i0b = 0; i0b < i0; ++i0b) widen(m1(x, i0 * q1 + i1), m1(x, i0b * q1 + i1));
      }
    }
  }

  SignalingCheck<T> result{violation, std::nullopt};
  if (violation <= tol) {
    Matrix<T> w0(Space{{rows.tag(0), rows.factor_dim(0)}}, Space{{cols.tag(0), q0}});
    Matrix<T> w1(Space{{rows.tag(1), rows.factor_dim(1)}}, Space{{cols.tag(1), q1}});
    for (std::size_t i0 = 0; i0 < q0; ++i0) {
      for (std::size_t i1 = 0; i1 < q1; ++i1) {
        for (std::size_t x = 0; x < w0.num_rows(); ++x) w0(x, i0) += m0(x, i0 * q1 + i1);
        for (std::size_t x = 0; x < w1.num_rows(); ++x) w1(x, i1) += m1(x, i0 * q1 + i1);
      }
    }
    normalize_columns_in_place(w0);
    normalize_columns_in_place(w1);
    result.witnesses.emplace(std::move(w0), std::move(w1));
  }
  return result;
}

template <Scalar T>
struct PenaltyPair {
  Matrix<T> pi0;  // S01 -> A0
  Matrix<T> pi1;  // S01 -> A1
};

// Entry (k_c, i) of Pi_c is pi_i where Delta_c is positive, else 0.
// `delta0`/`delta1` receive the signaling defects.
template <Scalar T>
void optimal_penalties_into(const WitnessTriple<T>& x, std::span<const T> p_alice,
                            Matrix<T>& delta0, Matrix<T>& delta1, Matrix<T>& pi0,
                            Matrix<T>& pi1) {
  signaling_defects_into(x, delta0, delta1);
  detail::require_same_shape(delta0, pi0, "optimal_penalties");
  detail::require_same_shape(delta1, pi1, "optimal_penalties");
  if (p_alice.size() != delta0.num_cols()) {
    throw StructuralError("optimal_penalties: question distribution has the wrong length");
  }
  auto choose = [&](const Matrix<T>& delta, Matrix<T>& pi) {
    for (std::size_t k = 0; k < delta.num_rows(); ++k) {
      for (std::size_t i = 0; i < delta.num_cols(); ++i) {
        pi(k, i) = delta(k, i) > 0 ? p_alice[i] : T(0);
      }
    }
  };
  choose(delta0, pi0);
  choose(delta1, pi1);
}

template <Scalar T>
PenaltyPair<T> optimal_penalties(const WitnessTriple<T>& x, std::span<const T> p_alice) {
  auto [delta0, delta1] = signaling_defects(x);
  PenaltyPair<T> out{Matrix<T>(delta0.rows(), delta0.cols()),
                     Matrix<T>(delta1.rows(), delta1.cols())};
  optimal_penalties_into(x, p_alice, delta0, delta1, out.pi0, out.pi1);
  return out;
}

// Columnwise preimage: given nonnegative A: Q -> X0 X1 and nonnegative
// Delta: Q -> X_keep with Delta <= marginal over the other factor of A,
// returns D with 0 <= D <= A whose marginal equals Delta. Each required
// weight is spread over the summed-out factor in proportion to A.
template <Scalar T>
Matrix<T> preimage_columns(const Matrix<T>& a, std::size_t keep, const Matrix<T>& delta) {
  if (a.rows().rank() != 2 || keep > 1) {
    throw StructuralError("preimage: expected a two-factor answer space");
  }
  const Factor summed = a.rows().tag(1 - keep);
  detail::require_shape(delta, a.rows().without(summed), a.cols(), "preimage: marginal");
  const std::size_t n0 = a.rows().factor_dim(0);
  const std::size_t n1 = a.rows().factor_dim(1);
  const std::size_t n_keep = keep == 0 ? n0 : n1;
  const std::size_t n_sum = keep == 0 ? n1 : n0;
  auto row_of = [&](std::size_t kept, std::size_t other) {
    return keep == 0 ? kept * n1 + other : other * n1 + kept;
  };
  const T slack = comparison_slack<T>(kClampTolerance);
  Matrix<T> d(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.num_cols(); ++c) {
    for (std::size_t x = 0; x < n_keep; ++x) {
      T s(0);
      for (std::size_t y = 0; y < n_sum; ++y) {
        const T& entry = a(row_of(x, y), c);
        if (entry < 0) throw DomainError("preimage: negative entry in the source vector");
        s += entry;
      }
      const T& want = delta(x, c);
      if (want < 0) throw DomainError("preimage: negative target marginal");
      if (want > s + slack) throw DomainError("preimage: target exceeds the source marginal");
      if (s == 0) continue;
      const T ratio = want / s;
      for (std::size_t y = 0; y < n_sum; ++y) d(row_of(x, y), c) = a(row_of(x, y), c) * ratio;
    }
  }
  return d;
}

// Single-vector form over A0 (x) A1, summing out A1.
template <Scalar T>
std::vector<T> preimage_of_marginal(std::span<const T> a, std::size_t dim0, std::size_t dim1,
                                    std::span<const T> dvec) {
  if (a.size() != dim0 * dim1 || dvec.size() != dim0) {
    throw StructuralError("preimage_of_marginal: length mismatch");
  }
  const Space rows{{Factor::A0, dim0}, {Factor::A1, dim1}};
  const Matrix<T> am(rows, Space{}, std::vector<T>(a.begin(), a.end()));
  const Matrix<T> dm(Space{{Factor::A0, dim0}}, Space{}, std::vector<T>(dvec.begin(), dvec.end()));
  const Matrix<T> out = preimage_columns(am, 0, dm);
  return std::vector<T>(out.entries().begin(), out.entries().end());
}

// Columnwise join: T0: Q -> X0 and T1: Q -> X1 with equal column sums give
// T: Q -> X0 X1 with t_{(k0,k1)} = t0_{k0} t1_{k1} / s (zero when s = 0).
template <Scalar T>
Matrix<T> consistent_join_columns(const Matrix<T>& t0, const Matrix<T>& t1) {
  if (t0.rows().rank() != 1 || t1.rows().rank() != 1 || !(t0.cols() == t1.cols())) {
    throw StructuralError("consistent_join: incompatible shapes");
  }
  const std::size_t n0 = t0.num_rows();
  const std::size_t n1 = t1.num_rows();
  Matrix<T> t(t0.rows() * t1.rows(), t0.cols());
  const std::vector<T> s0 = column_sums(t0);
  const std::vector<T> s1 = column_sums(t1);
  for (std::size_t c = 0; c < t0.num_cols(); ++c) {
    for (std::size_t k = 0; k < n0; ++k) {
      if (t0(k, c) < 0) throw DomainError("consistent_join: negative entry");
    }
    for (std::size_t k = 0; k < n1; ++k) {
      if (t1(k, c) < 0) throw DomainError("consistent_join: negative entry");
    }
    if constexpr (kIsExact<T>) {
      if (s0[c] != s1[c]) throw DomainError("consistent_join: marginal sums differ");
    } else {
      if (std::fabs(s0[c] - s1[c]) > kStochasticTolerance) {
        throw DomainError("consistent_join: marginal sums differ");
      }
    }
    if (s0[c] == 0) continue;
    for (std::size_t k0 = 0; k0 < n0; ++k0) {
      if (t0(k0, c) == 0) continue;
      const T scaled = t0(k0, c) / s0[c];
      for (std::size_t k1 = 0; k1 < n1; ++k1) t(k0 * n1 + k1, c) = scaled * t1(k1, c);
    }
  }
  return t;
}

template <Scalar T>
std::vector<T> consistent_join(std::span<const T> t0, std::span<const T> t1) {
  const Matrix<T> m0(Space{{Factor::A0, t0.size()}}, Space{}, std::vector<T>(t0.begin(), t0.end()));
  const Matrix<T> m1(Space{{Factor::A1, t1.size()}}, Space{}, std::vector<T>(t1.begin(), t1.end()));
  const Matrix<T> t = consistent_join_columns(m0, m1);
  return std::vector<T>(t.entries().begin(), t.entries().end());
}

template <Scalar T>
struct RoundingResult {
  Matrix<T> strategy;
  // Largest negative round-off clamped away (always 0 in exact mode).
  double clamp_magnitude = 0.0;
};

namespace detail {

// Exact mode: entries must be nonnegative. Floating mode: entries in
// [-kClampTolerance, 0) are set to 0.
template <Scalar T>
void settle_nonnegative(Matrix<T>& m, const char* stage, double& clamp) {
  for (T& x : m.entries()) {
    if (!(x < 0)) continue;
    if constexpr (kIsExact<T>) {
      throw InvariantViolation(stage, "negative entry " + format_rational(x));
    } else {
      if (x < -kClampTolerance) {
        throw InvariantViolation(stage, "negative entry " + std::to_string(x));
      }
      clamp = std::max(clamp, -x);
      x = 0.0;
    }
  }
}

template <Scalar T>
void require_leq(const Matrix<T>& lhs, const Matrix<T>& rhs, const char* stage, const char* what) {
  const T slack = comparison_slack<T>(kClampTolerance);
  const auto l = lhs.entries();
  const auto r = rhs.entries();
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k] > r[k] + slack) throw InvariantViolation(stage, what);
  }
}

}  // namespace detail

// Builds a no-signaling strategy witnessed exactly by (part0, part1):
//   Delta0+ = (marginal_1(A) - A0 (x) e^*)^+,  D0 = preimage of Delta0+ in A,
//   Gamma1+ = (marginal_0(A - D0) - A1 (x) e^*)^+,  C1 = preimage of Gamma1+,
//   T_c = A_c (x) e^* - marginal(A - D0 - C1),  T = join(T0, T1),
//   A_ns = A - D0 - C1 + T.
// Prover 0 is handled before prover 1.
template <Scalar T>
RoundingResult<T> round_to_no_signaling(const WitnessTriple<T>& x) {
  detail::require_two_prover(x.joint.rows(), x.joint.cols(), "round_to_no_signaling");
  const Space& rows = x.joint.rows();
  const Space& cols = x.joint.cols();
  detail::require_shape(x.part0, Space{{rows.tag(0), rows.factor_dim(0)}},
                        Space{{cols.tag(0), cols.factor_dim(0)}}, "round_to_no_signaling: witness 0");
  detail::require_shape(x.part1, Space{{rows.tag(1), rows.factor_dim(1)}},
                        Space{{cols.tag(1), cols.factor_dim(1)}}, "round_to_no_signaling: witness 1");
  require_stochastic(x.joint, "round_to_no_signaling: strategy");
  require_stochastic(x.part0, "round_to_no_signaling: witness 0");
  require_stochastic(x.part1, "round_to_no_signaling: witness 1");

  const Factor x0 = rows.tag(0);
  const Factor x1 = rows.tag(1);
  const Matrix<T> w0 = replicate_columns(cols.tag(1), cols.factor_dim(1), x.part0);
  const Matrix<T> w1 = replicate_columns(cols.tag(0), cols.factor_dim(0), x.part1);
  double clamp = 0.0;

  const Matrix<T> marg1_a = marginal(x1, x.joint);
  const Matrix<T> delta0_plus = positive_part(marg1_a - w0);
  const Matrix<T> delta1_plus = positive_part(marginal(x0, x.joint) - w1);
  detail::require_leq(delta0_plus, marg1_a, "delta0", "positive defect exceeds the marginal");

  const Matrix<T> d0 = preimage_columns(x.joint, 0, delta0_plus);
  Matrix<T> rest = x.joint - d0;
  detail::settle_nonnegative(rest, "preimage D0", clamp);

  const Matrix<T> marg0_rest = marginal(x0, rest);
  const Matrix<T> gamma1_plus = positive_part(marg0_rest - w1);
  detail::require_leq(gamma1_plus, delta1_plus, "gamma1", "Gamma1+ exceeds Delta1+");
  detail::require_leq(gamma1_plus, marg0_rest, "gamma1", "positive defect exceeds the marginal");

  const Matrix<T> c1 = preimage_columns(rest, 1, gamma1_plus);
  rest = rest - c1;
  detail::settle_nonnegative(rest, "preimage C1", clamp);

  Matrix<T> t0 = w0 - marginal(x1, rest);
  Matrix<T> t1 = w1 - marginal(x0, rest);
  detail::settle_nonnegative(t0, "slack T0", clamp);
  detail::settle_nonnegative(t1, "slack T1", clamp);
  if constexpr (kIsExact<T>) {
    if (column_sums(t0) != column_sums(t1)) {
      throw InvariantViolation("slack", "slack marginals disagree");
    }
  }

  Matrix<T> joined = consistent_join_columns(t0, t1);
  // consistent_join_columns builds rows as t0.rows() * t1.rows(), which is
  // exactly the strategy's answer space.
  Matrix<T> a_ns = rest + joined;
  detail::settle_nonnegative(a_ns, "output", clamp);
  if constexpr (kIsExact<T>) {
    if (!is_stochastic(a_ns)) throw InvariantViolation("output", "result is not stochastic");
    if (!(marginal(x1, a_ns) == w0) || !(marginal(x0, a_ns) == w1)) {
      throw InvariantViolation("output", "result is not witnessed by the given witnesses");
    }
  } else {
    normalize_columns_in_place(a_ns);
  }
  return {std::move(a_ns), clamp};
}

}  // namespace nosig

#endif  // NOSIG_NOSIGNALING_HPP_
