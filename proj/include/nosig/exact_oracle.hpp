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

// Ground truth by linear programming over the no-signaling polytopes.
//
// The min-max values are computed as single LPs: the inner optimization is
// an LP over a polytope whose constraints do not depend on the outer
// player, so it is replaced by its LP dual and merged with the outer
// problem.

#ifndef NOSIG_EXACT_ORACLE_HPP_
#define NOSIG_EXACT_ORACLE_HPP_

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/game.hpp"
#include "nosig/nosignaling.hpp"
#include "nosig/scalar.hpp"
#include "nosig/simplex.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

// Worker cap from NOSIG_THREADS (default 1).
inline std::size_t worker_count() {
  const char* env = std::getenv("NOSIG_THREADS");
  if (env == nullptr) return 1;
  const long n = std::strtol(env, nullptr, 10);
  return n >= 1 ? static_cast<std::size_t>(n) : 1;
}

// Variable layout and equality constraints of one team's no-signaling
// polytope: a strategy X: Q0 Q1 -> X0 X1 plus witnesses X_c: Q_c -> X_c with
//   sum_x X(x, q) = 1,
//   marginal over X1 of X = X0 (x) e_{Q1}^*,
//   marginal over X0 of X = X1 (x) e_{Q0}^*,
// and all variables nonnegative. Column sums of the witnesses follow from
// these rows, so they are not repeated.
class NoSignalingPolytope {
 public:
  struct Row {
    std::vector<std::pair<std::size_t, int>> terms;  // local variable, coefficient
    int rhs;
  };

  NoSignalingPolytope(Space answers, Space questions) : answers_(answers), questions_(questions) {
    if (answers.rank() != 2 || questions.rank() != 2) {
      throw StructuralError("no-signaling polytope needs two answer and two question factors");
    }
    x0_ = answers.factor_dim(0);
    x1_ = answers.factor_dim(1);
    q0_ = questions.factor_dim(0);
    q1_ = questions.factor_dim(1);
    for (std::size_t q = 0; q < q0_ * q1_; ++q) {
      Row row{{}, 1};
      for (std::size_t x = 0; x < x0_ * x1_; ++x) row.terms.push_back({joint(x, q), 1});
      rows_.push_back(std::move(row));
    }
    for (std::size_t i0 = 0; i0 < q0_; ++i0) {
      for (std::size_t i1 = 0; i1 < q1_; ++i1) {
        const std::size_t q = i0 * q1_ + i1;
        for (std::size_t k0 = 0; k0 < x0_; ++k0) {
          Row row{{}, 0};
          for (std::size_t k1 = 0; k1 < x1_; ++k1) row.terms.push_back({joint(k0 * x1_ + k1, q), 1});
          row.terms.push_back({witness0(k0, i0), -1});
          rows_.push_back(std::move(row));
        }
        for (std::size_t k1 = 0; k1 < x1_; ++k1) {
          Row row{{}, 0};
          for (std::size_t k0 = 0; k0 < x0_; ++k0) row.terms.push_back({joint(k0 * x1_ + k1, q), 1});
          row.terms.push_back({witness1(k1, i1), -1});
          rows_.push_back(std::move(row));
        }
      }
    }
    columns_.resize(num_variables());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [var, coef] : rows_[r].terms) columns_[var].push_back({r, coef});
    }
  }

  static NoSignalingPolytope alice(const SpaceDims& d) {
    return NoSignalingPolytope(alice_answers(d), alice_questions(d));
  }
  static NoSignalingPolytope bob(const SpaceDims& d) {
    return NoSignalingPolytope(bob_answers(d), bob_questions(d));
  }

  std::size_t num_joint() const { return x0_ * x1_ * q0_ * q1_; }
  std::size_t num_variables() const { return num_joint() + x0_ * q0_ + x1_ * q1_; }
  std::size_t joint(std::size_t answer, std::size_t question) const {
    return answer * q0_ * q1_ + question;
  }
  std::size_t witness0(std::size_t x0, std::size_t q0) const { return num_joint() + x0 * q0_ + q0; }
  std::size_t witness1(std::size_t x1, std::size_t q1) const {
    return num_joint() + x0_ * q0_ + x1 * q1_ + q1;
  }

  const std::vector<Row>& rows() const { return rows_; }
  // Transposed constraint matrix: for each variable, its (row, coefficient) list.
  const std::vector<std::vector<std::pair<std::size_t, int>>>& columns() const { return columns_; }

  template <Scalar T>
  void add_to(LinearProgram<T>& lp, std::size_t offset) const {
    for (const Row& row : rows_) {
      std::vector<typename LinearProgram<T>::Term> terms;
      for (const auto& [var, coef] : row.terms) terms.push_back({offset + var, T(coef)});
      lp.add_constraint(std::move(terms), Sense::kEqual, T(row.rhs));
    }
  }

  template <Scalar T>
  WitnessTriple<T> extract(const std::vector<T>& values, std::size_t offset) const {
    WitnessTriple<T> out{Matrix<T>(answers_, questions_),
                         Matrix<T>(Space{{answers_.tag(0), x0_}}, Space{{questions_.tag(0), q0_}}),
                         Matrix<T>(Space{{answers_.tag(1), x1_}}, Space{{questions_.tag(1), q1_}})};
    for (std::size_t x = 0; x < x0_ * x1_; ++x) {
      for (std::size_t q = 0; q < q0_ * q1_; ++q) out.joint(x, q) = values[offset + joint(x, q)];
    }
    for (std::size_t x = 0; x < x0_; ++x) {
      for (std::size_t q = 0; q < q0_; ++q) out.part0(x, q) = values[offset + witness0(x, q)];
    }
    for (std::size_t x = 0; x < x1_; ++x) {
      for (std::size_t q = 0; q < q1_; ++q) out.part1(x, q) = values[offset + witness1(x, q)];
    }
    return out;
  }

  const Space& answers() const { return answers_; }
  const Space& questions() const { return questions_; }

 private:
  Space answers_;
  Space questions_;
  std::size_t x0_, x1_, q0_, q1_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<std::size_t, int>>> columns_;
};

template <Scalar T>
struct BestResponse {
  WitnessTriple<T> strategy;
  T value;
};

namespace detail {

template <Scalar T>
LpSolution<T> solve_or_throw(const LinearProgram<T>& lp, const char* what) {
  LpSolution<T> sol = lp.solve();
  if (sol.status != LpStatus::kOptimal) {
    throw InvariantViolation(what, sol.status == LpStatus::kInfeasible ? "LP infeasible"
                                                                       : "LP unbounded");
  }
  return sol;
}

}  // namespace detail

// Optimizes <S, X> over a no-signaling polytope. The LP skeleton is built
// once, so repeated calls (one per solver iteration) only reset the costs.
template <Scalar T>
class PolytopeOptimizer {
 public:
  PolytopeOptimizer(NoSignalingPolytope polytope, Direction direction)
      : polytope_(std::move(polytope)), lp_(direction) {
    lp_.add_variables(polytope_.num_variables());
    polytope_.add_to(lp_, 0);
  }

  BestResponse<T> solve(const Matrix<T>& objective) const {
    detail::require_shape(objective, polytope_.answers(), polytope_.questions(),
                          "best response objective");
    LinearProgram<T> lp = lp_;
    for (std::size_t x = 0; x < objective.num_rows(); ++x) {
      for (std::size_t q = 0; q < objective.num_cols(); ++q) {
        lp.set_cost(polytope_.joint(x, q), objective(x, q));
      }
    }
    LpSolution<T> sol = detail::solve_or_throw(lp, "polytope LP");
    return {polytope_.extract(sol.values, 0), sol.objective};
  }

  const NoSignalingPolytope& polytope() const { return polytope_; }

 private:
  NoSignalingPolytope polytope_;
  LinearProgram<T> lp_;
};

// max <S, B> over no-signaling B. S's row and column spaces fix the team.
template <Scalar T>
BestResponse<T> best_response_exact(const Matrix<T>& s) {
  return PolytopeOptimizer<T>(NoSignalingPolytope(s.rows(), s.cols()), Direction::kMaximize)
      .solve(s);
}

template <Scalar T>
struct EquilibriumSolution {
  T value;          // min over A of max over B
  T max_min_value;  // max over B of min over A, from the second LP
  WitnessTriple<T> alice;
  WitnessTriple<T> bob;
};

namespace detail {

// Adds free dual variables for `inner`'s rows and, for every inner variable
// e, the dual constraint sum_r G[r,e] u_r (sense) c_e(outer), where c_e is
// supplied as a list of (outer variable, coefficient) terms (zero for
// witness variables). Returns the first dual variable; the caller adds
// sum_r h_r u_r to the objective.
template <Scalar T>
std::size_t add_inner_dual(LinearProgram<T>& lp, const NoSignalingPolytope& inner,
                           const std::function<std::vector<typename LinearProgram<T>::Term>(
                               std::size_t joint_answer, std::size_t joint_question)>& coupling,
                           Sense sense) {
  const std::size_t first = lp.add_variables(inner.rows().size(), /*free=*/true);
  for (std::size_t r = 0; r < inner.rows().size(); ++r) {
    const int h = inner.rows()[r].rhs;
    if (h != 0) lp.add_cost(first + r, T(h));
  }
  const std::size_t n_q = inner.questions().dim();
  for (std::size_t e = 0; e < inner.num_variables(); ++e) {
    std::vector<typename LinearProgram<T>::Term> terms;
    for (const auto& [row, coef] : inner.columns()[e]) terms.push_back({first + row, T(coef)});
    if (e < inner.num_joint()) {
      for (auto& t : coupling(e / n_q, e % n_q)) {
        t.coef = -t.coef;
        terms.push_back(std::move(t));
      }
    }
    lp.add_constraint(std::move(terms), sense, T(0));
  }
  return first;
}

template <Scalar T>
std::vector<typename LinearProgram<T>::Term> phi_terms(const VerifierMatrix<T>& verifier,
                                                        const NoSignalingPolytope& alice,
                                                        std::size_t l, std::size_t j) {
  // Coefficients of Phi_V(A)[l, j] in the entries of A.
  const SpaceDims& d = verifier.dims();
  const Matrix<T>& v = verifier.matrix();
  std::vector<typename LinearProgram<T>::Term> terms;
  for (std::size_t k = 0; k < d.a01(); ++k) {
    for (std::size_t i = 0; i < d.s01(); ++i) {
      const T& x = v(k * d.b01() + l, i * d.t01() + j);
      if (x != 0) terms.push_back({alice.joint(k, i), x});
    }
  }
  return terms;
}

template <Scalar T>
std::vector<typename LinearProgram<T>::Term> phi_adjoint_terms(const VerifierMatrix<T>& verifier,
                                                                const NoSignalingPolytope& bob,
                                                                std::size_t offset, std::size_t k,
                                                                std::size_t i) {
  const SpaceDims& d = verifier.dims();
  const Matrix<T>& v = verifier.matrix();
  std::vector<typename LinearProgram<T>::Term> terms;
  for (std::size_t l = 0; l < d.b01(); ++l) {
    for (std::size_t j = 0; j < d.t01(); ++j) {
      const T& x = v(k * d.b01() + l, i * d.t01() + j);
      if (x != 0) terms.push_back({offset + bob.joint(l, j), x});
    }
  }
  return terms;
}

}  // namespace detail

// lambda(V) = min_A max_B <V, A (x) B> with the inner max dualized, and the
// max-min form with the inner min dualized (returns Bob's optimal strategy).
template <Scalar T>
EquilibriumSolution<T> lambda_exact(const VerifierMatrix<T>& verifier) {
  const SpaceDims& d = verifier.dims();
  const NoSignalingPolytope alice = NoSignalingPolytope::alice(d);
  const NoSignalingPolytope bob = NoSignalingPolytope::bob(d);

  LinearProgram<T> min_max(Direction::kMinimize);
  min_max.add_variables(alice.num_variables());
  alice.add_to(min_max, 0);
  detail::add_inner_dual<T>(
      min_max, bob,
      [&](std::size_t l, std::size_t j) { return detail::phi_terms(verifier, alice, l, j); },
      Sense::kGreaterEqual);
  const LpSolution<T> primal = detail::solve_or_throw(min_max, "lambda min-max LP");

  LinearProgram<T> max_min(Direction::kMaximize);
  max_min.add_variables(bob.num_variables());
  bob.add_to(max_min, 0);
  detail::add_inner_dual<T>(
      max_min, alice,
      [&](std::size_t k, std::size_t i) {
        return detail::phi_adjoint_terms(verifier, bob, 0, k, i);
      },
      Sense::kLessEqual);
  const LpSolution<T> dual = detail::solve_or_throw(max_min, "lambda max-min LP");

  return {primal.objective, dual.objective, alice.extract(primal.values, 0),
          bob.extract(dual.values, 0)};
}

// Only the min-max LP: the value and Alice's optimal strategy.
template <Scalar T>
T lambda_value(const VerifierMatrix<T>& verifier) {
  const SpaceDims& d = verifier.dims();
  const NoSignalingPolytope alice = NoSignalingPolytope::alice(d);
  const NoSignalingPolytope bob = NoSignalingPolytope::bob(d);
  LinearProgram<T> lp(Direction::kMinimize);
  lp.add_variables(alice.num_variables());
  alice.add_to(lp, 0);
  detail::add_inner_dual<T>(
      lp, bob,
      [&](std::size_t l, std::size_t j) { return detail::phi_terms(verifier, alice, l, j); },
      Sense::kGreaterEqual);
  return detail::solve_or_throw(lp, "lambda min-max LP").objective;
}

// mu(V): Alice picks any stochastic triple, Bob a no-signaling B plus
// penalties 0 <= Pi_c <= e p_Alice^*. The penalty maximization dualizes to
// z >= Delta_c, z >= 0 with cost p_Alice.
template <Scalar T>
T mu_exact(const VerifierMatrix<T>& verifier) {
  const SpaceDims& d = verifier.dims();
  // Reuse the polytope only for its variable layout.
  const NoSignalingPolytope layout = NoSignalingPolytope::alice(d);
  const NoSignalingPolytope bob = NoSignalingPolytope::bob(d);
  using Term = typename LinearProgram<T>::Term;

  LinearProgram<T> lp(Direction::kMinimize);
  lp.add_variables(layout.num_variables());
  for (std::size_t i = 0; i < d.s01(); ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < d.a01(); ++k) terms.push_back({layout.joint(k, i), T(1)});
    lp.add_constraint(std::move(terms), Sense::kEqual, T(1));
  }
  for (std::size_t i0 = 0; i0 < d.s0; ++i0) {
    std::vector<Term> terms;
    for (std::size_t k0 = 0; k0 < d.a0; ++k0) terms.push_back({layout.witness0(k0, i0), T(1)});
    lp.add_constraint(std::move(terms), Sense::kEqual, T(1));
  }
  for (std::size_t i1 = 0; i1 < d.s1; ++i1) {
    std::vector<Term> terms;
    for (std::size_t k1 = 0; k1 < d.a1; ++k1) terms.push_back({layout.witness1(k1, i1), T(1)});
    lp.add_constraint(std::move(terms), Sense::kEqual, T(1));
  }
  detail::add_inner_dual<T>(
      lp, bob,
      [&](std::size_t l, std::size_t j) { return detail::phi_terms(verifier, layout, l, j); },
      Sense::kGreaterEqual);

  // z_{c,(k_c,i)} - Delta_c(k_c, i) >= 0.
  for (std::size_t i0 = 0; i0 < d.s0; ++i0) {
    for (std::size_t i1 = 0; i1 < d.s1; ++i1) {
      const std::size_t i = i0 * d.s1 + i1;
      const T& weight = verifier.p_alice()[i];
      for (std::size_t k0 = 0; k0 < d.a0; ++k0) {
        const std::size_t z = lp.add_variable();
        lp.set_cost(z, weight);
        std::vector<Term> terms{{z, T(1)}, {layout.witness0(k0, i0), T(1)}};
        for (std::size_t k1 = 0; k1 < d.a1; ++k1) {
          terms.push_back({layout.joint(k0 * d.a1 + k1, i), T(-1)});
        }
        lp.add_constraint(std::move(terms), Sense::kGreaterEqual, T(0));
      }
      for (std::size_t k1 = 0; k1 < d.a1; ++k1) {
        const std::size_t z = lp.add_variable();
        lp.set_cost(z, weight);
        std::vector<Term> terms{{z, T(1)}, {layout.witness1(k1, i1), T(1)}};
        for (std::size_t k0 = 0; k0 < d.a0; ++k0) {
          terms.push_back({layout.joint(k0 * d.a1 + k1, i), T(-1)});
        }
        lp.add_constraint(std::move(terms), Sense::kGreaterEqual, T(0));
      }
    }
  }
  return detail::solve_or_throw(lp, "mu LP").objective;
}

enum class Side { kAlice, kBob };

inline const char* side_name(Side side) { return side == Side::kAlice ? "alice" : "bob"; }

// Alice: max_B <V, A (x) B> over no-signaling B.
template <Scalar T>
T best_reply_value_against_alice(const VerifierMatrix<T>& verifier, const Matrix<T>& alice) {
  return best_response_exact(phi(verifier, alice)).value;
}

// Bob: min_A <V, A (x) B> over no-signaling A.
template <Scalar T>
T best_reply_value_against_bob(const VerifierMatrix<T>& verifier, const Matrix<T>& bob) {
  const Matrix<T> cost = phi_adjoint(verifier, bob);
  return PolytopeOptimizer<T>(NoSignalingPolytope::alice(verifier.dims()), Direction::kMinimize)
      .solve(cost)
      .value;
}

namespace detail {

template <Scalar T>
void require_no_signaling(const Matrix<T>& strategy, double tol, const char* what) {
  const SignalingCheck<T> check = check_no_signaling(strategy, from_double<T>(tol));
  if (check.violation > from_double<T>(tol)) {
    throw DomainError(std::string(what) + " is signaling beyond tolerance");
  }
}

}  // namespace detail

// How far `strategy` is from optimal for its side, given lambda(V).
template <Scalar T>
T optimality_gap(const VerifierMatrix<T>& verifier, Side side, const Matrix<T>& strategy,
                 const T& lambda, double tol = kNoSignalingTolerance) {
  detail::require_no_signaling(strategy, tol, "optimality_gap: strategy");
  if (side == Side::kAlice) {
    return best_reply_value_against_alice(verifier, strategy) - lambda;
  }
  return lambda - best_reply_value_against_bob(verifier, strategy);
}

template <Scalar T>
T optimality_gap(const VerifierMatrix<T>& verifier, Side side, const Matrix<T>& strategy,
                 double tol = kNoSignalingTolerance) {
  return optimality_gap(verifier, side, strategy, lambda_value(verifier), tol);
}

struct Certificate {
  Rational lambda;
  Rational gap_alice;
  Rational gap_bob;
};

// Exact lambda(V) and both gaps. The three LPs are independent and run
// concurrently when NOSIG_THREADS > 1.
inline Certificate certify(const VerifierMatrix<Rational>& verifier, const Matrix<Rational>& alice,
                           const Matrix<Rational>& bob, double tol = kNoSignalingTolerance) {
  detail::require_no_signaling(alice, tol, "certify: Alice strategy");
  detail::require_no_signaling(bob, tol, "certify: Bob strategy");
  auto lambda_task = [&] { return lambda_value(verifier); };
  auto alice_task = [&] { return best_reply_value_against_alice(verifier, alice); };
  auto bob_task = [&] { return best_reply_value_against_bob(verifier, bob); };
  Rational lambda, vs_alice, vs_bob;
  if (worker_count() > 1) {
    auto f1 = std::async(std::launch::async, alice_task);
    auto f2 = std::async(std::launch::async, bob_task);
    lambda = lambda_task();
    vs_alice = f1.get();
    vs_bob = f2.get();
  } else {
    lambda = lambda_task();
    vs_alice = alice_task();
    vs_bob = bob_task();
  }
  return {lambda, vs_alice - lambda, lambda - vs_bob};
}

}  // namespace nosig

#endif  // NOSIG_EXACT_ORACLE_HPP_
