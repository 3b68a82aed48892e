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

// Penalty-augmented multiplicative weights for the no-signaling equilibrium.
//
// Team Alice plays a stochastic triple (A, A0, A1) updated by multiplicative
// weights; Team Bob answers each round with a near-best no-signaling reply B
// plus the optimal penalties for Alice's current signaling defects. The
// averaged Alice triple is rounded to a no-signaling strategy at the end.
//
// The loop runs in double precision. Final averages are snapped onto a
// dyadic grid and rounded in exact rational arithmetic, so the returned
// strategies are exactly no-signaling.

#ifndef NOSIG_MWUM_HPP_
#define NOSIG_MWUM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/exact_oracle.hpp"
#include "nosig/game.hpp"
#include "nosig/nosignaling.hpp"
#include "nosig/scalar.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

enum class OracleKind { kRecursive, kExactLp };

inline const char* oracle_name(OracleKind kind) {
  return kind == OracleKind::kRecursive ? "recursive" : "exact-lp";
}

struct SolverConfig {
  double delta = 0.1;
  std::optional<double> epsilon;             // default delta / 10
  std::optional<std::size_t> iterations;     // default from the regret bound
  OracleKind oracle = OracleKind::kExactLp;
  bool early_exit = false;
  bool record_trace = false;
  bool check_loss_bounds = true;
  bool certify = false;
  // Accepted for interface stability; the solver itself draws no randomness.
  std::uint64_t seed = 0;
};

inline double resolve_epsilon(const SolverConfig& config) {
  const double eps = config.epsilon.value_or(config.delta / 10.0);
  if (!(config.delta > 0.0)) throw DomainError("delta must be positive");
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("learning rate must lie in (0, 1/2)");
  return eps;
}

// T = max(1, ceil(ln(dim A01) / eps^2)).
inline std::size_t iteration_count(double epsilon, std::size_t alice_answer_dim) {
  if (!(epsilon > 0.0)) throw DomainError("learning rate must be positive");
  if (alice_answer_dim == 0) throw StructuralError("empty answer space");
  const double t = std::ceil(std::log(static_cast<double>(alice_answer_dim)) / (epsilon * epsilon));
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

inline std::size_t iteration_count(const SolverConfig& config, std::size_t alice_answer_dim) {
  if (config.iterations) {
    if (*config.iterations == 0) throw DomainError("iteration count must be at least 1");
    return *config.iterations;
  }
  return iteration_count(resolve_epsilon(config), alice_answer_dim);
}

// W' = W (.) (1 - eps M), entrywise.
template <Scalar T>
Matrix<T> mwum_update(const Matrix<T>& w, const Matrix<T>& m, const T& eps) {
  detail::require_same_shape(w, m, "mwum_update");
  Matrix<T> out = w;
  auto dst = out.entries();
  const auto loss = m.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) {
    if (dst[k] < 0) throw DomainError("mwum_update: negative weight");
    dst[k] *= T(1) - eps * loss[k];
    if (!(dst[k] > 0)) {
      throw InvariantViolation("mwum update", "weight became nonpositive; loss bound breached");
    }
  }
  return out;
}

struct SolveResult {
  // Rounded no-signaling strategies with their witnesses.
  WitnessTriple<double> alice;
  WitnessTriple<double> bob;
  // Exact versions, present when the game was given in rational form.
  std::optional<WitnessTriple<Rational>> alice_exact;
  std::optional<WitnessTriple<Rational>> bob_exact;
  double value_estimate = 0.0;
  // Averages over all iterations, before rounding.
  WitnessTriple<double> alice_average;
  BobTriple<double> response_average;
  std::optional<Rational> lambda;
  std::optional<Rational> certified_gap_alice;
  std::optional<Rational> certified_gap_bob;
  std::size_t iterations_planned = 0;
  std::size_t iterations_run = 0;
  std::vector<double> trace;
  std::size_t loss_bound_violations = 0;
  double clamp_magnitude = 0.0;
};

template <Scalar T>
SolveResult solve_equilibrium(const VerifierMatrix<T>& verifier, const SolverConfig& config);

// A delta-best no-signaling reply to S: T01 -> B01, i.e. <S, B> within
// delta of the maximum. Team Bob is made the minimizing side of the
// complementary game V' = e p_Bob^* - S, whose opposing team is trivial.
inline WitnessTriple<double> best_response_recursive(const Matrix<double>& s, double delta,
                                                     std::span<const double> p_bob) {
  const Space& answers = s.rows();
  const Space& questions = s.cols();
  detail::require_two_prover(answers, questions, "best_response_recursive");
  if (p_bob.size() != questions.dim()) {
    throw StructuralError("best_response_recursive: p_Bob has the wrong length");
  }
  // The complementary game puts Bob's spaces in Alice's seats.
  SpaceDims d;
  d.s0 = questions.factor_dim(0);
  d.s1 = questions.factor_dim(1);
  d.a0 = answers.factor_dim(0);
  d.a1 = answers.factor_dim(1);
  Matrix<double> v(alice_answers(d) * bob_answers(d), alice_questions(d) * bob_questions(d));
  for (std::size_t l = 0; l < s.num_rows(); ++l) {
    for (std::size_t j = 0; j < s.num_cols(); ++j) {
      const double x = s(l, j);
      if (x < -1e-12 || x > p_bob[j] + 1e-12) {
        throw DomainError("best_response_recursive: S must satisfy 0 <= S <= e p_Bob^*");
      }
      v(l, j) = std::clamp(p_bob[j] - x, 0.0, p_bob[j]);
    }
  }
  const VerifierMatrix<double> complement(d, std::move(v),
                                          std::vector<double>(p_bob.begin(), p_bob.end()));
  SolverConfig inner;
  inner.delta = delta;
  inner.check_loss_bounds = false;
  SolveResult r = solve_equilibrium(complement, inner);
  // Relabel from Alice's factors back to Bob's.
  WitnessTriple<double> out{Matrix<double>(answers, questions),
                            Matrix<double>(Space{{answers.tag(0), d.a0}}, Space{{questions.tag(0), d.s0}}),
                            Matrix<double>(Space{{answers.tag(1), d.a1}}, Space{{questions.tag(1), d.s1}})};
  std::copy(r.alice.joint.entries().begin(), r.alice.joint.entries().end(),
            out.joint.entries().begin());
  std::copy(r.alice.part0.entries().begin(), r.alice.part0.entries().end(),
            out.part0.entries().begin());
  std::copy(r.alice.part1.entries().begin(), r.alice.part1.entries().end(),
            out.part1.entries().begin());
  return out;
}

namespace detail {

// Entries rounded to multiples of 2^-40, then each column's largest entry
// absorbs the residual so columns sum to exactly 1.
inline Matrix<Rational> snap_stochastic(const Matrix<double>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.num_cols(); ++c) {
    Rational sum(0);
    std::size_t largest = 0;
    for (std::size_t r = 0; r < m.num_rows(); ++r) {
      out(r, c) = rationalize(std::max(m(r, c), 0.0));
      sum += out(r, c);
      if (m(r, c) > m(largest, c)) largest = r;
    }
    out(largest, c) += Rational(1) - sum;
    if (out(largest, c) < 0) throw InvariantViolation("snap", "column cannot be made stochastic");
  }
  return out;
}

inline WitnessTriple<Rational> snap_triple(const WitnessTriple<double>& x) {
  return {snap_stochastic(x.joint), snap_stochastic(x.part0), snap_stochastic(x.part1)};
}

inline WitnessTriple<double> to_double_triple(const WitnessTriple<Rational>& x) {
  return {x.joint.convert<double>(), x.part0.convert<double>(), x.part1.convert<double>()};
}

// Rounds an averaged triple; returns (rounded triple, exact version if any).
template <Scalar T>
std::pair<WitnessTriple<double>, std::optional<WitnessTriple<Rational>>> finish_triple(
    const WitnessTriple<double>& avg, double& clamp) {
  if constexpr (kIsExact<T>) {
    WitnessTriple<Rational> q = snap_triple(avg);
    q.joint = round_to_no_signaling(q).strategy;
    return {to_double_triple(q), std::move(q)};
  } else {
    RoundingResult<double> r = round_to_no_signaling(avg);
    clamp = std::max(clamp, r.clamp_magnitude);
    return {WitnessTriple<double>{std::move(r.strategy), avg.part0, avg.part1}, std::nullopt};
  }
}

// Preallocated state for the iteration loop.
class MwumEngine {
 public:
  MwumEngine(const VerifierMatrix<double>& verifier, const SolverConfig& config)
      : v_(verifier), d_(verifier.dims()), eps_(resolve_epsilon(config)), config_(config) {
    na_ = d_.a01();
    ns_ = d_.s01();
    nb_ = d_.b01();
    nt_ = d_.t01();
    a_.assign(na_ * ns_, 1.0 / static_cast<double>(na_));
    a0_.assign(d_.a0 * d_.s0, 1.0 / static_cast<double>(d_.a0));
    a1_.assign(d_.a1 * d_.s1, 1.0 / static_cast<double>(d_.a1));
    pi0_.assign(d_.a0 * ns_, 0.0);
    pi1_.assign(d_.a1 * ns_, 0.0);
    m_.assign(a_.size(), 0.0);
    m0_.assign(a0_.size(), 0.0);
    m1_.assign(a1_.size(), 0.0);
    sum_a_.assign(a_.size(), 0.0);
    sum_a0_.assign(a0_.size(), 0.0);
    sum_a1_.assign(a1_.size(), 0.0);
    sum_pi0_.assign(pi0_.size(), 0.0);
    sum_pi1_.assign(pi1_.size(), 0.0);
    for (std::size_t i = 0; i < ns_; ++i) p_alice_.push_back(verifier.p_alice()[i]);
    p_alice0_.assign(d_.s0, 0.0);
    p_alice1_.assign(d_.s1, 0.0);
    for (std::size_t i0 = 0; i0 < d_.s0; ++i0) {
      for (std::size_t i1 = 0; i1 < d_.s1; ++i1) {
        p_alice0_[i0] += p_alice_[i0 * d_.s1 + i1];
        p_alice1_[i1] += p_alice_[i0 * d_.s1 + i1];
      }
    }
    bob_trivial_ = d_.bob_trivial();
    s_ = Matrix<double>(bob_answers(d_), bob_questions(d_));
    alice_view_ = Matrix<double>(alice_answers(d_), alice_questions(d_));
    phi_b_ = Matrix<double>(alice_answers(d_), alice_questions(d_));
    response_ = WitnessTriple<double>{Matrix<double>(bob_answers(d_), bob_questions(d_)),
                                      Matrix<double>(Space::of(d_, {Factor::B0}),
                                                     Space::of(d_, {Factor::T0})),
                                      Matrix<double>(Space::of(d_, {Factor::B1}),
                                                     Space::of(d_, {Factor::T1}))};
    sum_b_ = response_;
    sum_b_.joint.fill(0.0);
    sum_b_.part0.fill(0.0);
    sum_b_.part1.fill(0.0);
    if (bob_trivial_) {
      response_.joint.fill(1.0);
      response_.part0.fill(1.0);
      response_.part1.fill(1.0);
      phi_adjoint_into(v_, response_.joint, phi_b_);
    } else if (config.oracle == OracleKind::kExactLp) {
      lp_oracle_ = std::make_unique<PolytopeOptimizer<double>>(NoSignalingPolytope::bob(d_),
                                                               Direction::kMaximize);
    }
    for (std::size_t j = 0; j < nt_; ++j) p_bob_.push_back(verifier.p_bob()[j]);
  }

  // One round; returns <f_V(triple), (B, Pi0, Pi1)>.
  double step() {
    compute_penalties();
    if (!bob_trivial_) {
      std::copy(a_.begin(), a_.end(), alice_view_.entries().begin());
      phi_into(v_, alice_view_, s_);
      if (lp_oracle_) {
        response_ = lp_oracle_->solve(s_).strategy;
      } else {
        response_ = best_response_recursive(s_, config_.delta / 2.0, p_bob_);
      }
      phi_adjoint_into(v_, response_.joint, phi_b_);
    }
    const double value = compute_losses();
    accumulate();
    update();
    ++rounds_;
    return value;
  }

  std::size_t rounds() const { return rounds_; }
  std::size_t loss_bound_violations() const { return violations_; }

  WitnessTriple<double> alice_average() const {
    WitnessTriple<double> out{Matrix<double>(alice_answers(d_), alice_questions(d_)),
                              Matrix<double>(Space::of(d_, {Factor::A0}), Space::of(d_, {Factor::S0})),
                              Matrix<double>(Space::of(d_, {Factor::A1}), Space::of(d_, {Factor::S1}))};
    average_into(sum_a_, out.joint);
    average_into(sum_a0_, out.part0);
    average_into(sum_a1_, out.part1);
    return out;
  }

  BobTriple<double> response_average() const {
    BobTriple<double> out = zero_bob_triple<double>(d_);
    average_into(sum_b_.joint.entries(), out.joint);
    average_into(sum_pi0_, out.part0);
    average_into(sum_pi1_, out.part1);
    return out;
  }

  WitnessTriple<double> bob_average() const {
    WitnessTriple<double> out = sum_b_;
    average_into(sum_b_.joint.entries(), out.joint);
    average_into(sum_b_.part0.entries(), out.part0);
    average_into(sum_b_.part1.entries(), out.part1);
    return out;
  }

 private:
  template <typename Range>
  void average_into(const Range& sum, Matrix<double>& out) const {
    const double inv = 1.0 / static_cast<double>(rounds_);
    auto dst = out.entries();
    std::size_t k = 0;
    for (const double x : sum) dst[k++] = x * inv;
  }

  // Pi_c(k_c, i) = p_Alice(i) where Delta_c(k_c, i) > 0, else 0.
  void compute_penalties() {
    const std::size_t a0 = d_.a0, a1 = d_.a1, s0 = d_.s0, s1 = d_.s1;
    for (std::size_t i0 = 0; i0 < s0; ++i0) {
      for (std::size_t i1 = 0; i1 < s1; ++i1) {
        const std::size_t i = i0 * s1 + i1;
        const double p = p_alice_[i];
        for (std::size_t k0 = 0; k0 < a0; ++k0) {
          double marg = 0.0;
          for (std::size_t k1 = 0; k1 < a1; ++k1) marg += a_[(k0 * a1 + k1) * ns_ + i];
          pi0_[k0 * ns_ + i] = marg - a0_[k0 * s0 + i0] > 0.0 ? p : 0.0;
        }
        for (std::size_t k1 = 0; k1 < a1; ++k1) {
          double marg = 0.0;
          for (std::size_t k0 = 0; k0 < a0; ++k0) marg += a_[(k0 * a1 + k1) * ns_ + i];
          pi1_[k1 * ns_ + i] = marg - a1_[k1 * s1 + i1] > 0.0 ? p : 0.0;
        }
      }
    }
  }

  // (M, M0, M1) = f_V^*(B, Pi0, Pi1); returns <(A, A0, A1), (M, M0, M1)>.
  double compute_losses() {
    const std::size_t a0 = d_.a0, a1 = d_.a1, s0 = d_.s0, s1 = d_.s1;
    const auto phi_b = phi_b_.entries();
    double value = 0.0;
    for (std::size_t k0 = 0; k0 < a0; ++k0) {
      for (std::size_t k1 = 0; k1 < a1; ++k1) {
        const std::size_t k = k0 * a1 + k1;
        for (std::size_t i = 0; i < ns_; ++i) {
          const double loss = phi_b[k * ns_ + i] + pi0_[k0 * ns_ + i] + pi1_[k1 * ns_ + i];
          m_[k * ns_ + i] = loss;
          value += loss * a_[k * ns_ + i];
        }
      }
    }
    std::fill(m0_.begin(), m0_.end(), 0.0);
    std::fill(m1_.begin(), m1_.end(), 0.0);
    for (std::size_t i0 = 0; i0 < s0; ++i0) {
      for (std::size_t i1 = 0; i1 < s1; ++i1) {
        const std::size_t i = i0 * s1 + i1;
        for (std::size_t k0 = 0; k0 < a0; ++k0) m0_[k0 * s0 + i0] -= pi0_[k0 * ns_ + i];
        for (std::size_t k1 = 0; k1 < a1; ++k1) m1_[k1 * s1 + i1] -= pi1_[k1 * ns_ + i];
      }
    }
    for (std::size_t k = 0; k < m0_.size(); ++k) value += m0_[k] * a0_[k];
    for (std::size_t k = 0; k < m1_.size(); ++k) value += m1_[k] * a1_[k];
    if (config_.check_loss_bounds) check_loss_bounds();
    return value;
  }

  void check_loss_bounds() {
    constexpr double kSlack = 1e-12;
    for (std::size_t k = 0; k < na_; ++k) {
      for (std::size_t i = 0; i < ns_; ++i) {
        const double x = m_[k * ns_ + i];
        if (x < -kSlack || x > 3.0 * p_alice_[i] + kSlack) ++violations_;
      }
    }
    for (std::size_t k = 0; k < m0_.size(); ++k) {
      const double x = m0_[k];
      if (x > kSlack || x < -p_alice0_[k % d_.s0] - kSlack) ++violations_;
    }
    for (std::size_t k = 0; k < m1_.size(); ++k) {
      const double x = m1_[k];
      if (x > kSlack || x < -p_alice1_[k % d_.s1] - kSlack) ++violations_;
    }
  }

  void accumulate() {
    for (std::size_t k = 0; k < a_.size(); ++k) sum_a_[k] += a_[k];
    for (std::size_t k = 0; k < a0_.size(); ++k) sum_a0_[k] += a0_[k];
    for (std::size_t k = 0; k < a1_.size(); ++k) sum_a1_[k] += a1_[k];
    for (std::size_t k = 0; k < pi0_.size(); ++k) sum_pi0_[k] += pi0_[k];
    for (std::size_t k = 0; k < pi1_.size(); ++k) sum_pi1_[k] += pi1_[k];
    add_into(response_.joint, sum_b_.joint);
    add_into(response_.part0, sum_b_.part0);
    add_into(response_.part1, sum_b_.part1);
  }

  static void add_into(const Matrix<double>& x, Matrix<double>& sum) {
    const auto src = x.entries();
    auto dst = sum.entries();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] += src[k];
  }

  // Multiplicative update followed by column normalization. The stored
  // weights are the normalized columns, which keeps them away from underflow
  // without changing the distribution.
  void update_block(std::vector<double>& w, const std::vector<double>& m, std::size_t rows,
                    std::size_t cols) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double factor = 1.0 - eps_ * m[k];
      if (!(factor > 0.0)) {
        throw InvariantViolation("mwum update", "weight became nonpositive; loss bound breached");
      }
      w[k] = std::max(w[k] * factor, std::numeric_limits<double>::min());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < rows; ++r) sum += w[r * cols + c];
      const double inv = 1.0 / sum;
      for (std::size_t r = 0; r < rows; ++r) w[r * cols + c] *= inv;
    }
  }

  void update() {
    update_block(a_, m_, na_, ns_);
    update_block(a0_, m0_, d_.a0, d_.s0);
    update_block(a1_, m1_, d_.a1, d_.s1);
  }

  const VerifierMatrix<double>& v_;
  SpaceDims d_;
  double eps_;
  SolverConfig config_;
  std::size_t na_ = 0, ns_ = 0, nb_ = 0, nt_ = 0;
  std::vector<double> a_, a0_, a1_;
  std::vector<double> pi0_, pi1_;
  std::vector<double> m_, m0_, m1_;
  std::vector<double> sum_a_, sum_a0_, sum_a1_, sum_pi0_, sum_pi1_;
  std::vector<double> p_alice_, p_alice0_, p_alice1_, p_bob_;
  bool bob_trivial_ = false;
  Matrix<double> s_, alice_view_, phi_b_;
  WitnessTriple<double> response_;
  WitnessTriple<double> sum_b_;
  std::unique_ptr<PolytopeOptimizer<double>> lp_oracle_;
  std::size_t rounds_ = 0;
  std::size_t violations_ = 0;
};

template <Scalar T>
VerifierMatrix<Rational> exact_verifier(const VerifierMatrix<T>& verifier) {
  if constexpr (kIsExact<T>) {
    return verifier;
  } else {
    return verifier.template convert<Rational>();
  }
}

}  // namespace detail

template <Scalar T>
SolveResult solve_equilibrium(const VerifierMatrix<T>& verifier, const SolverConfig& config) {
  const VerifierMatrix<double> v = [&] {
    if constexpr (kIsExact<T>) {
      return verifier.template convert<double>();
    } else {
      return verifier;
    }
  }();
  const std::size_t planned = iteration_count(config, v.dims().a01());
  detail::MwumEngine engine(v, config);

  SolveResult result;
  result.iterations_planned = planned;
  const std::size_t check_every = std::max<std::size_t>(1, (planned + 99) / 100);
  std::optional<VerifierMatrix<Rational>> exact;
  if (config.certify || config.early_exit) exact = detail::exact_verifier(verifier);

  double total = 0.0;
  if (config.record_trace) result.trace.reserve(planned);
  for (std::size_t t = 0; t < planned; ++t) {
    const double value = engine.step();
    total += value;
    if (config.record_trace) result.trace.push_back(value);
    if (config.early_exit && engine.rounds() % check_every == 0 && engine.rounds() < planned) {
      double ignored = 0.0;
      const auto a = detail::finish_triple<Rational>(engine.alice_average(), ignored).second;
      const auto b = detail::finish_triple<Rational>(engine.bob_average(), ignored).second;
      const Certificate c = certify(*exact, a->joint, b->joint);
      const Rational delta = from_double<Rational>(config.delta);
      if (c.gap_alice <= delta && c.gap_bob <= delta) break;
    }
  }
  result.iterations_run = engine.rounds();
  result.value_estimate = total / static_cast<double>(engine.rounds());
  result.loss_bound_violations = engine.loss_bound_violations();
  result.alice_average = engine.alice_average();
  result.response_average = engine.response_average();

  auto [alice, alice_exact] = detail::finish_triple<T>(result.alice_average, result.clamp_magnitude);
  auto [bob, bob_exact] = detail::finish_triple<T>(engine.bob_average(), result.clamp_magnitude);
  result.alice = std::move(alice);
  result.bob = std::move(bob);
  result.alice_exact = std::move(alice_exact);
  result.bob_exact = std::move(bob_exact);

  if (config.certify) {
    const WitnessTriple<Rational> a =
        result.alice_exact ? *result.alice_exact
                           : *detail::finish_triple<Rational>(result.alice, result.clamp_magnitude).second;
    const WitnessTriple<Rational> b =
        result.bob_exact ? *result.bob_exact
                         : *detail::finish_triple<Rational>(result.bob, result.clamp_magnitude).second;
    const Certificate c = certify(*exact, a.joint, b.joint);
    result.lambda = c.lambda;
    result.certified_gap_alice = c.gap_alice;
    result.certified_gap_bob = c.gap_bob;
  }
  return result;
}

struct Decision {
  bool yes_instance = false;
  double value_estimate = 0.0;  // estimated rejection probability
  double acceptance = 0.0;      // 1 - value_estimate
  double threshold = 0.0;       // (c + s) / 2 on the acceptance scale
  double delta = 0.0;
};

// Completeness c and soundness s are acceptance probabilities: a
// yes-instance has 1 - lambda(V) >= c, a no-instance 1 - lambda(V) <= s.
// Solving to accuracy (c - s) / 3 separates the two cases at the midpoint.
template <Scalar T>
Decision decide(const VerifierMatrix<T>& verifier, double completeness, double soundness,
                SolverConfig config = {}) {
  if (!(completeness > soundness)) throw DomainError("decide needs completeness > soundness");
  Decision out;
  out.delta = (completeness - soundness) / 3.0;
  config.delta = out.delta;
  config.epsilon.reset();
  config.iterations.reset();
  const SolveResult r = solve_equilibrium(verifier, config);
  out.value_estimate = r.value_estimate;
  out.acceptance = 1.0 - r.value_estimate;
  out.threshold = (completeness + soundness) / 2.0;
  out.yes_instance = out.acceptance >= out.threshold;
  return out;
}

}  // namespace nosig

#endif  // NOSIG_MWUM_HPP_
