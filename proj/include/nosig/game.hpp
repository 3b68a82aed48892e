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

// Games between two teams of two provers, and the verifier-side linear maps.
//
// The verifier matrix V maps S01 (x) T01 to A01 (x) B01; its (i, j)th column
// is pi_{i,j} times the payout vector v_{i,j}, where a payout of 1 means the
// verifier rejects. Team Alice minimizes the rejection probability
// <V, A (x) B>, Team Bob maximizes it.

#ifndef NOSIG_GAME_HPP_
#define NOSIG_GAME_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/scalar.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

inline Space alice_questions(const SpaceDims& d) { return Space::of(d, {Factor::S0, Factor::S1}); }
inline Space alice_answers(const SpaceDims& d) { return Space::of(d, {Factor::A0, Factor::A1}); }
inline Space bob_questions(const SpaceDims& d) { return Space::of(d, {Factor::T0, Factor::T1}); }
inline Space bob_answers(const SpaceDims& d) { return Space::of(d, {Factor::B0, Factor::B1}); }

struct QuestionWeight {
  std::array<std::size_t, 2> i{};  // (i0, i1) to Team Alice
  std::array<std::size_t, 2> j{};  // (j0, j1) to Team Bob
  Rational p;

  bool operator==(const QuestionWeight&) const = default;
};

// A rejecting outcome (i0, i1, j0, j1, k0, k1, l0, l1). `weight` is the
// probability of rejection for probabilistic payouts.
struct RejectEntry {
  std::array<std::size_t, 8> tuple{};
  Rational weight{1};

  bool operator==(const RejectEntry&) const = default;
};

struct GameSpec {
  SpaceDims dims;
  std::vector<QuestionWeight> question_dist;
  std::vector<RejectEntry> reject;
  std::string name;
  std::string description;

  bool operator==(const GameSpec&) const = default;

  void validate() const {
    dims.validate();
    Rational total(0);
    std::set<std::array<std::size_t, 4>> seen;
    for (const QuestionWeight& q : question_dist) {
      if (q.i[0] >= dims.s0 || q.i[1] >= dims.s1 || q.j[0] >= dims.t0 || q.j[1] >= dims.t1) {
        throw DomainError("question index out of range");
      }
      if (q.p < 0) throw DomainError("negative question probability");
      if (!seen.insert({q.i[0], q.i[1], q.j[0], q.j[1]}).second) {
        throw DomainError("question pair listed twice");
      }
      total += q.p;
    }
    if (total != 1) {
      throw DomainError("question probabilities sum to " + format_rational(total) + ", not 1");
    }
    const std::array<std::size_t, 8> bound = {dims.s0, dims.s1, dims.t0, dims.t1,
                                              dims.a0, dims.a1, dims.b0, dims.b1};
    std::set<std::array<std::size_t, 8>> seen_reject;
    for (const RejectEntry& r : reject) {
      for (std::size_t k = 0; k < 8; ++k) {
        if (r.tuple[k] >= bound[k]) throw DomainError("reject tuple index out of range");
      }
      if (r.weight < 0 || r.weight > 1) throw DomainError("payout weight outside [0,1]");
      if (!seen_reject.insert(r.tuple).second) throw DomainError("reject tuple listed twice");
    }
  }
};

template <Scalar T>
class VerifierMatrix {
 public:
  VerifierMatrix() = default;

  // `question_probs` is indexed by i * dim(T01) + j.
  VerifierMatrix(SpaceDims dims, Matrix<T> v, std::vector<T> question_probs)
      : dims_(dims), v_(std::move(v)), p_(std::move(question_probs)) {
    dims_.validate();
    detail::require_shape(v_, alice_answers(dims_) * bob_answers(dims_),
                          alice_questions(dims_) * bob_questions(dims_), "verifier matrix");
    const std::size_t n_alice = dims_.s01();
    const std::size_t n_bob = dims_.t01();
    if (p_.size() != n_alice * n_bob) {
      throw StructuralError("question distribution has the wrong length");
    }
    T total(0);
    p_alice_.assign(n_alice, T(0));
    p_bob_.assign(n_bob, T(0));
    for (std::size_t i = 0; i < n_alice; ++i) {
      for (std::size_t j = 0; j < n_bob; ++j) {
        const T& pij = p_[i * n_bob + j];
        if (pij < 0) throw DomainError("negative question probability");
        total += pij;
        p_alice_[i] += pij;
        p_bob_[j] += pij;
      }
    }
    if constexpr (kIsExact<T>) {
      if (total != 1) throw DomainError("question probabilities do not sum to 1");
    } else {
      if (std::fabs(total - 1.0) > kStochasticTolerance) {
        throw DomainError("question probabilities do not sum to 1");
      }
    }
    const T slack = comparison_slack<T>(1e-12);
    for (std::size_t r = 0; r < v_.num_rows(); ++r) {
      for (std::size_t c = 0; c < v_.num_cols(); ++c) {
        if (v_(r, c) < 0) throw DomainError("verifier matrix has a negative entry");
        if (v_(r, c) > p_[c] + slack) {
          throw DomainError("verifier entry exceeds its question probability");
        }
      }
    }
  }

  const SpaceDims& dims() const { return dims_; }
  const Matrix<T>& matrix() const { return v_; }
  std::span<const T> p() const { return p_; }
  std::span<const T> p_alice() const { return p_alice_; }
  std::span<const T> p_bob() const { return p_bob_; }

  template <Scalar U>
  VerifierMatrix<U> convert() const {
    std::vector<U> p;
    for (const T& x : p_) {
      if constexpr (std::is_same_v<T, U>) {
        p.push_back(x);
      } else if constexpr (kIsExact<U>) {
        p.push_back(from_double<U>(x));
      } else {
        p.push_back(to_double(x));
      }
    }
    return VerifierMatrix<U>(dims_, v_.template convert<U>(), std::move(p));
  }

 private:
  SpaceDims dims_;
  Matrix<T> v_;
  std::vector<T> p_;
  std::vector<T> p_alice_;
  std::vector<T> p_bob_;
};

template <Scalar T>
VerifierMatrix<T> build_verifier(const GameSpec& spec) {
  spec.validate();
  const SpaceDims& d = spec.dims;
  const std::size_t n_bob_q = d.t01();
  const std::size_t n_bob_a = d.b01();
  std::vector<Rational> p(d.s01() * n_bob_q, Rational(0));
  for (const QuestionWeight& q : spec.question_dist) {
    p[(q.i[0] * d.s1 + q.i[1]) * n_bob_q + q.j[0] * d.t1 + q.j[1]] = q.p;
  }
  Matrix<T> v(alice_answers(d) * bob_answers(d), alice_questions(d) * bob_questions(d));
  for (const RejectEntry& r : spec.reject) {
    const auto& t = r.tuple;
    const std::size_t col = (t[0] * d.s1 + t[1]) * n_bob_q + t[2] * d.t1 + t[3];
    const std::size_t row = (t[4] * d.a1 + t[5]) * n_bob_a + t[6] * d.b1 + t[7];
    const Rational value = p[col] * r.weight;
    if constexpr (kIsExact<T>) {
      v(row, col) = value;
    } else {
      v(row, col) = value.get_d();
    }
  }
  std::vector<T> probs;
  probs.reserve(p.size());
  for (const Rational& x : p) {
    if constexpr (kIsExact<T>) {
      probs.push_back(x);
    } else {
      probs.push_back(x.get_d());
    }
  }
  return VerifierMatrix<T>(d, std::move(v), std::move(probs));
}

// Phi_V(A): T01 -> B01, defined by <V, A (x) B> = <Phi_V(A), B> for all B.
template <Scalar T>
void phi_into(const VerifierMatrix<T>& verifier, const Matrix<T>& a, Matrix<T>& out) {
  const SpaceDims& d = verifier.dims();
  detail::require_shape(a, alice_answers(d), alice_questions(d), "phi: Alice strategy");
  detail::require_shape(out, bob_answers(d), bob_questions(d), "phi: output");
  const Matrix<T>& v = verifier.matrix();
  const std::size_t nk = d.a01(), ni = d.s01(), nl = d.b01(), nj = d.t01();
  out.fill(T(0));
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t i = 0; i < ni; ++i) {
      const T& aki = a(k, i);
      if (aki == 0) continue;
      for (std::size_t l = 0; l < nl; ++l) {
        for (std::size_t j = 0; j < nj; ++j) {
          out(l, j) += v(k * nl + l, i * nj + j) * aki;
        }
      }
    }
  }
}

template <Scalar T>
Matrix<T> phi(const VerifierMatrix<T>& verifier, const Matrix<T>& a) {
  Matrix<T> out(bob_answers(verifier.dims()), bob_questions(verifier.dims()));
  phi_into(verifier, a, out);
  return out;
}

// Phi_V^*(B): S01 -> A01, defined by <A, Phi_V^*(B)> = <V, A (x) B> for all A.
template <Scalar T>
void phi_adjoint_into(const VerifierMatrix<T>& verifier, const Matrix<T>& b, Matrix<T>& out) {
  const SpaceDims& d = verifier.dims();
  detail::require_shape(b, bob_answers(d), bob_questions(d), "phi_adjoint: Bob strategy");
  detail::require_shape(out, alice_answers(d), alice_questions(d), "phi_adjoint: output");
  const Matrix<T>& v = verifier.matrix();
  const std::size_t nk = d.a01(), ni = d.s01(), nl = d.b01(), nj = d.t01();
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t i = 0; i < ni; ++i) {
      T sum(0);
      for (std::size_t l = 0; l < nl; ++l) {
        for (std::size_t j = 0; j < nj; ++j) {
          const T& blj = b(l, j);
          if (blj == 0) continue;
          sum += v(k * nl + l, i * nj + j) * blj;
        }
      }
      out(k, i) = sum;
    }
  }
}

template <Scalar T>
Matrix<T> phi_adjoint(const VerifierMatrix<T>& verifier, const Matrix<T>& b) {
  Matrix<T> out(alice_answers(verifier.dims()), alice_questions(verifier.dims()));
  phi_adjoint_into(verifier, b, out);
  return out;
}

// Rejection probability <V, A (x) B> for stochastic A and B.
template <Scalar T>
T payoff(const VerifierMatrix<T>& verifier, const Matrix<T>& a, const Matrix<T>& b) {
  require_stochastic(a, "payoff: Alice strategy");
  require_stochastic(b, "payoff: Bob strategy");
  return inner(phi(verifier, a), b);
}

// Team Alice's side of the relaxed problem: a strategy A: S01 -> A01 with
// purported witnesses A0: S0 -> A0 and A1: S1 -> A1. The same shape carries
// the loss matrices (M, M0, M1) of the multiplicative weights loop.
template <Scalar T>
struct AliceTriple {
  Matrix<T> joint;
  Matrix<T> part0;
  Matrix<T> part1;

  template <Scalar U>
  AliceTriple<U> convert() const {
    return {joint.template convert<U>(), part0.template convert<U>(),
            part1.template convert<U>()};
  }
};

// Team Bob's side: a strategy B: T01 -> B01 with penalty matrices
// Pi0: S01 -> A0 and Pi1: S01 -> A1. f_V maps Alice triples into this shape
// (Phi_V(A) and the two signaling defects).
// Strategy plus witnesses for either team.
template <Scalar T>
using WitnessTriple = AliceTriple<T>;

template <Scalar T>
struct BobTriple {
  Matrix<T> joint;
  Matrix<T> part0;
  Matrix<T> part1;
};

template <Scalar T>
T inner(const AliceTriple<T>& x, const AliceTriple<T>& y) {
  return inner(x.joint, y.joint) + inner(x.part0, y.part0) + inner(x.part1, y.part1);
}

template <Scalar T>
T inner(const BobTriple<T>& x, const BobTriple<T>& y) {
  return inner(x.joint, y.joint) + inner(x.part0, y.part0) + inner(x.part1, y.part1);
}

template <Scalar T>
AliceTriple<T> zero_alice_triple(const SpaceDims& d) {
  return {Matrix<T>(alice_answers(d), alice_questions(d)),
          Matrix<T>(Space::of(d, {Factor::A0}), Space::of(d, {Factor::S0})),
          Matrix<T>(Space::of(d, {Factor::A1}), Space::of(d, {Factor::S1}))};
}

template <Scalar T>
BobTriple<T> zero_bob_triple(const SpaceDims& d) {
  return {Matrix<T>(bob_answers(d), bob_questions(d)),
          Matrix<T>(Space::of(d, {Factor::A0}), alice_questions(d)),
          Matrix<T>(Space::of(d, {Factor::A1}), alice_questions(d))};
}

template <Scalar T>
void require_alice_shape(const SpaceDims& d, const AliceTriple<T>& x, const char* what) {
  detail::require_shape(x.joint, alice_answers(d), alice_questions(d), what);
  detail::require_shape(x.part0, Space::of(d, {Factor::A0}), Space::of(d, {Factor::S0}), what);
  detail::require_shape(x.part1, Space::of(d, {Factor::A1}), Space::of(d, {Factor::S1}), what);
}

template <Scalar T>
void require_bob_shape(const SpaceDims& d, const BobTriple<T>& y, const char* what) {
  detail::require_shape(y.joint, bob_answers(d), bob_questions(d), what);
  detail::require_shape(y.part0, Space::of(d, {Factor::A0}), alice_questions(d), what);
  detail::require_shape(y.part1, Space::of(d, {Factor::A1}), alice_questions(d), what);
}

// Signaling defects Delta_0 = marginal(A1, A) - A0 (x) e_{S1}^* and
// Delta_1 = marginal(A0, A) - A1 (x) e_{S0}^*.
//
// Team-agnostic: the answer factors are taken from the joint strategy's row
// space, so the same routine serves Bob-side strategies with witnesses.
template <Scalar T>
void signaling_defects_into(const AliceTriple<T>& x, Matrix<T>& delta0, Matrix<T>& delta1) {
  if (x.joint.rows().rank() != 2 || x.joint.cols().rank() != 2) {
    throw StructuralError("two-prover strategy expected");
  }
  marginal_into(x.joint.rows().tag(1), x.joint, delta0);
  marginal_into(x.joint.rows().tag(0), x.joint, delta1);
  const std::size_t s0 = x.part0.num_cols();
  const std::size_t s1 = x.part1.num_cols();
  if (x.joint.num_cols() != s0 * s1) throw StructuralError("witness question spaces mismatch");
  for (std::size_t i0 = 0; i0 < s0; ++i0) {
    for (std::size_t i1 = 0; i1 < s1; ++i1) {
      const std::size_t i = i0 * s1 + i1;
      for (std::size_t k0 = 0; k0 < delta0.num_rows(); ++k0) delta0(k0, i) -= x.part0(k0, i0);
      for (std::size_t k1 = 0; k1 < delta1.num_rows(); ++k1) delta1(k1, i) -= x.part1(k1, i1);
    }
  }
}

template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> signaling_defects(const AliceTriple<T>& x) {
  if (x.joint.rows().rank() != 2) throw StructuralError("two-prover strategy expected");
  const Space qs = x.joint.cols();
  Matrix<T> delta0(x.joint.rows().without(x.joint.rows().tag(1)), qs);
  Matrix<T> delta1(x.joint.rows().without(x.joint.rows().tag(0)), qs);
  signaling_defects_into(x, delta0, delta1);
  return {std::move(delta0), std::move(delta1)};
}

// f_V(A, A0, A1) = (Phi_V(A), Delta_0, Delta_1).
template <Scalar T>
BobTriple<T> f(const VerifierMatrix<T>& verifier, const AliceTriple<T>& x) {
  require_alice_shape(verifier.dims(), x, "f");
  BobTriple<T> out = zero_bob_triple<T>(verifier.dims());
  phi_into(verifier, x.joint, out.joint);
  signaling_defects_into(x, out.part0, out.part1);
  return out;
}

// f_V^*(B, Pi0, Pi1) = (Phi_V^*(B) + e_{A1} (x) Pi0 + e_{A0} (x) Pi1,
//                       -Pi0 (I_{S0} (x) e_{S1}), -Pi1 (e_{S0} (x) I_{S1})).
template <Scalar T>
void f_adjoint_into(const VerifierMatrix<T>& verifier, const BobTriple<T>& y,
                    AliceTriple<T>& out) {
  const SpaceDims& d = verifier.dims();
  require_bob_shape(d, y, "f_adjoint");
  require_alice_shape(d, out, "f_adjoint: output");
  phi_adjoint_into(verifier, y.joint, out.joint);
  const std::size_t ni = d.s01();
  for (std::size_t k0 = 0; k0 < d.a0; ++k0) {
    for (std::size_t k1 = 0; k1 < d.a1; ++k1) {
      const std::size_t k = k0 * d.a1 + k1;
      for (std::size_t i = 0; i < ni; ++i) {
        out.joint(k, i) += y.part0(k0, i);
        out.joint(k, i) += y.part1(k1, i);
      }
    }
  }
  out.part0.fill(T(0));
  out.part1.fill(T(0));
  for (std::size_t i0 = 0; i0 < d.s0; ++i0) {
    for (std::size_t i1 = 0; i1 < d.s1; ++i1) {
      const std::size_t i = i0 * d.s1 + i1;
      for (std::size_t k0 = 0; k0 < d.a0; ++k0) out.part0(k0, i0) -= y.part0(k0, i);
      for (std::size_t k1 = 0; k1 < d.a1; ++k1) out.part1(k1, i1) -= y.part1(k1, i);
    }
  }
}

template <Scalar T>
AliceTriple<T> f_adjoint(const VerifierMatrix<T>& verifier, const BobTriple<T>& y) {
  AliceTriple<T> out = zero_alice_triple<T>(verifier.dims());
  f_adjoint_into(verifier, y, out);
  return out;
}

// e_{A_c} p_Alice^*: the entrywise upper bound on penalty matrices.
template <Scalar T>
Matrix<T> penalty_bound(const VerifierMatrix<T>& verifier, Factor answer) {
  const SpaceDims& d = verifier.dims();
  Matrix<T> out(Space::of(d, {answer}), alice_questions(d));
  for (std::size_t r = 0; r < out.num_rows(); ++r) {
    for (std::size_t i = 0; i < out.num_cols(); ++i) out(r, i) = verifier.p_alice()[i];
  }
  return out;
}

}  // namespace nosig

#endif  // NOSIG_GAME_HPP_
