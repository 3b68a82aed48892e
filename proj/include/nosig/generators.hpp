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

// Game generators. Random games draw only raw 64-bit words from
// std::mt19937_64, never std distributions, so a seed yields the same game
// on every platform.

#ifndef NOSIG_GENERATORS_HPP_
#define NOSIG_GENERATORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nosig/game.hpp"
#include "nosig/scalar.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

namespace detail {

// Calls fn(tuple) for every (i0, i1, j0, j1, k0, k1, l0, l1) in
// lexicographic order.
inline void for_each_tuple(const SpaceDims& d,
                           const std::function<void(const std::array<std::size_t, 8>&)>& fn) {
  const std::array<std::size_t, 8> bound = d.as_array();
  std::array<std::size_t, 8> t{};
  while (true) {
    fn(t);
    std::size_t k = 8;
    while (k > 0) {
      --k;
      if (++t[k] < bound[k]) break;
      t[k] = 0;
      if (k == 0) return;
    }
  }
}

inline std::vector<QuestionWeight> uniform_questions(const SpaceDims& d) {
  std::vector<QuestionWeight> out;
  const Rational p(1, static_cast<unsigned long>(d.s01() * d.t01()));
  for (std::size_t i0 = 0; i0 < d.s0; ++i0)
    for (std::size_t i1 = 0; i1 < d.s1; ++i1)
      for (std::size_t j0 = 0; j0 < d.t0; ++j0)
        for (std::size_t j1 = 0; j1 < d.t1; ++j1) out.push_back({{i0, i1}, {j0, j1}, p});
  return out;
}

inline bool chsh_wins(std::size_t q0, std::size_t q1, std::size_t x0, std::size_t x1) {
  return ((x0 ^ x1) & 1U) == (q0 & q1 & 1U);
}

}  // namespace detail

// Team Alice trivial; Bob's provers play CHSH and the verifier rejects when
// they win: l0 xor l1 = j0 and j1, on uniform questions.
inline GameSpec chsh_game() {
  GameSpec g;
  g.dims = SpaceDims{1, 1, 2, 2, 1, 1, 2, 2};
  g.question_dist = detail::uniform_questions(g.dims);
  detail::for_each_tuple(g.dims, [&](const std::array<std::size_t, 8>& t) {
    if (detail::chsh_wins(t[2], t[3], t[6], t[7])) g.reject.push_back({t, Rational(1)});
  });
  g.name = "chsh";
  g.description = "Bob's provers play CHSH; rejection when they win";
  return g;
}

// All dims 2, uniform questions; rejects iff Bob wins CHSH and Alice loses.
inline GameSpec competing_chsh_game() {
  GameSpec g;
  g.dims = SpaceDims{2, 2, 2, 2, 2, 2, 2, 2};
  g.question_dist = detail::uniform_questions(g.dims);
  detail::for_each_tuple(g.dims, [&](const std::array<std::size_t, 8>& t) {
    if (detail::chsh_wins(t[2], t[3], t[6], t[7]) && !detail::chsh_wins(t[0], t[1], t[4], t[5])) {
      g.reject.push_back({t, Rational(1)});
    }
  });
  g.name = "competing-chsh";
  g.description = "rejects iff Bob's pair wins CHSH and Alice's pair loses it";
  return g;
}

inline GameSpec always_reject_game(const SpaceDims& d) {
  d.validate();
  GameSpec g;
  g.dims = d;
  g.question_dist = detail::uniform_questions(d);
  detail::for_each_tuple(d, [&](const std::array<std::size_t, 8>& t) {
    g.reject.push_back({t, Rational(1)});
  });
  g.name = "always-reject";
  g.description = "every outcome rejects";
  return g;
}

inline GameSpec never_reject_game(const SpaceDims& d) {
  d.validate();
  GameSpec g;
  g.dims = d;
  g.question_dist = detail::uniform_questions(d);
  g.name = "never-reject";
  g.description = "no outcome rejects";
  return g;
}

// Question weights are integers 1..8 normalized to a distribution; each
// outcome rejects independently with probability 1/2.
inline GameSpec random_game(const SpaceDims& d, std::uint64_t seed) {
  d.validate();
  std::mt19937_64 rng(seed);
  GameSpec g;
  g.dims = d;
  std::vector<unsigned long> weights;
  unsigned long total = 0;
  for (const QuestionWeight& q : detail::uniform_questions(d)) {
    const unsigned long w = 1 + static_cast<unsigned long>(rng() % 8);
    weights.push_back(w);
    total += w;
    g.question_dist.push_back({q.i, q.j, Rational(0)});
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    g.question_dist[k].p = ratio(static_cast<long>(weights[k]), static_cast<long>(total));
  }
  detail::for_each_tuple(d, [&](const std::array<std::size_t, 8>& t) {
    if ((rng() >> 63) != 0) g.reject.push_back({t, Rational(1)});
  });
  g.name = "random-" + std::to_string(seed);
  g.description = "random rejection pattern, seed " + std::to_string(seed);
  return g;
}

}  // namespace nosig

#endif  // NOSIG_GENERATORS_HPP_
