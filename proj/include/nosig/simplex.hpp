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

// Dense two-phase primal simplex.
//
// Works in exact rational arithmetic (no tolerances anywhere) or in double
// precision with small pivoting tolerances. Pricing is Dantzig's rule; after
// a run of degenerate pivots it falls back to Bland's rule until the
// objective moves again, which rules out cycling.

#ifndef NOSIG_SIMPLEX_HPP_
#define NOSIG_SIMPLEX_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/scalar.hpp"

namespace nosig {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };
enum class Direction { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <Scalar T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  T objective{0};
  std::vector<T> values;
  std::size_t pivots = 0;
};

template <Scalar T>
class LinearProgram {
 public:
  struct Term {
    std::size_t var;
    T coef;
  };

  explicit LinearProgram(Direction direction = Direction::kMaximize) : direction_(direction) {}

  std::size_t add_variable(bool free = false) {
    free_.push_back(free);
    cost_.push_back(T(0));
    return free_.size() - 1;
  }

  // Returns the index of the first new variable.
  std::size_t add_variables(std::size_t count, bool free = false) {
    const std::size_t first = free_.size();
    for (std::size_t k = 0; k < count; ++k) add_variable(free);
    return first;
  }

  void set_cost(std::size_t var, const T& c) { cost_.at(var) = c; }
  void add_cost(std::size_t var, const T& c) { cost_.at(var) += c; }

  void add_constraint(std::vector<Term> terms, Sense sense, const T& rhs) {
    for (const Term& t : terms) {
      if (t.var >= free_.size()) throw StructuralError("constraint references unknown variable");
    }
    rows_.push_back({std::move(terms), sense, rhs});
  }

  void set_direction(Direction d) { direction_ = d; }

  std::size_t num_variables() const { return free_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  LpSolution<T> solve() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    T rhs;
  };

  Direction direction_;
  std::vector<bool> free_;
  std::vector<T> cost_;
  std::vector<Row> rows_;
};

namespace detail {

template <Scalar T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * (cols + 1), T(0)), obj_(cols + 1, T(0)), basis_(rows, 0) {}

  T& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  const T& at(std::size_t r, std::size_t c) const { return a_[r * (n_ + 1) + c]; }
  T& rhs(std::size_t r) { return at(r, n_); }

  static bool positive(const T& x) {
    if constexpr (kIsExact<T>) {
      return x > 0;
    } else {
      return x > 1e-9;
    }
  }
  static bool nonzero(const T& x) {
    if constexpr (kIsExact<T>) {
      return x != 0;
    } else {
      return x > 1e-9 || x < -1e-9;
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const std::size_t w = n_ + 1;
    T* pr = &a_[r * w];
    const T inv = T(1) / pr[e];
    for (std::size_t c = 0; c < w; ++c) {
      if (pr[c] != 0) pr[c] *= inv;
    }
    pr[e] = T(1);
    T tmp;
    auto eliminate = [&](T* row) {
      const T factor = row[e];
      if (factor == 0) return;
      for (std::size_t c = 0; c < w; ++c) {
        if (pr[c] == 0) continue;
        tmp = factor * pr[c];
        row[c] -= tmp;
      }
      row[e] = T(0);
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(&a_[i * w]);
    }
    eliminate(obj_.data());
    basis_[r] = e;
    ++pivots_;
  }

  // Sets the objective row to reduced costs of `cost` (maximization) for the
  // current basis. obj_[n] holds minus the current objective value.
  void price(const std::vector<T>& cost) {
    for (std::size_t c = 0; c <= n_; ++c) obj_[c] = c < n_ ? cost[c] : T(0);
    T tmp;
    for (std::size_t r = 0; r < m_; ++r) {
      const T& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c <= n_; ++c) {
        const T& x = at(r, c);
        if (x == 0) continue;
        tmp = cb * x;
        obj_[c] -= tmp;
      }
    }
  }

  // Runs primal simplex on the current objective row. Columns with
  // `eligible[c] == false` never enter. Returns false when unbounded.
  bool optimize(const std::vector<bool>& eligible) {
    std::size_t degenerate_run = 0;
    constexpr std::size_t kBlandAfter = 8;
    for (;;) {
      const bool bland = degenerate_run >= kBlandAfter;
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!eligible[c] || !positive(obj_[c])) continue;
        if (!enter) {
          enter = c;
          if (bland) break;
        } else if (obj_[c] > obj_[*enter]) {
          enter = c;
        }
      }
      if (!enter) return true;
      const std::size_t e = *enter;
      std::optional<std::size_t> leave;
      T best_ratio{};
      for (std::size_t r = 0; r < m_; ++r) {
        const T& x = at(r, e);
        if (!positive(x)) continue;
        T ratio = at(r, n_) / x;
        if (!leave || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      if (positive(best_ratio)) {
        degenerate_run = 0;
      } else {
        ++degenerate_run;
      }
      pivot(*leave, e);
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const T& objective_entry(std::size_t c) const { return obj_[c]; }
  std::size_t pivots() const { return pivots_; }

  void drop_row(std::size_t r) {
    const std::size_t w = n_ + 1;
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * w),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<T> a_;
  std::vector<T> obj_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

template <Scalar T>
LpSolution<T> LinearProgram<T>::solve() const {
  // Column layout: structural columns (free variables take two), then one
  // slack/surplus per inequality, then artificials.
  const std::size_t nvars = free_.size();
  std::vector<std::size_t> plus_col(nvars), minus_col(nvars, std::numeric_limits<std::size_t>::max());
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    plus_col[v] = ncols++;
    if (free_[v]) minus_col[v] = ncols++;
  }
  std::vector<std::size_t> slack_col(rows_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].sense != Sense::kEqual) slack_col[r] = ncols++;
  }
  const std::size_t before_artificial = ncols;

  // Decide which rows need an artificial: after making rhs >= 0, a row whose
  // slack has coefficient +1 can start with the slack basic.
  const std::size_t m = rows_.size();
  std::vector<bool> negate(m, false), needs_artificial(m, true);
  for (std::size_t r = 0; r < m; ++r) {
    negate[r] = rows_[r].rhs < 0;
    if (rows_[r].sense == Sense::kLessEqual && !negate[r]) needs_artificial[r] = false;
    if (rows_[r].sense == Sense::kGreaterEqual && negate[r]) needs_artificial[r] = false;
  }
  std::vector<std::size_t> art_col(m, std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < m; ++r) {
    if (needs_artificial[r]) art_col[r] = ncols++;
  }

  detail::Tableau<T> tab(m, ncols);
  for (std::size_t r = 0; r < m; ++r) {
    const Row& row = rows_[r];
    const T sign = negate[r] ? T(-1) : T(1);
    for (const Term& t : row.terms) {
      tab.at(r, plus_col[t.var]) += sign * t.coef;
      if (free_[t.var]) tab.at(r, minus_col[t.var]) -= sign * t.coef;
    }
    if (row.sense == Sense::kLessEqual) tab.at(r, slack_col[r]) = sign;
    if (row.sense == Sense::kGreaterEqual) tab.at(r, slack_col[r]) = -sign;
    tab.rhs(r) = sign * row.rhs;
    if (needs_artificial[r]) {
      tab.at(r, art_col[r]) = T(1);
      tab.basis()[r] = art_col[r];
    } else {
      tab.basis()[r] = slack_col[r];
    }
  }

  LpSolution<T> result;
  std::vector<bool> eligible(ncols, true);

  // Phase 1: maximize -(sum of artificials).
  std::vector<T> phase1_cost(ncols, T(0));
  bool any_artificial = false;
  for (std::size_t r = 0; r < m; ++r) {
    if (needs_artificial[r]) {
      phase1_cost[art_col[r]] = T(-1);
      any_artificial = true;
    }
  }
  if (any_artificial) {
    tab.price(phase1_cost);
    tab.optimize(eligible);
    // obj[n] = -value; value = -(sum of artificials) must reach 0.
    const T infeasibility = tab.objective_entry(ncols);
    if (detail::Tableau<T>::positive(infeasibility) || detail::Tableau<T>::positive(-infeasibility)) {
      result.status = LpStatus::kInfeasible;
      result.pivots = tab.pivots();
      return result;
    }
    // Drive artificials out of the basis; rows where that is impossible are
    // redundant and dropped.
    for (std::size_t r = tab.rows(); r-- > 0;) {
      if (tab.basis()[r] < before_artificial) continue;
      std::optional<std::size_t> replacement;
      for (std::size_t c = 0; c < before_artificial; ++c) {
        if (detail::Tableau<T>::nonzero(tab.at(r, c))) {
          replacement = c;
          break;
        }
      }
      if (replacement) {
        tab.pivot(r, *replacement);
      } else {
        tab.drop_row(r);
      }
    }
    for (std::size_t c = before_artificial; c < ncols; ++c) eligible[c] = false;
  }

  // Phase 2.
  std::vector<T> cost(ncols, T(0));
  const T dir = direction_ == Direction::kMaximize ? T(1) : T(-1);
  for (std::size_t v = 0; v < nvars; ++v) {
    cost[plus_col[v]] = dir * cost_[v];
    if (free_[v]) cost[minus_col[v]] = -dir * cost_[v];
  }
  tab.price(cost);
  if (!tab.optimize(eligible)) {
    result.status = LpStatus::kUnbounded;
    result.pivots = tab.pivots();
    return result;
  }

  std::vector<T> column_value(ncols, T(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) column_value[tab.basis()[r]] = tab.at(r, ncols);
  result.values.assign(nvars, T(0));
  for (std::size_t v = 0; v < nvars; ++v) {
    result.values[v] = column_value[plus_col[v]];
    if (free_[v]) result.values[v] -= column_value[minus_col[v]];
  }
  T objective(0);
  for (std::size_t v = 0; v < nvars; ++v) objective += cost_[v] * result.values[v];
  result.objective = objective;
  result.status = LpStatus::kOptimal;
  result.pivots = tab.pivots();
  return result;
}

}  // namespace nosig

#endif  // NOSIG_SIMPLEX_HPP_
