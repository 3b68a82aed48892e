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

// Dense matrices whose rows and columns are indexed by Kronecker products of
// the eight question/answer spaces, plus the handful of structured linear
// maps (Kronecker product, marginals and their adjoints) the solver needs.
//
// Index convention: a composite tuple (x0, x1, ..., xn) over spaces with
// dimensions (d0, d1, ..., dn) has index ((x0 * d1 + x1) * d2 + ...) * dn + xn,
// i.e. zero-based and left-factor-major. Entries are stored row-major.

#ifndef NOSIG_TENSOR_HPP_
#define NOSIG_TENSOR_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nosig/errors.hpp"
#include "nosig/scalar.hpp"

namespace nosig {

// The four question spaces and four answer spaces, in canonical order.
enum class Factor : std::uint8_t { S0, S1, T0, T1, A0, A1, B0, B1 };

inline constexpr std::array<Factor, 8> kAllFactors = {
    Factor::S0, Factor::S1, Factor::T0, Factor::T1,
    Factor::A0, Factor::A1, Factor::B0, Factor::B1};

inline const char* factor_name(Factor f) {
  static constexpr const char* kNames[] = {"S0", "S1", "T0", "T1",
                                           "A0", "A1", "B0", "B1"};
  const auto k = static_cast<std::size_t>(f);
  if (k >= 8) throw StructuralError("unknown space tag");
  return kNames[k];
}

// Dimensions of S0, S1, T0, T1, A0, A1, B0, B1.
struct SpaceDims {
  std::size_t s0 = 1, s1 = 1, t0 = 1, t1 = 1;
  std::size_t a0 = 1, a1 = 1, b0 = 1, b1 = 1;

  std::size_t operator[](Factor f) const {
    switch (f) {
      case Factor::S0: return s0;
      case Factor::S1: return s1;
      case Factor::T0: return t0;
      case Factor::T1: return t1;
      case Factor::A0: return a0;
      case Factor::A1: return a1;
      case Factor::B0: return b0;
      case Factor::B1: return b1;
    }
    throw StructuralError("unknown space tag");
  }

  std::array<std::size_t, 8> as_array() const {
    return {s0, s1, t0, t1, a0, a1, b0, b1};
  }

  static SpaceDims from_array(const std::array<std::size_t, 8>& d) {
    SpaceDims dims{d[0], d[1], d[2], d[3], d[4], d[5], d[6], d[7]};
    dims.validate();
    return dims;
  }

  void validate() const {
    for (std::size_t d : as_array()) {
      if (d == 0) throw StructuralError("every space dimension must be >= 1");
    }
  }

  std::size_t s01() const { return s0 * s1; }
  std::size_t t01() const { return t0 * t1; }
  std::size_t a01() const { return a0 * a1; }
  std::size_t b01() const { return b0 * b1; }

  // Dimensions seen from Team Bob's side: Bob becomes the first team.
  SpaceDims swapped_teams() const { return {t0, t1, s0, s1, b0, b1, a0, a1}; }

  bool alice_trivial() const { return s0 == 1 && s1 == 1 && a0 == 1 && a1 == 1; }
  bool bob_trivial() const { return t0 == 1 && t1 == 1 && b0 == 1 && b1 == 1; }

  bool operator==(const SpaceDims&) const = default;
};

// A Kronecker product of up to four tagged factors. The rank-0 space is the
// one-dimensional scalar space, used as the column space of vectors.
class Space {
 public:
  static constexpr std::size_t kMaxRank = 4;

  Space() = default;

  Space(std::initializer_list<std::pair<Factor, std::size_t>> factors) {
    for (const auto& [tag, dim] : factors) push_back(tag, dim);
  }

  static Space of(const SpaceDims& dims, std::initializer_list<Factor> tags) {
    Space s;
    for (Factor f : tags) s.push_back(f, dims[f]);
    return s;
  }

  std::size_t rank() const { return rank_; }

  std::size_t dim() const {
    std::size_t d = 1;
    for (std::size_t k = 0; k < rank_; ++k) d *= dims_[k];
    return d;
  }

  Factor tag(std::size_t pos) const { return tags_.at(pos); }
  std::size_t factor_dim(std::size_t pos) const { return dims_.at(pos); }

  bool contains(Factor f) const {
    return std::find(tags_.begin(), tags_.begin() + rank_, f) != tags_.begin() + rank_;
  }

  std::size_t position(Factor f) const {
    for (std::size_t k = 0; k < rank_; ++k) {
      if (tags_[k] == f) return k;
    }
    throw StructuralError(std::string("space ") + to_string() + " has no factor " +
                          factor_name(f));
  }

  Space without(Factor f) const {
    const std::size_t pos = position(f);
    Space s;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (k != pos) s.push_back(tags_[k], dims_[k]);
    }
    return s;
  }

  // Inserts a factor, keeping the canonical S0 < S1 < ... < B1 order.
  Space with(Factor f, std::size_t dim) const {
    if (contains(f)) {
      throw StructuralError(std::string("space already contains ") + factor_name(f));
    }
    Space s;
    bool placed = false;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (!placed && f < tags_[k]) {
        s.push_back(f, dim);
        placed = true;
      }
      s.push_back(tags_[k], dims_[k]);
    }
    if (!placed) s.push_back(f, dim);
    return s;
  }

  // Position `f` would occupy after `with(f, ...)`.
  std::size_t insertion_position(Factor f) const {
    std::size_t pos = 0;
    while (pos < rank_ && tags_[pos] < f) ++pos;
    return pos;
  }

  Space operator*(const Space& other) const {
    Space s = *this;
    for (std::size_t k = 0; k < other.rank_; ++k) s.push_back(other.tags_[k], other.dims_[k]);
    return s;
  }

  std::size_t encode(std::span<const std::size_t> digits) const {
    if (digits.size() != rank_) throw StructuralError("digit count does not match rank");
    std::size_t index = 0;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (digits[k] >= dims_[k]) throw StructuralError("index out of range");
      index = index * dims_[k] + digits[k];
    }
    return index;
  }

  void decode(std::size_t index, std::span<std::size_t> digits) const {
    if (digits.size() != rank_) throw StructuralError("digit count does not match rank");
    if (index >= dim()) throw StructuralError("index out of range");
    for (std::size_t k = rank_; k-- > 0;) {
      digits[k] = index % dims_[k];
      index /= dims_[k];
    }
  }

  // Product of the factor dimensions strictly before / after `pos`.
  std::size_t outer_size(std::size_t pos) const {
    std::size_t d = 1;
    for (std::size_t k = 0; k < pos; ++k) d *= dims_[k];
    return d;
  }
  std::size_t inner_size(std::size_t pos) const {
    std::size_t d = 1;
    for (std::size_t k = pos + 1; k < rank_; ++k) d *= dims_[k];
    return d;
  }

  std::string to_string() const {
    if (rank_ == 0) return "[]";
    std::string out = "[";
    for (std::size_t k = 0; k < rank_; ++k) {
      if (k) out += " x ";
      out += factor_name(tags_[k]);
      out += "(" + std::to_string(dims_[k]) + ")";
    }
    return out + "]";
  }

  bool operator==(const Space& other) const {
    if (rank_ != other.rank_) return false;
    for (std::size_t k = 0; k < rank_; ++k) {
      if (tags_[k] != other.tags_[k] || dims_[k] != other.dims_[k]) return false;
    }
    return true;
  }

 private:
  void push_back(Factor f, std::size_t dim) {
    if (rank_ == kMaxRank) throw StructuralError("space rank exceeds 4");
    if (dim == 0) throw StructuralError("space dimension must be >= 1");
    if (contains(f)) {
      throw StructuralError(std::string("duplicate factor ") + factor_name(f));
    }
    tags_[rank_] = f;
    dims_[rank_] = static_cast<std::uint32_t>(dim);
    ++rank_;
  }

  std::array<Factor, kMaxRank> tags_{};
  std::array<std::uint32_t, kMaxRank> dims_{};
  std::uint8_t rank_ = 0;
};

template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  Matrix(Space rows, Space cols)
      : rows_(rows), cols_(cols), entries_(rows.dim() * cols.dim(), T(0)) {}

  Matrix(Space rows, Space cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_.dim() * cols_.dim()) {
      throw StructuralError("entry count " + std::to_string(entries_.size()) +
                            " does not match shape " + rows_.to_string() + " <- " +
                            cols_.to_string());
    }
  }

  static Matrix filled(Space rows, Space cols, const T& value) {
    Matrix m(rows, cols);
    std::fill(m.entries_.begin(), m.entries_.end(), value);
    return m;
  }

  static Matrix identity(Space space) {
    Matrix m(space, space);
    for (std::size_t k = 0; k < space.dim(); ++k) m(k, k) = T(1);
    return m;
  }

  const Space& rows() const { return rows_; }
  const Space& cols() const { return cols_; }
  std::size_t num_rows() const { return rows_.dim(); }
  std::size_t num_cols() const { return cols_.dim(); }
  std::size_t size() const { return entries_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_.dim() + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_.dim() + c];
  }

  std::span<T> entries() { return entries_; }
  std::span<const T> entries() const { return entries_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  void fill(const T& value) { std::fill(entries_.begin(), entries_.end(), value); }

  template <Scalar U>
  Matrix<U> convert() const {
    std::vector<U> out;
    out.reserve(entries_.size());
    for (const T& x : entries_) {
      if constexpr (std::is_same_v<U, T>) {
        out.push_back(x);
      } else if constexpr (kIsExact<U>) {
        out.push_back(from_double<U>(x));
      } else {
        out.push_back(to_double(x));
      }
    }
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  bool operator==(const Matrix& other) const {
    return same_shape(other) && entries_ == other.entries_;
  }

 private:
  Space rows_;
  Space cols_;
  std::vector<T> entries_;
};

namespace detail {

template <Scalar T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw StructuralError(std::string(what) + ": shape mismatch " + a.rows().to_string() +
                          "<-" + a.cols().to_string() + " vs " + b.rows().to_string() +
                          "<-" + b.cols().to_string());
  }
}

template <Scalar T>
void require_shape(const Matrix<T>& m, const Space& rows, const Space& cols, const char* what) {
  if (!(m.rows() == rows) || !(m.cols() == cols)) {
    throw StructuralError(std::string(what) + ": expected " + rows.to_string() + "<-" +
                          cols.to_string() + ", got " + m.rows().to_string() + "<-" +
                          m.cols().to_string());
  }
}

}  // namespace detail

// (M (x) N)[(rM, rN), (cM, cN)] = M[rM, cM] * N[rN, cN].
template <Scalar T>
Matrix<T> kron(const Matrix<T>& m, const Matrix<T>& n) {
  Matrix<T> out(m.rows() * n.rows(), m.cols() * n.cols());
  const std::size_t nr = n.num_rows();
  const std::size_t nc = n.num_cols();
  for (std::size_t rm = 0; rm < m.num_rows(); ++rm) {
    for (std::size_t cm = 0; cm < m.num_cols(); ++cm) {
      const T& x = m(rm, cm);
      if (x == 0) continue;
      for (std::size_t rn = 0; rn < nr; ++rn) {
        for (std::size_t cn = 0; cn < nc; ++cn) {
          out(rm * nr + rn, cm * nc + cn) = x * n(rn, cn);
        }
      }
    }
  }
  return out;
}

// Row-side marginal: sums out the `over` factor of the row space, columnwise.
// `out` must already have shape rows().without(over) <- cols().
template <Scalar T>
void marginal_into(Factor over, const Matrix<T>& m, Matrix<T>& out) {
  const std::size_t pos = m.rows().position(over);
  detail::require_shape(out, m.rows().without(over), m.cols(), "marginal");
  const std::size_t outer = m.rows().outer_size(pos);
  const std::size_t d = m.rows().factor_dim(pos);
  const std::size_t inner = m.rows().inner_size(pos);
  const std::size_t cols = m.num_cols();
  out.fill(T(0));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t y = 0; y < d; ++y) {
      for (std::size_t r = 0; r < inner; ++r) {
        const std::size_t src = (o * d + y) * inner + r;
        const std::size_t dst = o * inner + r;
        for (std::size_t c = 0; c < cols; ++c) out(dst, c) += m(src, c);
      }
    }
  }
}

template <Scalar T>
Matrix<T> marginal(Factor over, const Matrix<T>& m) {
  Matrix<T> out(m.rows().without(over), m.cols());
  marginal_into(over, m, out);
  return out;
}

// Adjoint of `marginal(over, .)`: replicates every row entry across the
// inserted `over` factor.
template <Scalar T>
void marginal_adjoint_into(Factor over, std::size_t over_dim, const Matrix<T>& m,
                           Matrix<T>& out) {
  const Space expanded = m.rows().with(over, over_dim);
  detail::require_shape(out, expanded, m.cols(), "marginal_adjoint");
  const std::size_t pos = m.rows().insertion_position(over);
  const std::size_t outer = expanded.outer_size(pos);
  const std::size_t inner = expanded.inner_size(pos);
  const std::size_t cols = m.num_cols();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t y = 0; y < over_dim; ++y) {
      for (std::size_t r = 0; r < inner; ++r) {
        const std::size_t dst = (o * over_dim + y) * inner + r;
        const std::size_t src = o * inner + r;
        for (std::size_t c = 0; c < cols; ++c) out(dst, c) = m(src, c);
      }
    }
  }
}

template <Scalar T>
Matrix<T> marginal_adjoint(Factor over, std::size_t over_dim, const Matrix<T>& m) {
  Matrix<T> out(m.rows().with(over, over_dim), m.cols());
  marginal_adjoint_into(over, over_dim, m, out);
  return out;
}

// Column-side marginal: M (I (x) e_Y), i.e. column c of the output is the
// sum of the columns of M whose `over` index ranges over Y.
template <Scalar T>
void sum_columns_into(Factor over, const Matrix<T>& m, Matrix<T>& out) {
  const std::size_t pos = m.cols().position(over);
  detail::require_shape(out, m.rows(), m.cols().without(over), "sum_columns");
  const std::size_t outer = m.cols().outer_size(pos);
  const std::size_t d = m.cols().factor_dim(pos);
  const std::size_t inner = m.cols().inner_size(pos);
  out.fill(T(0));
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t y = 0; y < d; ++y) {
        for (std::size_t k = 0; k < inner; ++k) {
          out(r, o * inner + k) += m(r, (o * d + y) * inner + k);
        }
      }
    }
  }
}

template <Scalar T>
Matrix<T> sum_columns(Factor over, const Matrix<T>& m) {
  Matrix<T> out(m.rows(), m.cols().without(over));
  sum_columns_into(over, m, out);
  return out;
}

// M (x) e_Y^*: every column of M is repeated for each index of Y.
template <Scalar T>
void replicate_columns_into(Factor over, std::size_t over_dim, const Matrix<T>& m,
                            Matrix<T>& out) {
  const Space expanded = m.cols().with(over, over_dim);
  detail::require_shape(out, m.rows(), expanded, "replicate_columns");
  const std::size_t pos = m.cols().insertion_position(over);
  const std::size_t outer = expanded.outer_size(pos);
  const std::size_t inner = expanded.inner_size(pos);
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t y = 0; y < over_dim; ++y) {
        for (std::size_t k = 0; k < inner; ++k) {
          out(r, (o * over_dim + y) * inner + k) = m(r, o * inner + k);
        }
      }
    }
  }
}

template <Scalar T>
Matrix<T> replicate_columns(Factor over, std::size_t over_dim, const Matrix<T>& m) {
  Matrix<T> out(m.rows(), m.cols().with(over, over_dim));
  replicate_columns_into(over, over_dim, m, out);
  return out;
}

template <Scalar T>
Matrix<T> positive_part(const Matrix<T>& m) {
  Matrix<T> out = m;
  for (T& x : out.entries()) {
    if (x < 0) x = T(0);
  }
  return out;
}

// tr(A^* B).
template <Scalar T>
T inner(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "inner");
  T sum(0);
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) sum += ea[k] * eb[k];
  return sum;
}

template <Scalar T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "add");
  Matrix<T> out = a;
  auto eo = out.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < eo.size(); ++k) eo[k] += eb[k];
  return out;
}

template <Scalar T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_same_shape(a, b, "subtract");
  Matrix<T> out = a;
  auto eo = out.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < eo.size(); ++k) eo[k] -= eb[k];
  return out;
}

template <Scalar T>
Matrix<T> operator*(const T& s, const Matrix<T>& m) {
  Matrix<T> out = m;
  for (T& x : out.entries()) x *= s;
  return out;
}

template <Scalar T>
Matrix<T> operator-(const Matrix<T>& m) {
  Matrix<T> out = m;
  for (T& x : out.entries()) x = -x;
  return out;
}

template <Scalar T>
T min_entry(const Matrix<T>& m) {
  if (m.size() == 0) return T(0);
  return *std::min_element(m.entries().begin(), m.entries().end());
}

template <Scalar T>
T max_abs_entry(const Matrix<T>& m) {
  T best(0);
  for (const T& x : m.entries()) {
    T ax = abs_value(x);
    if (ax > best) best = ax;
  }
  return best;
}

template <Scalar T>
std::vector<T> column_sums(const Matrix<T>& m) {
  std::vector<T> sums(m.num_cols(), T(0));
  for (std::size_t r = 0; r < m.num_rows(); ++r) {
    for (std::size_t c = 0; c < m.num_cols(); ++c) sums[c] += m(r, c);
  }
  return sums;
}

// Nonnegative with unit column sums (exactly, or within kStochasticTolerance).
template <Scalar T>
bool is_stochastic(const Matrix<T>& m) {
  if (min_entry(m) < 0) return false;
  for (const T& s : column_sums(m)) {
    if constexpr (kIsExact<T>) {
      if (s != 1) return false;
    } else {
      if (std::fabs(s - 1.0) > kStochasticTolerance) return false;
    }
  }
  return true;
}

template <Scalar T>
void require_stochastic(const Matrix<T>& m, const std::string& what) {
  if (!is_stochastic(m)) throw DomainError(what + " is not column-stochastic");
}

// Divides every column by its sum; a zero column becomes uniform.
template <Scalar T>
void normalize_columns_in_place(Matrix<T>& w) {
  const std::size_t rows = w.num_rows();
  const std::size_t cols = w.num_cols();
  for (std::size_t c = 0; c < cols; ++c) {
    T sum(0);
    for (std::size_t r = 0; r < rows; ++r) {
      if (w(r, c) < 0) throw DomainError("normalize_columns: negative weight");
      sum += w(r, c);
    }
    if (sum == 0) {
      const T uniform = T(1) / T(static_cast<long>(rows));
      for (std::size_t r = 0; r < rows; ++r) w(r, c) = uniform;
    } else {
      for (std::size_t r = 0; r < rows; ++r) w(r, c) /= sum;
    }
  }
}

template <Scalar T>
Matrix<T> normalize_columns(const Matrix<T>& w) {
  Matrix<T> out = w;
  normalize_columns_in_place(out);
  return out;
}

}  // namespace nosig

#endif  // NOSIG_TENSOR_HPP_
