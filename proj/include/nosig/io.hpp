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

// JSON game and strategy files.
//
// Rationals are written as "num/den" strings. Floating strategy entries are
// written with 17 significant digits, which round-trips every double. The
// writers emit a canonical layout (one list item per line), so parsing and
// re-serializing a canonical file reproduces it byte for byte.
//
// Requires nlohmann/json (json.hpp) on the include path.

#ifndef NOSIG_IO_HPP_
#define NOSIG_IO_HPP_

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nosig/errors.hpp"
#include "nosig/exact_oracle.hpp"
#include "nosig/game.hpp"
#include "nosig/scalar.hpp"
#include "nosig/tensor.hpp"

namespace nosig {

namespace detail {

using Json = nlohmann::json;

inline Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline const Json& require_key(const Json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

inline std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

template <std::size_t N>
std::array<std::size_t, N> as_index_array(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(N) + " integers");
  }
  std::array<std::size_t, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = as_index(j[k], what);
  return out;
}

inline Rational as_rational(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(std::string(what) + ": expected a \"num/den\" string");
}

inline SpaceDims parse_dims(const Json& j) {
  const auto d = as_index_array<8>(j, "dims");
  try {
    return SpaceDims::from_array(d);
  } catch (const StructuralError& e) {
    throw ParseError(std::string("dims: ") + e.what());
  }
}

inline std::string compact(const Json& j) { return j.dump(); }

inline std::string dims_line(const SpaceDims& d) { return compact(Json(d.as_array())); }

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline GameSpec parse_game(const std::string& text) {
  using detail::Json;
  const Json doc = detail::parse_json(text, "game file");
  if (!doc.is_object()) throw ParseError("game file: expected an object");
  GameSpec g;
  g.dims = detail::parse_dims(detail::require_key(doc, "dims", "game file"));
  const Json& dist = detail::require_key(doc, "question_dist", "game file");
  if (!dist.is_array()) throw ParseError("question_dist: expected a list");
  for (const Json& q : dist) {
    QuestionWeight w;
    w.i = detail::as_index_array<2>(detail::require_key(q, "i", "question_dist"), "question_dist.i");
    w.j = detail::as_index_array<2>(detail::require_key(q, "j", "question_dist"), "question_dist.j");
    w.p = detail::as_rational(detail::require_key(q, "p", "question_dist"), "question_dist.p");
    g.question_dist.push_back(std::move(w));
  }
  const Json& reject = detail::require_key(doc, "reject", "game file");
  if (!reject.is_array()) throw ParseError("reject: expected a list");
  for (const Json& r : reject) {
    RejectEntry e;
    if (r.is_array()) {
      e.tuple = detail::as_index_array<8>(r, "reject");
    } else {
      e.tuple = detail::as_index_array<8>(detail::require_key(r, "t", "reject"), "reject.t");
      if (r.contains("w")) e.weight = detail::as_rational(r.at("w"), "reject.w");
    }
    g.reject.push_back(std::move(e));
  }
  if (doc.contains("meta")) {
    const Json& meta = doc.at("meta");
    if (!meta.is_object()) throw ParseError("meta: expected an object");
    if (meta.contains("name")) g.name = meta.at("name").get<std::string>();
    if (meta.contains("description")) g.description = meta.at("description").get<std::string>();
  }
  try {
    g.validate();
  } catch (const Error& e) {
    throw ParseError(std::string("game file: ") + e.what());
  }
  return g;
}

inline std::string serialize_game(const GameSpec& g) {
  using detail::Json;
  std::ostringstream out;
  out << "{\n  \"dims\": " << detail::dims_line(g.dims) << ",\n";
  if (!g.name.empty() || !g.description.empty()) {
    Json meta = Json::object();
    if (!g.name.empty()) meta["name"] = g.name;
    if (!g.description.empty()) meta["description"] = g.description;
    out << "  \"meta\": " << detail::compact(meta) << ",\n";
  }
  out << "  \"question_dist\": [";
  for (std::size_t k = 0; k < g.question_dist.size(); ++k) {
    const QuestionWeight& q = g.question_dist[k];
    Json item = Json::object();
    item["i"] = q.i;
    item["j"] = q.j;
    item["p"] = format_rational(q.p);
    out << (k == 0 ? "\n    " : ",\n    ") << detail::compact(item);
  }
  out << (g.question_dist.empty() ? "],\n" : "\n  ],\n");
  out << "  \"reject\": [";
  for (std::size_t k = 0; k < g.reject.size(); ++k) {
    const RejectEntry& r = g.reject[k];
    out << (k == 0 ? "\n    " : ",\n    ");
    if (r.weight == 1) {
      out << detail::compact(Json(r.tuple));
    } else {
      Json item = Json::object();
      item["t"] = r.tuple;
      item["w"] = format_rational(r.weight);
      out << detail::compact(item);
    }
  }
  out << (g.reject.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

// A strategy for one team, optionally with witness matrices. Entries are
// held as rationals; `exact` records whether the file used "num/den"
// strings or decimals, and the writer keeps that form.
struct StrategyFile {
  Side side = Side::kAlice;
  SpaceDims dims;
  bool exact = true;
  Matrix<Rational> matrix;
  std::optional<std::pair<Matrix<Rational>, Matrix<Rational>>> witnesses;

  Space answers() const { return side == Side::kAlice ? alice_answers(dims) : bob_answers(dims); }
  Space questions() const {
    return side == Side::kAlice ? alice_questions(dims) : bob_questions(dims);
  }
  Space answer_factor(std::size_t c) const { return Space{{answers().tag(c), answers().factor_dim(c)}}; }
  Space question_factor(std::size_t c) const {
    return Space{{questions().tag(c), questions().factor_dim(c)}};
  }

  Matrix<double> matrix_double() const { return matrix.convert<double>(); }

  WitnessTriple<Rational> triple() const {
    if (!witnesses) throw ParseError("strategy file has no witnesses");
    return {matrix, witnesses->first, witnesses->second};
  }
};

namespace detail {

inline bool entry_is_exact(const Json& x) { return x.is_string(); }

inline Matrix<Rational> parse_columns(const Json& j, const Space& rows, const Space& cols,
                                      std::optional<bool>& exact, const char* what) {
  if (!j.is_array() || j.size() != cols.dim()) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(cols.dim()) + " columns");
  }
  Matrix<Rational> m(rows, cols);
  for (std::size_t c = 0; c < cols.dim(); ++c) {
    const Json& col = j[c];
    if (!col.is_array() || col.size() != rows.dim()) {
      throw ParseError(std::string(what) + ": expected columns of length " +
                       std::to_string(rows.dim()));
    }
    for (std::size_t r = 0; r < rows.dim(); ++r) {
      const Json& x = col[r];
      const bool is_exact = entry_is_exact(x);
      if (!is_exact && !x.is_number()) throw ParseError(std::string(what) + ": bad entry");
      if (exact && *exact != is_exact) {
        throw ParseError(std::string(what) + ": mixes rational strings and decimals");
      }
      exact = is_exact;
      m(r, c) = is_exact ? parse_rational(x.get<std::string>()) : Rational(x.get<double>());
      if (m(r, c) < 0) throw ParseError(std::string(what) + ": negative entry");
    }
  }
  return m;
}

inline void require_columns_sum_to_one(const Matrix<Rational>& m, bool exact, const char* what) {
  for (const Rational& s : column_sums(m)) {
    const bool ok = exact ? s == 1 : std::fabs(s.get_d() - 1.0) <= kStochasticTolerance;
    if (!ok) throw ParseError(std::string(what) + ": column does not sum to 1");
  }
}

inline std::string columns_text(const Matrix<Rational>& m, bool exact, const char* indent) {
  std::ostringstream out;
  out << "[";
  for (std::size_t c = 0; c < m.num_cols(); ++c) {
    out << (c == 0 ? "\n" : ",\n") << indent << "  [";
    for (std::size_t r = 0; r < m.num_rows(); ++r) {
      if (r > 0) out << ", ";
      if (exact) {
        out << '"' << format_rational(m(r, c)) << '"';
      } else {
        out << format_double(m(r, c).get_d());
      }
    }
    out << "]";
  }
  out << "\n" << indent << "]";
  return out.str();
}

}  // namespace detail

inline StrategyFile parse_strategy(const std::string& text) {
  using detail::Json;
  const Json doc = detail::parse_json(text, "strategy file");
  if (!doc.is_object()) throw ParseError("strategy file: expected an object");
  StrategyFile s;
  const Json& side = detail::require_key(doc, "side", "strategy file");
  if (side == "alice") {
    s.side = Side::kAlice;
  } else if (side == "bob") {
    s.side = Side::kBob;
  } else {
    throw ParseError("strategy file: side must be \"alice\" or \"bob\"");
  }
  s.dims = detail::parse_dims(detail::require_key(doc, "dims", "strategy file"));
  std::optional<bool> exact;
  s.matrix = detail::parse_columns(detail::require_key(doc, "matrix", "strategy file"), s.answers(),
                                   s.questions(), exact, "matrix");
  if (doc.contains("witnesses")) {
    const Json& w = doc.at("witnesses");
    if (!w.is_array() || w.size() != 2) throw ParseError("witnesses: expected two matrices");
    Matrix<Rational> w0 = detail::parse_columns(w[0], s.answer_factor(0), s.question_factor(0),
                                                exact, "witnesses[0]");
    Matrix<Rational> w1 = detail::parse_columns(w[1], s.answer_factor(1), s.question_factor(1),
                                                exact, "witnesses[1]");
    s.witnesses.emplace(std::move(w0), std::move(w1));
  }
  s.exact = exact.value_or(true);
  detail::require_columns_sum_to_one(s.matrix, s.exact, "matrix");
  if (s.witnesses) {
    detail::require_columns_sum_to_one(s.witnesses->first, s.exact, "witnesses[0]");
    detail::require_columns_sum_to_one(s.witnesses->second, s.exact, "witnesses[1]");
  }
  return s;
}

inline std::string serialize_strategy(const StrategyFile& s) {
  std::ostringstream out;
  out << "{\n  \"side\": \"" << side_name(s.side) << "\",\n";
  out << "  \"dims\": " << detail::dims_line(s.dims) << ",\n";
  out << "  \"matrix\": " << detail::columns_text(s.matrix, s.exact, "  ");
  if (s.witnesses) {
    out << ",\n  \"witnesses\": [\n    "
        << detail::columns_text(s.witnesses->first, s.exact, "    ") << ",\n    "
        << detail::columns_text(s.witnesses->second, s.exact, "    ") << "\n  ]";
  }
  out << "\n}\n";
  return out.str();
}

inline StrategyFile make_strategy_file(Side side, const SpaceDims& dims,
                                       const WitnessTriple<Rational>& x, bool exact) {
  StrategyFile s;
  s.side = side;
  s.dims = dims;
  s.exact = exact;
  detail::require_shape(x.joint, s.answers(), s.questions(), "strategy file: matrix");
  s.matrix = x.joint;
  s.witnesses.emplace(x.part0, x.part1);
  return s;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace nosig

#endif  // NOSIG_IO_HPP_
