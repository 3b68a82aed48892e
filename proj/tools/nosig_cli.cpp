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

// nosig: command-line front end.
//
// Exit codes: 0 success or yes-instance, 1 no-instance or failed check,
// 2 input error, 3 internal invariant violation.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nosig/io.hpp"
#include "nosig/nosig.hpp"

namespace {

using nosig::Rational;
using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    nosig::write_text_file(path, text);
  }
}

nosig::SpaceDims parse_dims_flag(const std::string& text) {
  std::array<std::size_t, 8> d{};
  std::stringstream in(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(in, item, ',')) {
    if (k >= 8) throw nosig::ParseError("--dims takes eight comma-separated integers");
    try {
      const long v = std::stol(item);
      if (v < 1) throw nosig::ParseError("--dims entries must be >= 1");
      d[k++] = static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw nosig::ParseError("--dims: bad integer '" + item + "'");
    }
  }
  if (k != 8) throw nosig::ParseError("--dims takes eight comma-separated integers");
  return nosig::SpaceDims::from_array(d);
}

nosig::OracleKind parse_oracle(const std::string& name) {
  return name == "recursive" ? nosig::OracleKind::kRecursive : nosig::OracleKind::kExactLp;
}

nosig::VerifierMatrix<Rational> load_game(const std::string& path) {
  return nosig::build_verifier<Rational>(nosig::parse_game(nosig::read_text_file(path)));
}

Json rational_json(const Rational& q) {
  return Json{{"exact", nosig::format_rational(q)}, {"approx", q.get_d()}};
}

struct SolveArgs {
  std::string game;
  double delta = 0.1;
  std::string oracle = "exact-lp";
  bool certify = false;
  bool trace = false;
  bool early_exit = false;
  std::uint64_t seed = 0;
  std::string out = "solution";
};

int cmd_solve(const SolveArgs& a) {
  const auto v = load_game(a.game);
  nosig::SolverConfig config;
  config.delta = a.delta;
  config.oracle = parse_oracle(a.oracle);
  config.certify = a.certify;
  config.record_trace = a.trace;
  config.early_exit = a.early_exit;
  config.seed = a.seed;
  const nosig::SolveResult r = nosig::solve_equilibrium(v, config);

  emit(a.out + ".alice.json",
       nosig::serialize_strategy(nosig::make_strategy_file(nosig::Side::kAlice, v.dims(), *r.alice_exact, true)));
  emit(a.out + ".bob.json",
       nosig::serialize_strategy(nosig::make_strategy_file(nosig::Side::kBob, v.dims(), *r.bob_exact, true)));
  Json doc = {{"delta", a.delta},
              {"oracle", a.oracle},
              {"iterations_planned", r.iterations_planned},
              {"iterations_run", r.iterations_run},
              {"value_estimate", r.value_estimate},
              {"loss_bound_violations", r.loss_bound_violations}};
  if (r.lambda) {
    doc["lambda"] = rational_json(*r.lambda);
    doc["certified_gap_alice"] = rational_json(*r.certified_gap_alice);
    doc["certified_gap_bob"] = rational_json(*r.certified_gap_bob);
  }
  if (a.trace) doc["trace"] = r.trace;
  emit(a.out + ".result.json", doc.dump(2) + "\n");

  std::printf("value_estimate %.17g iterations %zu", r.value_estimate, r.iterations_run);
  if (r.lambda) {
    std::printf(" lambda %s gap_alice %.6g gap_bob %.6g", nosig::format_rational(*r.lambda).c_str(),
                r.certified_gap_alice->get_d(), r.certified_gap_bob->get_d());
  }
  std::printf("\n");
  return kExitOk;
}

int cmd_exact(const std::string& game, const std::string& out) {
  const auto v = load_game(game);
  const nosig::EquilibriumSolution<Rational> eq = nosig::lambda_exact(v);
  std::cout << nosig::format_rational(eq.value) << "\n";
  if (!out.empty()) {
    emit(out + ".alice.json",
         nosig::serialize_strategy(nosig::make_strategy_file(nosig::Side::kAlice, v.dims(), eq.alice, true)));
    emit(out + ".bob.json",
         nosig::serialize_strategy(nosig::make_strategy_file(nosig::Side::kBob, v.dims(), eq.bob, true)));
  }
  return kExitOk;
}

int cmd_check(const std::string& path, double tol) {
  const nosig::StrategyFile s = nosig::parse_strategy(nosig::read_text_file(path));
  double violation = 0.0;
  if (s.exact) {
    const auto c = nosig::check_no_signaling(s.matrix, Rational(0));
    violation = c.violation.get_d();
    std::cout << "violation " << nosig::format_rational(c.violation) << "\n";
  } else {
    violation = nosig::check_no_signaling(s.matrix_double(), tol).violation;
    std::printf("violation %.17g\n", violation);
  }
  return violation <= tol ? kExitOk : kExitNegative;
}

int cmd_round(const std::string& path, const std::string& out) {
  nosig::StrategyFile s = nosig::parse_strategy(nosig::read_text_file(path));
  if (!s.witnesses) throw nosig::ParseError("round needs a strategy file with witnesses");
  s.matrix = nosig::round_to_no_signaling(s.triple()).strategy;
  emit(out, nosig::serialize_strategy(s));
  return kExitOk;
}

int cmd_gen(const std::string& kind, std::uint64_t seed, const std::string& dims_text,
            const std::string& out) {
  nosig::GameSpec g;
  if (kind == "chsh") {
    g = nosig::chsh_game();
  } else if (kind == "competing-chsh") {
    g = nosig::competing_chsh_game();
  } else {
    const nosig::SpaceDims d = dims_text.empty() ? nosig::SpaceDims{2, 2, 2, 2, 2, 2, 2, 2}
                                                 : parse_dims_flag(dims_text);
    g = kind == "random" ? nosig::random_game(d, seed) : nosig::always_reject_game(d);
  }
  emit(out, nosig::serialize_game(g));
  return kExitOk;
}

int cmd_decide(const std::string& game, double c, double s, const std::string& oracle) {
  if (!(c > s)) throw nosig::ParseError("--completeness must exceed --soundness");
  const auto v = load_game(game);
  nosig::SolverConfig config;
  config.oracle = parse_oracle(oracle);
  const nosig::Decision d = nosig::decide(v, c, s, config);
  std::printf("%s acceptance %.6f threshold %.6f delta %.6g\n",
              d.yes_instance ? "yes-instance" : "no-instance", d.acceptance, d.threshold, d.delta);
  return d.yes_instance ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nosig: no-signaling equilibria of two-team refereed games"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate the equilibrium by multiplicative weights");
  solve_cmd->add_option("game", solve.game, "Game file")->required();
  solve_cmd->add_option("--delta", solve.delta, "Accuracy target")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--oracle", solve.oracle, "Best-response oracle")
      ->check(CLI::IsMember({"recursive", "exact-lp"}));
  solve_cmd->add_flag("--certify", solve.certify, "Certify both strategies with exact LPs");
  solve_cmd->add_flag("--trace", solve.trace, "Record the per-iteration objective");
  solve_cmd->add_flag("--early-exit", solve.early_exit, "Stop once both certified gaps are <= delta");
  solve_cmd->add_option("--seed", solve.seed, "Accepted for reproducible pipelines; the solver is deterministic");
  solve_cmd->add_option("--out", solve.out, "Output prefix for <prefix>.{alice,bob,result}.json");

  std::string exact_game, exact_out;
  auto* exact_cmd = app.add_subcommand("exact", "Exact equilibrium value by linear programming");
  exact_cmd->add_option("game", exact_game, "Game file")->required();
  exact_cmd->add_option("--out", exact_out, "Write optimal strategies to <prefix>.{alice,bob}.json");

  std::string check_path;
  double check_tol = 0.0;
  auto* check_cmd = app.add_subcommand("check", "Measure how far a strategy is from no-signaling");
  check_cmd->add_option("strategy", check_path, "Strategy file")->required();
  check_cmd->add_option("--tol", check_tol, "Largest violation accepted")->check(CLI::NonNegativeNumber);

  std::string round_path, round_out;
  auto* round_cmd = app.add_subcommand("round", "Round a strategy with witnesses to an exactly no-signaling one");
  round_cmd->add_option("strategy", round_path, "Strategy file with witnesses")->required();
  round_cmd->add_option("--out", round_out, "Output file (default: stdout)");

  std::string gen_kind, gen_dims, gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a game file");
  gen_cmd->add_option("kind", gen_kind, "Game family")
      ->required()
      ->check(CLI::IsMember({"chsh", "random", "competing-chsh", "always-reject"}));
  gen_cmd->add_option("--seed", gen_seed, "Seed for random games");
  gen_cmd->add_option("--dims", gen_dims, "s0,s1,t0,t1,a0,a1,b0,b1 (default all 2)");
  gen_cmd->add_option("--out", gen_out, "Output file (default: stdout)");

  std::string decide_game, decide_oracle = "exact-lp";
  double completeness = 0.0, soundness = 0.0;
  auto* decide_cmd = app.add_subcommand(
      "decide",
      "Decide a promise instance. V encodes rejection, so the game's acceptance probability is "
      "1 - lambda(V). Yes-instances have acceptance >= c, no-instances acceptance <= s. The solver "
      "runs with delta = (c - s) / 3 and answers yes-instance iff 1 - value_estimate >= (c + s) / 2.");
  decide_cmd->add_option("game", decide_game, "Game file")->required();
  decide_cmd->add_option("--completeness,-c", completeness, "Acceptance probability of yes-instances")->required();
  decide_cmd->add_option("--soundness,-s", soundness, "Acceptance probability of no-instances")->required();
  decide_cmd->add_option("--oracle", decide_oracle, "Best-response oracle")
      ->check(CLI::IsMember({"recursive", "exact-lp"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*exact_cmd) return cmd_exact(exact_game, exact_out);
    if (*check_cmd) return cmd_check(check_path, check_tol);
    if (*round_cmd) return cmd_round(round_path, round_out);
    if (*gen_cmd) return cmd_gen(gen_kind, gen_seed, gen_dims, gen_out);
    if (*decide_cmd) return cmd_decide(decide_game, completeness, soundness, decide_oracle);
  } catch (const nosig::InvariantViolation& e) {
    std::cerr << "nosig: invariant violation at stage '" << e.stage() << "': " << e.what() << "\n";
    return kExitInvariant;
  } catch (const nosig::Error& e) {
    std::cerr << "nosig: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
