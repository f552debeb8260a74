#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "symne/network.hh"
#include "symne/solver.hh"
#include "symne/strategy.hh"

namespace symne
{
  /// Game file:
  ///   { "arena": {"states": [...], "actions": [...],
  ///               "mov": {s: [a, ...]}, "tab": {s: {a: s'}},
  ///               "copies": {s: [base, c]} },          // copies optional
  ///     "players": n, "base_perms": [[...], ...],
  ///     "observation": [{"type": "id"|"count"|"copy", "players": [...]}],
  ///     "objective": "LTL", "initial": [...],
  ///     "winners": [...], "losers": [...] }              // both optional
  /// Unknown keys are rejected with malformed_input.
  raw_network game_from_json(const nlohmann::json& j);
  nlohmann::json game_to_json(const game_network& g);

  /// Reads and validates a game file.
  game_network load_game(const std::filesystem::path& path);

  /// Strategy witness:
  ///   { "memory": m, "initial": q0,
  ///     "table": { "q,obskey": {"act": a, "next": q'} } }
  nlohmann::json strategy_to_json(const moore_strategy& s, const arena& ar);
  moore_strategy strategy_from_json(const nlohmann::json& j, const arena& ar);

  nlohmann::json lasso_to_json(const lasso& w, const arena& ar);

  /// Symmetric solutions are the witness of sigma0 plus a "verdict" block;
  /// general ones carry "strategies" (one witness per player) instead.
  nlohmann::json solution_to_json(const solution& s, const arena& ar);

  /// A strategy or solution document; one strategy for symmetric
  /// witnesses and one per player for general ones.
  std::vector<moore_strategy> strategies_from_json(const nlohmann::json& j,
                                                   const arena& ar);

  /// Reads a strategy or solution file.
  std::vector<moore_strategy> load_strategies(const std::filesystem::path& p,
                                              const arena& ar);

  /// Canonical text of a JSON document (2-space indent, sorted keys,
  /// trailing newline).
  std::string dump(const nlohmann::json& j);
}
