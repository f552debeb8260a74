#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "symne/ltl.hh"
#include "symne/network.hh"
#include "symne/strategy.hh"

namespace symne::testing
{
  std::filesystem::path fixture_path(const std::string& name);
  game_network fixture(const std::string& name);

  /// sigma0 over the symmetric key domain of g; rule(q, key) gives the
  /// action name and next memory.
  moore_strategy
  machine(const game_network& g, std::uint32_t m,
          const std::function<std::pair<std::string, std::uint32_t>(
            std::uint32_t, const std::string&)>& rule);

  moore_strategy
  memoryless(const game_network& g,
             const std::function<std::string(const std::string&)> rule);

  /// Builds a game from a string-level description, validating it.
  game_network network_from(const raw_network& raw);

  /// All of S^n for the arena, in odometer order.
  std::vector<configuration> all_configurations(const arena& ar,
                                                std::size_t n);

  /// Every lasso over `alphabet` with 1 <= |cycle| and |prefix|+|cycle| <=
  /// max_len.
  std::vector<lasso> all_lassos(const std::vector<configuration>& alphabet,
                                std::size_t max_len);

  /// Every sequence over `alphabet` of length 1..max_len.
  std::vector<std::vector<configuration>>
  all_histories(const std::vector<configuration>& alphabet,
                std::size_t max_len);

  /// Reference semantics: walks the unrolled lasso position by position.
  /// Shares nothing with eval_lasso.
  bool naive_eval(const formula& f, const lasso& w);

  /// Random objectives: temporal depth <= 2, at most 2 atom occurrences,
  /// connectives from F G X & | !.
  std::string random_formula(std::mt19937_64& rng, std::size_t n,
                             const std::vector<std::string>& states);

  struct random_shape
  {
    std::size_t min_states = 2;
    std::size_t max_states = 3;
    std::size_t max_actions = 2;
  };

  /// n = 2, swap symmetry, observation Id({0,1}), Id({0}) or Id({}).
  raw_network random_raw_network(std::mt19937_64& rng,
                                 const random_shape& shape = {});
}
