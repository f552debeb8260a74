#pragma once

#include <cstdint>
#include <optional>

#include "symne/network.hh"
#include "symne/solver.hh"

namespace symne
{
  /// Size limits of the brute-force oracle; beyond them it refuses with
  /// oracle_too_large.
  struct oracle_limits
  {
    std::uint64_t candidates = 64;
    std::uint64_t product_nodes = 256;
  };

  /// Independent reimplementation of find_symmetric_ne for tiny games.
  ///
  /// It materializes every candidate table, explores configurations with
  /// product_step, simulates outcomes on observation strings, builds each
  /// deviation product in full and decides Buchi emptiness with a nested
  /// fixpoint instead of component search.
  std::optional<solution> oracle_find(const game_network& g,
                                      const constraints& goal,
                                      std::uint32_t m,
                                      const oracle_limits& limits = {});

  /// Same, over profiles of independent per-player strategies.
  std::optional<solution> oracle_find_general(const game_network& g,
                                              const constraints& goal,
                                              std::uint32_t m,
                                              const oracle_limits& limits = {});
}
