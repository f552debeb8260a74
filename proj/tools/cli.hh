#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symne/arena.hh"

namespace symne::cli
{
  enum class verb
  {
    validate,
    find,
    check,
    general,
    desym,
    oracle,
    export_dot,
  };

  struct command
  {
    cli::verb verb = verb::validate;
    std::string game_path;
    std::optional<std::string> strategy_path;
    std::uint32_t memory = 1;
    std::optional<std::vector<player_id>> winners;
    std::optional<std::vector<player_id>> losers;
    std::uint64_t budget_nodes = 10'000'000;
    std::uint64_t budget_candidates = 1'000'000;
    std::optional<std::string> output;
    unsigned jobs = 1;
    // export-dot: also print the automaton of player 0's objective.
    bool buchi = false;
  };

  /// Bad command line.  `status` is 64, or 0 for an explicit --help;
  /// what() holds the text to show.
  class usage_error : public std::runtime_error
  {
  public:
    usage_error(const std::string& msg, int status = 64)
      : std::runtime_error(msg), status_(status)
    {
    }

    int status() const noexcept
    {
      return status_;
    }

  private:
    int status_;
  };

  /// `args` excludes the program name.
  command parse_args(const std::vector<std::string>& args);

  /// Runs a command.  Artifacts go to the output file, or to `out` when
  /// none is given; diagnostics go to `err`.
  int execute(const command& c, std::ostream& out, std::ostream& err);

  /// parse_args + execute with usage errors mapped to their status.
  int run(const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err);
}
