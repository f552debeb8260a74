#pragma once

#include <stdexcept>
#include <string>

namespace symne
{
  /// Failure categories raised by validation, parsing and search.
  enum class errc
  {
    empty_move_set,
    partial_transition,
    bad_permutation,
    bad_initial,
    conflicting_constraints,
    index_out_of_range,
    illegal_move,
    not_a_bijection,
    base_anchor_violated,
    length_mismatch,
    no_uniform_action,
    undefined_key,
    syntax_error,
    unknown_state,
    player_out_of_range,
    budget_exceeded,
    oracle_too_large,
    malformed_input,
    io_error,
  };

  const char* errc_name(errc code) noexcept;

  class error : public std::runtime_error
  {
  public:
    error(errc code, const std::string& what);

    errc code() const noexcept
    {
      return code_;
    }

  private:
    errc code_;
  };
}
