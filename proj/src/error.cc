#include "symne/error.hh"

namespace symne
{
  const char* errc_name(errc code) noexcept
  {
    switch (code)
      {
      case errc::empty_move_set: return "EmptyMoveSet";
      case errc::partial_transition: return "PartialTransition";
      case errc::bad_permutation: return "BadPermutation";
      case errc::bad_initial: return "BadInitial";
      case errc::conflicting_constraints: return "ConflictingConstraints";
      case errc::index_out_of_range: return "IndexOutOfRange";
      case errc::illegal_move: return "IllegalMove";
      case errc::not_a_bijection: return "NotABijection";
      case errc::base_anchor_violated: return "BaseAnchorViolated";
      case errc::length_mismatch: return "LengthMismatch";
      case errc::no_uniform_action: return "NoUniformAction";
      case errc::undefined_key: return "UndefinedKey";
      case errc::syntax_error: return "SyntaxError";
      case errc::unknown_state: return "UnknownState";
      case errc::player_out_of_range: return "PlayerIndexOutOfRange";
      case errc::budget_exceeded: return "BudgetExceeded";
      case errc::oracle_too_large: return "OracleTooLarge";
      case errc::malformed_input: return "MalformedInput";
      case errc::io_error: return "IoError";
      }
    return "Unknown";
  }

  error::error(errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code)
  {
  }
}
