#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "symne/arena.hh"
#include "symne/permutation.hh"

namespace symne
{
  class symmetric_representation;

  enum class ltl_op : std::uint8_t
  {
    tt,
    ff,
    atom,
    lnot,
    land,
    lor,
    implies,
    next,
    eventually,
    always,
    until,
    release,
  };

  /// Immutable LTL formula over atoms at(k, s): "player k is in state s".
  ///
  /// Nodes are shared; copying a formula is cheap.  Equality is structural.
  class formula
  {
  public:
    static formula tt();
    static formula ff();
    static formula atom(player_id player, state_id state, std::string name);
    static formula unary(ltl_op op, formula arg);
    static formula binary(ltl_op op, formula lhs, formula rhs);

    formula();

    ltl_op op() const noexcept;
    player_id player() const;
    state_id state() const;
    const std::string& state_name() const;
    /// Operand of a unary node, left operand of a binary one.
    formula lhs() const;
    formula rhs() const;

    bool is_unary() const noexcept;
    bool is_binary() const noexcept;

    /// Fully parenthesized, re-parseable rendering.
    std::string to_string() const;

    bool operator==(const formula& other) const;

  private:
    struct node;
    explicit formula(std::shared_ptr<const node> n);
    std::shared_ptr<const node> node_;
  };

  formula operator!(formula f);
  formula operator&(formula a, formula b);
  formula operator|(formula a, formula b);

  /// Parses
  ///   f ::= at(k,s) | true | false | !f | f & f | f | f | f -> f
  ///       | X f | F f | G f | f U f | f R f | (f)
  /// with precedence unary > U,R > & > | > ->; U, R and -> associate to the
  /// right.  The state in at(k,s) is a bare identifier or a quoted string.
  formula parse(std::string_view src, const arena& ar, std::size_t players);

  /// Rebuilds f with every atom replaced by rewrite(player, state, name).
  formula map_atoms(const formula& f,
                    const std::function<formula(player_id, state_id,
                                                const std::string&)>& rewrite);

  /// Objective of player i: at(k,s) becomes at(pi_{0,i}(k), s).
  formula instantiate_for_player(const formula& objective, player_id i,
                                 const symmetric_representation& rep);

  /// Temporal nesting depth.
  std::size_t temporal_depth(const formula& f);

  /// Ultimately periodic word prefix . cycle^omega over configurations.
  struct lasso
  {
    std::vector<configuration> prefix;
    std::vector<configuration> cycle;

    std::size_t length() const noexcept
    {
      return prefix.size() + cycle.size();
    }

    /// Letter at position pos of the infinite word.
    const configuration& at(std::size_t pos) const;

    bool operator==(const lasso&) const = default;
  };

  /// Truth of f on the infinite word denoted by w (w.cycle non-empty).
  bool eval_lasso(const formula& f, const lasso& w);
}
