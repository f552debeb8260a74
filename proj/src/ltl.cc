#include "symne/ltl.hh"

#include <cctype>

#include "symne/error.hh"
#include "symne/symmetry.hh"

namespace symne
{
  struct formula::node
  {
    ltl_op op;
    player_id player = 0;
    state_id state = 0;
    std::string name;
    std::shared_ptr<const node> lhs;
    std::shared_ptr<const node> rhs;
  };

  formula::formula()
    : formula(tt())
  {
  }

  formula::formula(std::shared_ptr<const node> n)
    : node_(std::move(n))
  {
  }

  formula formula::tt()
  {
    static const auto n =
      std::shared_ptr<const node>(new node{ltl_op::tt, 0, 0, {}, nullptr, nullptr});
    return formula(n);
  }

  formula formula::ff()
  {
    static const auto n =
      std::shared_ptr<const node>(new node{ltl_op::ff, 0, 0, {}, nullptr, nullptr});
    return formula(n);
  }

  formula formula::atom(player_id player, state_id state, std::string name)
  {
    return formula(std::make_shared<const node>(
        node{ltl_op::atom, player, state, std::move(name), nullptr, nullptr}));
  }

  formula formula::unary(ltl_op op, formula arg)
  {
    return formula(std::make_shared<const node>(
        node{op, 0, 0, {}, std::move(arg.node_), nullptr}));
  }

  formula formula::binary(ltl_op op, formula lhs, formula rhs)
  {
    return formula(std::make_shared<const node>(
        node{op, 0, 0, {}, std::move(lhs.node_), std::move(rhs.node_)}));
  }

  ltl_op formula::op() const noexcept
  {
    return node_->op;
  }

  player_id formula::player() const
  {
    return node_->player;
  }

  state_id formula::state() const
  {
    return node_->state;
  }

  const std::string& formula::state_name() const
  {
    return node_->name;
  }

  formula formula::lhs() const
  {
    return formula(node_->lhs);
  }

  formula formula::rhs() const
  {
    return formula(node_->rhs);
  }

  bool formula::is_unary() const noexcept
  {
    switch (op())
      {
      case ltl_op::lnot:
      case ltl_op::next:
      case ltl_op::eventually:
      case ltl_op::always:
        return true;
      default:
        return false;
      }
  }

  bool formula::is_binary() const noexcept
  {
    switch (op())
      {
      case ltl_op::land:
      case ltl_op::lor:
      case ltl_op::implies:
      case ltl_op::until:
      case ltl_op::release:
        return true;
      default:
        return false;
      }
  }

  bool formula::operator==(const formula& other) const
  {
    if (node_ == other.node_)
      return true;
    if (op() != other.op())
      return false;
    if (op() == ltl_op::atom)
      return player() == other.player() && state() == other.state();
    if (is_unary())
      return lhs() == other.lhs();
    if (is_binary())
      return lhs() == other.lhs() && rhs() == other.rhs();
    return true;
  }

  namespace
  {
    bool bare_identifier(const std::string& s)
    {
      if (s.empty())
        return false;
      for (char c: s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          return false;
      return true;
    }

    std::string quote(const std::string& s)
    {
      std::string out = "\"";
      for (char c: s)
        {
          if (c == '"' || c == '\\')
            out += '\\';
          out += c;
        }
      return out + '"';
    }

    const char* symbol(ltl_op op)
    {
      switch (op)
        {
        case ltl_op::lnot: return "!";
        case ltl_op::next: return "X ";
        case ltl_op::eventually: return "F ";
        case ltl_op::always: return "G ";
        case ltl_op::land: return " & ";
        case ltl_op::lor: return " | ";
        case ltl_op::implies: return " -> ";
        case ltl_op::until: return " U ";
        case ltl_op::release: return " R ";
        default: return "?";
        }
    }
  }

  std::string formula::to_string() const
  {
    switch (op())
      {
      case ltl_op::tt:
        return "true";
      case ltl_op::ff:
        return "false";
      case ltl_op::atom:
        return "at(" + std::to_string(player()) + ","
          + (bare_identifier(state_name()) ? state_name()
                                           : quote(state_name()))
          + ")";
      default:
        break;
      }
    if (is_unary())
      return symbol(op()) + lhs().to_string();
    return "(" + lhs().to_string() + symbol(op()) + rhs().to_string() + ")";
  }

  formula operator!(formula f)
  {
    return formula::unary(ltl_op::lnot, std::move(f));
  }

  formula operator&(formula a, formula b)
  {
    return formula::binary(ltl_op::land, std::move(a), std::move(b));
  }

  formula operator|(formula a, formula b)
  {
    return formula::binary(ltl_op::lor, std::move(a), std::move(b));
  }

  // Parser

  namespace
  {
    class parser
    {
    public:
      parser(std::string_view src, const arena& ar, std::size_t players)
        : src_(src), arena_(ar), players_(players)
      {
      }

      formula run()
      {
        formula f = implication();
        skip_space();
        if (pos_ != src_.size())
          fail("unexpected trailing input");
        return f;
      }

    private:
      [[noreturn]] void fail(const std::string& what) const
      {
        throw error(errc::syntax_error, "at position " + std::to_string(pos_)
                    + ": " + what);
      }

      void skip_space()
      {
        while (pos_ < src_.size()
               && std::isspace(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
      }

      bool eat(std::string_view tok)
      {
        skip_space();
        if (src_.substr(pos_, tok.size()) != tok)
          return false;
        pos_ += tok.size();
        return true;
      }

      static bool word_char(char c)
      {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      }

      std::string_view peek_word()
      {
        skip_space();
        std::size_t end = pos_;
        while (end < src_.size() && word_char(src_[end]))
          ++end;
        return src_.substr(pos_, end - pos_);
      }

      bool eat_word(std::string_view w)
      {
        if (peek_word() != w)
          return false;
        pos_ += w.size();
        return true;
      }

      formula implication()
      {
        formula lhs = disjunction();
        if (eat("->"))
          return formula::binary(ltl_op::implies, lhs, implication());
        return lhs;
      }

      formula disjunction()
      {
        formula f = conjunction();
        for (;;)
          {
            skip_space();
            if (eat("||") || eat("|"))
              f = f | conjunction();
            else
              return f;
          }
      }

      formula conjunction()
      {
        formula f = binary_temporal();
        for (;;)
          {
            if (eat("&&") || eat("&"))
              f = f & binary_temporal();
            else
              return f;
          }
      }

      formula binary_temporal()
      {
        formula lhs = prefixed();
        if (eat_word("U"))
          return formula::binary(ltl_op::until, lhs, binary_temporal());
        if (eat_word("R"))
          return formula::binary(ltl_op::release, lhs, binary_temporal());
        return lhs;
      }

      formula prefixed()
      {
        if (eat("!"))
          return !prefixed();
        if (eat_word("X"))
          return formula::unary(ltl_op::next, prefixed());
        if (eat_word("F"))
          return formula::unary(ltl_op::eventually, prefixed());
        if (eat_word("G"))
          return formula::unary(ltl_op::always, prefixed());
        return primary();
      }

      formula primary()
      {
        skip_space();
        if (eat("("))
          {
            formula f = implication();
            if (!eat(")"))
              fail("expected ')'");
            return f;
          }
        if (eat_word("true"))
          return formula::tt();
        if (eat_word("false"))
          return formula::ff();
        if (eat_word("at"))
          return atom();
        if (pos_ >= src_.size())
          fail("unexpected end of input");
        fail("unexpected '" + std::string(1, src_[pos_]) + "'");
      }

      formula atom()
      {
        if (!eat("("))
          fail("expected '(' after 'at'");
        skip_space();
        std::size_t start = pos_;
        while (pos_ < src_.size()
               && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          ++pos_;
        if (start == pos_)
          fail("expected player index");
        std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 9 || std::stoul(digits) >= players_)
          throw error(errc::player_out_of_range,
                      "player " + digits + " in formula, but the network has "
                      + std::to_string(players_) + " players");
        auto player = static_cast<player_id>(std::stoul(digits));
        if (!eat(","))
          fail("expected ',' in atom");
        skip_space();
        std::string name;
        if (pos_ < src_.size() && src_[pos_] == '"')
          {
            ++pos_;
            for (;;)
              {
                if (pos_ >= src_.size())
                  fail("unterminated string");
                char c = src_[pos_++];
                if (c == '"')
                  break;
                if (c == '\\')
                  {
                    if (pos_ >= src_.size())
                      fail("unterminated string");
                    c = src_[pos_++];
                  }
                name += c;
              }
          }
        else
          {
            name = std::string(peek_word());
            if (name.empty())
              fail("expected state identifier");
            pos_ += name.size();
          }
        if (!eat(")"))
          fail("expected ')' after atom");
        auto s = arena_.find_state(name);
        if (!s)
          throw error(errc::unknown_state, "'" + name + "' in formula");
        return formula::atom(player, *s, name);
      }

      std::string_view src_;
      std::size_t pos_ = 0;
      const arena& arena_;
      std::size_t players_;
    };
  }

  formula parse(std::string_view src, const arena& ar, std::size_t players)
  {
    return parser(src, ar, players).run();
  }

  formula map_atoms(const formula& f,
                    const std::function<formula(player_id, state_id,
                                                const std::string&)>& rewrite)
  {
    if (f.op() == ltl_op::atom)
      return rewrite(f.player(), f.state(), f.state_name());
    if (f.is_unary())
      return formula::unary(f.op(), map_atoms(f.lhs(), rewrite));
    if (f.is_binary())
      return formula::binary(f.op(), map_atoms(f.lhs(), rewrite),
                             map_atoms(f.rhs(), rewrite));
    return f;
  }

  formula instantiate_for_player(const formula& objective, player_id i,
                                 const symmetric_representation& rep)
  {
    const permutation& to_i = rep(0, i);
    return map_atoms(objective,
                     [&](player_id k, state_id s, const std::string& name) {
                       return formula::atom(to_i(k), s, name);
                     });
  }

  std::size_t temporal_depth(const formula& f)
  {
    switch (f.op())
      {
      case ltl_op::next:
      case ltl_op::eventually:
      case ltl_op::always:
        return 1 + temporal_depth(f.lhs());
      case ltl_op::until:
      case ltl_op::release:
        return 1 + std::max(temporal_depth(f.lhs()), temporal_depth(f.rhs()));
      case ltl_op::lnot:
        return temporal_depth(f.lhs());
      case ltl_op::land:
      case ltl_op::lor:
      case ltl_op::implies:
        return std::max(temporal_depth(f.lhs()), temporal_depth(f.rhs()));
      default:
        return 0;
      }
  }

  // Lasso evaluation

  const configuration& lasso::at(std::size_t pos) const
  {
    if (pos < prefix.size())
      return prefix[pos];
    return cycle.at((pos - prefix.size()) % cycle.size());
  }

  namespace
  {
    using truth = std::vector<bool>;

    class lasso_evaluator
    {
    public:
      explicit lasso_evaluator(const lasso& w)
        : w_(w), len_(w.length())
      {
      }

      truth eval(const formula& f) const
      {
        switch (f.op())
          {
          case ltl_op::tt:
            return truth(len_, true);
          case ltl_op::ff:
            return truth(len_, false);
          case ltl_op::atom:
            {
              truth v(len_);
              for (std::size_t p = 0; p < len_; ++p)
                v[p] = w_.at(p).at(f.player()) == f.state();
              return v;
            }
          case ltl_op::lnot:
            {
              truth v = eval(f.lhs());
              v.flip();
              return v;
            }
          case ltl_op::land:
          case ltl_op::lor:
          case ltl_op::implies:
            {
              truth a = eval(f.lhs());
              truth b = eval(f.rhs());
              for (std::size_t p = 0; p < len_; ++p)
                a[p] = f.op() == ltl_op::land ? a[p] && b[p]
                  : f.op() == ltl_op::lor ? a[p] || b[p]
                  : !a[p] || b[p];
              return a;
            }
          case ltl_op::next:
            {
              truth a = eval(f.lhs());
              truth v(len_);
              for (std::size_t p = 0; p < len_; ++p)
                v[p] = a[succ(p)];
              return v;
            }
          case ltl_op::eventually:
            return until(truth(len_, true), eval(f.lhs()));
          case ltl_op::always:
            return release(truth(len_, false), eval(f.lhs()));
          case ltl_op::until:
            return until(eval(f.lhs()), eval(f.rhs()));
          case ltl_op::release:
            return release(eval(f.lhs()), eval(f.rhs()));
          }
        return truth(len_, false);
      }

    private:
      std::size_t succ(std::size_t p) const
      {
        return p + 1 < len_ ? p + 1 : w_.prefix.size();
      }

      // Least fixpoint of v = hold | (keep & X v).
      truth until(const truth& keep, const truth& hold) const
      {
        truth v = hold;
        for (bool changed = true; changed;)
          {
            changed = false;
            for (std::size_t p = len_; p-- > 0;)
              if (!v[p] && keep[p] && v[succ(p)])
                v[p] = changed = true;
          }
        return v;
      }

      // Greatest fixpoint of v = hold & (stop | X v).
      truth release(const truth& stop, const truth& hold) const
      {
        truth v = hold;
        for (bool changed = true; changed;)
          {
            changed = false;
            for (std::size_t p = len_; p-- > 0;)
              if (v[p] && !stop[p] && !v[succ(p)])
                {
                  v[p] = false;
                  changed = true;
                }
          }
        return v;
      }

      const lasso& w_;
      std::size_t len_;
    };
  }

  bool eval_lasso(const formula& f, const lasso& w)
  {
    if (w.cycle.empty())
      throw error(errc::malformed_input, "lasso with an empty cycle");
    return lasso_evaluator(w).eval(f)[0];
  }
}
