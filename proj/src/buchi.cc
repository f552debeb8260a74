#include "symne/buchi.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "symne/graph.hh"

namespace symne
{
  bool label_holds(std::span<const buchi_literal> label,
                   const configuration& t)
  {
    for (const buchi_literal& l: label)
      if ((t.at(l.player) == l.state) != l.positive)
        return false;
    return true;
  }

  namespace
  {
    enum class nnf_kind : std::uint8_t
    {
      tt,
      ff,
      lit,
      conj,
      disj,
      next,
      until,
      release,
    };

    struct nnf_node
    {
      nnf_kind kind;
      buchi_literal lit{0, 0, true};
      std::uint32_t a = 0;
      std::uint32_t b = 0;

      auto operator<=>(const nnf_node&) const = default;
    };

    // Hash-consed negation normal form: equal subformulas share an id.
    class nnf_table
    {
    public:
      nnf_table()
      {
        tt_ = make({nnf_kind::tt});
        ff_ = make({nnf_kind::ff});
      }

      const nnf_node& operator[](std::uint32_t id) const
      {
        return nodes_[id];
      }

      std::size_t size() const noexcept
      {
        return nodes_.size();
      }

      std::uint32_t convert(const formula& f, bool negate)
      {
        switch (f.op())
          {
          case ltl_op::tt:
            return negate ? ff_ : tt_;
          case ltl_op::ff:
            return negate ? tt_ : ff_;
          case ltl_op::atom:
            return make({nnf_kind::lit, {f.player(), f.state(), !negate}});
          case ltl_op::lnot:
            return convert(f.lhs(), !negate);
          case ltl_op::land:
            return negate ? disj(convert(f.lhs(), true), convert(f.rhs(), true))
                          : conj(convert(f.lhs(), false),
                                 convert(f.rhs(), false));
          case ltl_op::lor:
            return negate ? conj(convert(f.lhs(), true), convert(f.rhs(), true))
                          : disj(convert(f.lhs(), false),
                                 convert(f.rhs(), false));
          case ltl_op::implies:
            return negate ? conj(convert(f.lhs(), false),
                                 convert(f.rhs(), true))
                          : disj(convert(f.lhs(), true),
                                 convert(f.rhs(), false));
          case ltl_op::next:
            return make({nnf_kind::next, {}, convert(f.lhs(), negate)});
          case ltl_op::eventually:
            return negate ? binary(nnf_kind::release, ff_,
                                   convert(f.lhs(), true))
                          : binary(nnf_kind::until, tt_,
                                   convert(f.lhs(), false));
          case ltl_op::always:
            return negate ? binary(nnf_kind::until, tt_,
                                   convert(f.lhs(), true))
                          : binary(nnf_kind::release, ff_,
                                   convert(f.lhs(), false));
          case ltl_op::until:
            return negate ? binary(nnf_kind::release, convert(f.lhs(), true),
                                   convert(f.rhs(), true))
                          : binary(nnf_kind::until, convert(f.lhs(), false),
                                   convert(f.rhs(), false));
          case ltl_op::release:
            return negate ? binary(nnf_kind::until, convert(f.lhs(), true),
                                   convert(f.rhs(), true))
                          : binary(nnf_kind::release, convert(f.lhs(), false),
                                   convert(f.rhs(), false));
          }
        return ff_;
      }

    private:
      std::uint32_t make(nnf_node n)
      {
        auto [it, fresh] = ids_.try_emplace(n, nodes_.size());
        if (fresh)
          nodes_.push_back(n);
        return it->second;
      }

      std::uint32_t binary(nnf_kind k, std::uint32_t a, std::uint32_t b)
      {
        return make({k, {}, a, b});
      }

      std::uint32_t conj(std::uint32_t a, std::uint32_t b)
      {
        if (a == ff_ || b == ff_)
          return ff_;
        if (a == tt_ || a == b)
          return b;
        if (b == tt_)
          return a;
        return binary(nnf_kind::conj, std::min(a, b), std::max(a, b));
      }

      std::uint32_t disj(std::uint32_t a, std::uint32_t b)
      {
        if (a == tt_ || b == tt_)
          return tt_;
        if (a == ff_ || a == b)
          return b;
        if (b == ff_)
          return a;
        return binary(nnf_kind::disj, std::min(a, b), std::max(a, b));
      }

      std::vector<nnf_node> nodes_;
      std::map<nnf_node, std::uint32_t> ids_;
      std::uint32_t tt_ = 0;
      std::uint32_t ff_ = 0;
    };

    using obligations = std::vector<std::uint32_t>;

    // One way of meeting a set of obligations in the current step.
    struct cover
    {
      std::vector<buchi_literal> lits;
      std::set<std::uint32_t> next;
      std::set<std::uint32_t> postponed;

      bool operator==(const cover&) const = default;
    };

    bool consistent(const std::vector<buchi_literal>& lits,
                    const buchi_literal& l)
    {
      for (const buchi_literal& m: lits)
        if (m.player == l.player
            && ((m.state == l.state && m.positive != l.positive)
                || (m.state != l.state && m.positive && l.positive)))
          return false;
      return true;
    }

    class tableau
    {
    public:
      explicit tableau(const nnf_table& table)
        : table_(table)
      {
      }

      std::vector<cover> expand(const obligations& now) const
      {
        std::vector<cover> out;
        run(now, {}, {}, out);
        std::vector<cover> unique;
        for (cover& c: out)
          if (std::find(unique.begin(), unique.end(), c) == unique.end())
            unique.push_back(std::move(c));
        return unique;
      }

    private:
      void run(std::vector<std::uint32_t> todo, std::set<std::uint32_t> done,
               cover cur, std::vector<cover>& out) const
      {
        while (!todo.empty())
          {
            std::uint32_t f = todo.back();
            todo.pop_back();
            if (!done.insert(f).second)
              continue;
            const nnf_node& n = table_[f];
            switch (n.kind)
              {
              case nnf_kind::tt:
                break;
              case nnf_kind::ff:
                return;
              case nnf_kind::lit:
                if (!consistent(cur.lits, n.lit))
                  return;
                if (std::find(cur.lits.begin(), cur.lits.end(), n.lit)
                    == cur.lits.end())
                  cur.lits.push_back(n.lit);
                break;
              case nnf_kind::conj:
                todo.push_back(n.b);
                todo.push_back(n.a);
                break;
              case nnf_kind::disj:
                {
                  auto left = todo;
                  left.push_back(n.a);
                  run(std::move(left), done, cur, out);
                  todo.push_back(n.b);
                  break;
                }
              case nnf_kind::next:
                cur.next.insert(n.a);
                break;
              case nnf_kind::until:
                {
                  // Fulfil now, or keep the left side and postpone.
                  auto now = todo;
                  now.push_back(n.b);
                  run(std::move(now), done, cur, out);
                  todo.push_back(n.a);
                  cur.next.insert(f);
                  cur.postponed.insert(f);
                  break;
                }
              case nnf_kind::release:
                {
                  // Both sides now, or the right side now and again later.
                  auto now = todo;
                  now.push_back(n.b);
                  now.push_back(n.a);
                  run(std::move(now), done, cur, out);
                  todo.push_back(n.b);
                  cur.next.insert(f);
                  break;
                }
              }
          }
        std::sort(cur.lits.begin(), cur.lits.end());
        out.push_back(std::move(cur));
      }

      const nnf_table& table_;
    };
  }

  buchi_automaton to_buchi(const formula& f)
  {
    nnf_table table;
    const std::uint32_t root = table.convert(f, false);

    std::vector<std::uint32_t> untils;
    for (std::uint32_t id = 0; id < table.size(); ++id)
      if (table[id].kind == nnf_kind::until)
        untils.push_back(id);
    const std::size_t k = untils.size();

    tableau tab(table);
    std::map<obligations, std::vector<cover>> covers;
    auto covers_of = [&](const obligations& s) -> const std::vector<cover>& {
      auto it = covers.find(s);
      if (it == covers.end())
        it = covers.emplace(s, tab.expand(s)).first;
      return it->second;
    };

    // Degeneralized state: obligation set and acceptance level in [0, k].
    using key = std::pair<obligations, std::size_t>;
    std::map<key, std::uint32_t> ids;
    std::deque<key> queue;
    buchi_automaton aut;
    auto state_of = [&](const key& s) {
      auto [it, fresh] = ids.try_emplace(s, aut.edges.size());
      if (fresh)
        {
          aut.edges.emplace_back();
          aut.accepting.push_back(s.second == k);
          queue.push_back(s);
        }
      return it->second;
    };

    aut.initial.push_back(state_of({{root}, 0}));
    while (!queue.empty())
      {
        key s = queue.front();
        queue.pop_front();
        const std::uint32_t from = ids.at(s);
        std::size_t level = s.second == k ? 0 : s.second;
        for (const cover& c: covers_of(s.first))
          {
            std::size_t reached = level;
            while (reached < k && !c.postponed.contains(untils[reached]))
              ++reached;
            obligations next(c.next.begin(), c.next.end());
            std::uint32_t to = state_of({std::move(next), reached});
            buchi_edge e{c.lits, to};
            auto& out = aut.edges[from];
            bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const buchi_edge& o) {
                                     return o.target == e.target
                                       && o.label == e.label;
                                   });
            if (!dup)
              out.push_back(std::move(e));
          }
      }
    return aut;
  }

  bool buchi_accepts(const buchi_automaton& a, const lasso& w)
  {
    const std::size_t len = w.length();
    explicit_graph g;
    std::map<std::pair<std::size_t, std::uint32_t>, std::uint32_t> ids;
    std::deque<std::pair<std::size_t, std::uint32_t>> queue;
    auto node = [&](std::size_t pos, std::uint32_t q) {
      auto [it, fresh] = ids.try_emplace({pos, q}, g.size());
      if (fresh)
        {
          g.add_node(a.accepting[q]);
          queue.emplace_back(pos, q);
        }
      return it->second;
    };
    std::vector<std::uint32_t> roots;
    for (std::uint32_t q: a.initial)
      roots.push_back(node(0, q));
    while (!queue.empty())
      {
        auto [pos, q] = queue.front();
        queue.pop_front();
        std::uint32_t from = ids.at({pos, q});
        std::size_t succ = pos + 1 < len ? pos + 1 : w.prefix.size();
        for (const buchi_edge& e: a.edges[q])
          if (label_holds(e.label, w.at(pos)))
            {
              std::uint32_t to = node(succ, e.target);
              g.succ[from].push_back(to);
            }
      }
    return find_accepting_lasso(g, roots).has_value();
  }

  std::string buchi_to_dot(const buchi_automaton& a, const arena& ar)
  {
    std::ostringstream out;
    out << "digraph buchi {\n  rankdir=LR;\n  init [shape=point];\n";
    for (std::size_t q = 0; q < a.size(); ++q)
      out << "  q" << q << " [shape="
          << (a.accepting[q] ? "doublecircle" : "circle") << "];\n";
    for (std::uint32_t q: a.initial)
      out << "  init -> q" << q << ";\n";
    for (std::size_t q = 0; q < a.size(); ++q)
      for (const buchi_edge& e: a.edges[q])
        {
          std::string label;
          for (const buchi_literal& l: e.label)
            {
              if (!label.empty())
                label += " & ";
              label += (l.positive ? "" : "!") + std::string("at(")
                + std::to_string(l.player) + "," + ar.states.at(l.state)
                + ")";
            }
          out << "  q" << q << " -> q" << e.target << " [label=\""
              << dot_escape(label.empty() ? "true" : label) << "\"];\n";
        }
    out << "}\n";
    return out.str();
  }
}
