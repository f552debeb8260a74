#include "support.hh"

#include <algorithm>
#include <memory>

#include "symne/game_io.hh"
#include "symne/observation.hh"
#include "symne/solver.hh"

#ifndef SYMNE_FIXTURES
#error "SYMNE_FIXTURES must point at the fixtures directory"
#endif

namespace symne::testing
{
  std::filesystem::path fixture_path(const std::string& name)
  {
    return std::filesystem::path(SYMNE_FIXTURES) / (name + ".json");
  }

  game_network fixture(const std::string& name)
  {
    return load_game(fixture_path(name));
  }

  moore_strategy
  machine(const game_network& g, std::uint32_t m,
          const std::function<std::pair<std::string, std::uint32_t>(
            std::uint32_t, const std::string&)>& rule)
  {
    game_context ctx(g);
    key_domain dom = symmetric_key_domain(g, ctx.rep(), ctx.reach());
    moore_strategy s;
    s.memory = m;
    s.keys = std::make_shared<const std::vector<std::string>>(dom.keys);
    for (std::uint32_t q = 0; q < m; ++q)
      for (const std::string& k: dom.keys)
        {
          auto [name, next] = rule(q, k);
          s.act.push_back(*g.arena.find_action(name));
          s.next.push_back(next);
        }
    return s;
  }

  moore_strategy
  memoryless(const game_network& g,
             const std::function<std::string(const std::string&)> rule)
  {
    return machine(g, 1, [&](std::uint32_t, const std::string& k) {
      return std::pair{rule(k), 0u};
    });
  }

  game_network network_from(const raw_network& raw)
  {
    return validate_network(raw);
  }

  std::vector<configuration> all_configurations(const arena& ar,
                                                std::size_t n)
  {
    std::vector<configuration> out;
    configuration t(n, 0);
    for (;;)
      {
        out.push_back(t);
        std::size_t k = n;
        while (k > 0 && ++t[k - 1] == ar.states.size())
          t[--k] = 0;
        if (k == 0)
          return out;
      }
  }

  namespace
  {
    void words(const std::vector<configuration>& alphabet, std::size_t len,
               const std::function<void(const std::vector<configuration>&)>&
                 visit)
    {
      std::vector<std::size_t> pick(len, 0);
      std::vector<configuration> w(len);
      for (;;)
        {
          for (std::size_t k = 0; k < len; ++k)
            w[k] = alphabet[pick[k]];
          visit(w);
          std::size_t k = len;
          while (k > 0 && ++pick[k - 1] == alphabet.size())
            pick[--k] = 0;
          if (k == 0)
            return;
        }
    }
  }

  std::vector<lasso> all_lassos(const std::vector<configuration>& alphabet,
                                std::size_t max_len)
  {
    std::vector<lasso> out;
    for (std::size_t len = 1; len <= max_len; ++len)
      words(alphabet, len, [&](const std::vector<configuration>& w) {
        for (std::size_t p = 0; p < len; ++p)
          out.push_back(lasso{{w.begin(), w.begin() + p},
                              {w.begin() + p, w.end()}});
      });
    return out;
  }

  std::vector<std::vector<configuration>>
  all_histories(const std::vector<configuration>& alphabet,
                std::size_t max_len)
  {
    std::vector<std::vector<configuration>> out;
    for (std::size_t len = 1; len <= max_len; ++len)
      words(alphabet, len,
            [&](const std::vector<configuration>& w) { out.push_back(w); });
    return out;
  }

  namespace
  {
    struct walker
    {
      const lasso& w;

      std::size_t norm(std::size_t pos) const
      {
        const std::size_t p = w.prefix.size(), c = w.cycle.size();
        return pos < p ? pos : p + (pos - p) % c;
      }

      const configuration& at(std::size_t pos) const
      {
        pos = norm(pos);
        return pos < w.prefix.size() ? w.prefix[pos]
                                     : w.cycle[pos - w.prefix.size()];
      }

      // Every suffix of the word starts within the first |w| positions
      // after pos, so scanning that window decides U and R.
      bool until(const formula& a, const formula& b, std::size_t pos) const
      {
        for (std::size_t k = 0; k <= w.length(); ++k)
          {
            if (eval(b, pos + k))
              return true;
            if (!eval(a, pos + k))
              return false;
          }
        return false;
      }

      bool eval(const formula& f, std::size_t pos) const
      {
        pos = norm(pos);
        switch (f.op())
          {
          case ltl_op::tt:
            return true;
          case ltl_op::ff:
            return false;
          case ltl_op::atom:
            return at(pos)[f.player()] == f.state();
          case ltl_op::lnot:
            return !eval(f.lhs(), pos);
          case ltl_op::land:
            return eval(f.lhs(), pos) && eval(f.rhs(), pos);
          case ltl_op::lor:
            return eval(f.lhs(), pos) || eval(f.rhs(), pos);
          case ltl_op::implies:
            return !eval(f.lhs(), pos) || eval(f.rhs(), pos);
          case ltl_op::next:
            return eval(f.lhs(), pos + 1);
          case ltl_op::eventually:
            return until(formula::tt(), f.lhs(), pos);
          case ltl_op::always:
            return !until(formula::tt(), !f.lhs(), pos);
          case ltl_op::until:
            return until(f.lhs(), f.rhs(), pos);
          case ltl_op::release:
            return !until(!f.lhs(), !f.rhs(), pos);
          }
        return false;
      }
    };
  }

  bool naive_eval(const formula& f, const lasso& w)
  {
    return walker{w}.eval(f, 0);
  }

  namespace
  {
    std::string gen(std::mt19937_64& rng, std::size_t n,
                    const std::vector<std::string>& states, int tdepth,
                    int& atoms, int size)
    {
      auto pick = [&](std::size_t k) {
        return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      };
      if (size <= 0 || pick(4) == 0)
        {
          if (atoms > 0 && pick(8) != 0)
            {
              --atoms;
              return "at(" + std::to_string(pick(n)) + ","
                + states[pick(states.size())] + ")";
            }
          return pick(2) ? "true" : "false";
        }
      switch (pick(6))
        {
        case 0:
          return "!(" + gen(rng, n, states, tdepth, atoms, size - 1) + ")";
        case 1:
        case 2:
        case 3:
          if (tdepth > 0)
            {
              static const char* ops[] = {"F", "G", "X"};
              return std::string(ops[pick(3)]) + " ("
                + gen(rng, n, states, tdepth - 1, atoms, size - 1) + ")";
            }
          [[fallthrough]];
        default:
          {
            // Half the atom budget each, so both operands can mention one.
            int left = atoms / 2 + atoms % 2;
            int right = atoms - left;
            std::string l = gen(rng, n, states, tdepth, left, size / 2);
            std::string r = gen(rng, n, states, tdepth, right, size / 2);
            atoms = left + right;
            return "(" + l + (pick(2) ? ") & (" : ") | (") + r + ")";
          }
        }
    }
  }

  std::string random_formula(std::mt19937_64& rng, std::size_t n,
                             const std::vector<std::string>& states)
  {
    int atoms = 2;
    return gen(rng, n, states, 2, atoms, 4);
  }

  raw_network random_raw_network(std::mt19937_64& rng,
                                 const random_shape& shape)
  {
    auto uniform = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    raw_network raw;
    const std::size_t ns = uniform(shape.min_states, shape.max_states);
    const std::size_t na = uniform(1, shape.max_actions);
    for (std::size_t s = 0; s < ns; ++s)
      raw.states.push_back("s" + std::to_string(s));
    for (std::size_t a = 0; a < na; ++a)
      raw.actions.push_back("a" + std::to_string(a));
    for (const std::string& s: raw.states)
      {
        std::vector<std::string> mov;
        while (mov.empty())
          for (const std::string& a: raw.actions)
            if (uniform(0, 3) != 0)
              mov.push_back(a);
        for (const std::string& a: mov)
          raw.tab[s][a] = raw.states[uniform(0, ns - 1)];
        raw.mov[s] = mov;
      }
    raw.players = 2;
    raw.base_perms = {{0, 1}, {1, 0}};
    switch (uniform(0, 2))
      {
      case 0:
        raw.observation = {{obs_atom::kind::id, {0, 1}}};
        break;
      case 1:
        raw.observation = {{obs_atom::kind::id, {0}}};
        break;
      default:
        break;
      }
    raw.objective = random_formula(rng, 2, raw.states);
    raw.initial = {raw.states[uniform(0, ns - 1)],
                   raw.states[uniform(0, ns - 1)]};
    return raw;
  }
}
