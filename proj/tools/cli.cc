#include "cli.hh"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "symne/buchi.hh"
#include "symne/error.hh"
#include "symne/game_io.hh"
#include "symne/oracle.hh"
#include "symne/solver.hh"
#include "symne/symmetry.hh"

namespace symne::cli
{
  namespace
  {
    struct verb_info
    {
      const char* name;
      verb v;
      const char* help;
    };

    const std::vector<verb_info> verbs = {
      {"validate", verb::validate, "load a game and count reachable configurations"},
      {"find", verb::find, "search for a symmetric equilibrium"},
      {"check", verb::check, "verify a strategy profile"},
      {"general", verb::general, "search over independent per-player strategies"},
      {"desym", verb::desym, "write the copy-tagged game"},
      {"oracle", verb::oracle, "brute-force search, for tiny games"},
      {"export-dot", verb::export_dot, "write Graphviz graphs"},
    };

    std::vector<player_id> parse_players(const std::string& flag,
                                         const std::string& text)
    {
      std::vector<player_id> out;
      if (text.empty())
        return out;
      std::size_t pos = 0;
      for (;;)
        {
          std::size_t comma = text.find(',', pos);
          std::string item = text.substr(pos, comma - pos);
          if (item.empty()
              || !std::all_of(item.begin(), item.end(),
                              [](unsigned char ch) { return std::isdigit(ch); })
              || item.size() > 9)
            throw usage_error(flag + ": expected a comma-separated list of"
                              " player indices, got '" + text + "'");
          out.push_back(static_cast<player_id>(std::stoul(item)));
          if (comma == std::string::npos)
            break;
          pos = comma + 1;
        }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    std::string format_players(const std::vector<player_id>& ps)
    {
      std::string s = "{";
      for (std::size_t k = 0; k < ps.size(); ++k)
        s += (k ? "," : "") + std::to_string(ps[k]);
      return s + "}";
    }

    int status_of(errc code)
    {
      switch (code)
        {
        case errc::io_error:
          return 66;
        case errc::budget_exceeded:
        case errc::oracle_too_large:
          return 3;
        default:
          return 2;
        }
    }

    void emit(const command& c, std::ostream& out, const std::string& text)
    {
      if (!c.output)
        {
          out << text;
          return;
        }
      std::ofstream f(*c.output, std::ios::binary);
      f << text;
      f.close();
      if (!f)
        throw error(errc::io_error, "cannot write " + *c.output);
    }

    constraints effective_goal(const command& c, const game_network& g)
    {
      constraints goal = g.goal;
      if (c.winners)
        goal.winners = *c.winners;
      if (c.losers)
        goal.losers = *c.losers;
      for (const auto* side: {&goal.winners, &goal.losers})
        for (player_id i: *side)
          if (i >= g.n)
            throw error(errc::player_out_of_range, "player "
                        + std::to_string(i) + " in a game with "
                        + std::to_string(g.n) + " players");
      for (player_id i: goal.winners)
        if (std::find(goal.losers.begin(), goal.losers.end(), i)
            != goal.losers.end())
          throw error(errc::conflicting_constraints, "player "
                      + std::to_string(i) + " is both winner and loser");
      return goal;
    }

    int report(const command& c, const game_network& g,
               const std::optional<solution>& s, const char* what,
               std::ostream& out, std::ostream& err)
    {
      if (!s)
        {
          err << "no " << what << " with memory " << c.memory << "\n";
          return 1;
        }
      emit(c, out, dump(solution_to_json(*s, g.arena)));
      err << "found " << what << "; winners "
          << format_players(s->result.winners) << "\n";
      return 0;
    }

    int dispatch(const command& c, std::ostream& out, std::ostream& err)
    {
      game_network g = load_game(c.game_path);
      const constraints goal = effective_goal(c, g);
      const budgets limits{c.budget_candidates, c.budget_nodes, c.jobs};

      switch (c.verb)
        {
        case verb::validate:
          {
            reachable_set reach = explore(g, c.budget_nodes);
            emit(c, out, "valid: " + std::to_string(g.n) + " players, "
                 + std::to_string(g.arena.states.size()) + " states, "
                 + std::to_string(reach.size())
                 + " reachable configurations\n");
            return 0;
          }
        case verb::find:
          return report(c, g, find_symmetric_ne(g, goal, c.memory, limits),
                        "symmetric equilibrium", out, err);
        case verb::general:
          return report(c, g, find_ne_general(g, goal, c.memory, limits),
                        "equilibrium", out, err);
        case verb::oracle:
          return report(c, g, oracle_find(g, goal, c.memory),
                        "symmetric equilibrium", out, err);
        case verb::check:
          {
            auto sigmas = load_strategies(*c.strategy_path, g.arena);
            game_context ctx(g, c.budget_nodes);
            bound_profile b(ctx, sigmas);
            check_result r = b.check(goal);
            if (auto* s = std::get_if<solution>(&r))
              {
                emit(c, out, dump(solution_to_json(*s, g.arena)));
                err << "accept; winners " << format_players(s->result.winners)
                    << "\n";
                return 0;
              }
            const auto& rej = std::get<rejection>(r);
            err << "reject: " << rej.describe(g.arena) << "\n";
            return 1;
          }
        case verb::desym:
          emit(c, out, dump(game_to_json(desymmetrize(g))));
          return 0;
        case verb::export_dot:
          {
            game_context ctx(g, c.budget_nodes);
            std::string text = product_game_to_dot(ctx);
            if (c.strategy_path)
              {
                bound_profile b(ctx, load_strategies(*c.strategy_path,
                                                     g.arena));
                for (player_id i = 0; i < g.n; ++i)
                  text += deviation_graph_to_dot(
                    ctx, build_deviation_graph(ctx, b.get(), i));
              }
            if (c.buchi)
              text += buchi_to_dot(ctx.automaton(0), g.arena);
            emit(c, out, text);
            return 0;
          }
        }
      return 2;
    }
  }

  command parse_args(const std::vector<std::string>& args)
  {
    CLI::App app{"Symmetric Nash equilibria in LTL game networks", "symne"};
    app.require_subcommand(1, 1);

    command c;
    c.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::int64_t memory = 1;
    std::int64_t nodes = static_cast<std::int64_t>(c.budget_nodes);
    std::int64_t candidates = static_cast<std::int64_t>(c.budget_candidates);
    std::int64_t jobs = c.jobs;
    std::string winners, losers, strategy, output;

    std::vector<std::pair<CLI::App*, verb>> subs;
    for (const auto& [name, v, help]: verbs)
      {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("game", c.game_path, "game file")->required();
        if (v == verb::check)
          sub->add_option("strategy", strategy, "strategy or solution file")
            ->required();
        if (v == verb::export_dot)
          {
            sub->add_option("strategy", strategy,
                            "also export deviation graphs of this profile");
            sub->add_flag("--buchi", c.buchi,
                          "also export player 0's objective automaton");
          }
        sub->add_option("--memory", memory, "memory bound (>= 1)");
        sub->add_option("--winners", winners, "required winners, e.g. 0,1");
        sub->add_option("--losers", losers, "required losers");
        sub->add_option("--budget-nodes", nodes, "graph node budget");
        sub->add_option("--budget-candidates", candidates,
                        "candidate strategy budget");
        sub->add_option("--jobs", jobs, "worker threads");
        sub->add_option("-o,--output", output, "output file");
        subs.emplace_back(sub, v);
      }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
      {
        app.parse(reversed);
      }
    catch (const CLI::CallForHelp&)
      {
        throw usage_error(app.help(), 0);
      }
    catch (const CLI::ParseError& e)
      {
        throw usage_error(std::string(e.what()) + "\n" + app.help());
      }

    for (const auto& [sub, v]: subs)
      if (sub->parsed())
        {
          c.verb = v;
          if (sub->count("--winners"))
            c.winners = parse_players("--winners", winners);
          if (sub->count("--losers"))
            c.losers = parse_players("--losers", losers);
          if (auto* opt = sub->get_option_no_throw("strategy");
              opt && opt->count())
            c.strategy_path = strategy;
          if (sub->count("--output"))
            c.output = output;
        }

    if (memory < 1 || memory > 0xFFFF)
      throw usage_error("--memory must be between 1 and 65535");
    if (nodes < 1 || candidates < 1)
      throw usage_error("budgets must be positive");
    if (jobs < 1 || jobs > 1024)
      throw usage_error("--jobs must be between 1 and 1024");
    if (c.winners && c.losers)
      for (player_id i: *c.winners)
        if (std::find(c.losers->begin(), c.losers->end(), i)
            != c.losers->end())
          throw usage_error("player " + std::to_string(i)
                            + " is in both --winners and --losers");
    c.memory = static_cast<std::uint32_t>(memory);
    c.budget_nodes = static_cast<std::uint64_t>(nodes);
    c.budget_candidates = static_cast<std::uint64_t>(candidates);
    c.jobs = static_cast<unsigned>(jobs);
    return c;
  }

  int execute(const command& c, std::ostream& out, std::ostream& err)
  {
    try
      {
        return dispatch(c, out, err);
      }
    catch (const error& e)
      {
        err << e.what() << "\n";
        return status_of(e.code());
      }
  }

  int run(const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err)
  {
    command c;
    try
      {
        c = parse_args(args);
      }
    catch (const usage_error& e)
      {
        (e.status() == 0 ? out : err) << e.what();
        return e.status();
      }
    return execute(c, out, err);
  }
}
