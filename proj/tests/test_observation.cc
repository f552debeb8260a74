#include <algorithm>

#include <doctest.h>

#include "check_errc.hh"
#include "support.hh"
#include "symne/network.hh"
#include "symne/observation.hh"
#include "symne/strategy.hh"
#include "symne/symmetry.hh"

using namespace symne;
using symne::testing::fixture;

namespace
{
  configuration conf(const arena& ar, std::initializer_list<const char*> s)
  {
    configuration t;
    for (const char* name: s)
      t.push_back(*ar.find_state(name));
    return t;
  }

  game_network noise_network()
  {
    raw_network raw;
    raw.states = {"off", "on"};
    raw.actions = {"flip", "keep"};
    for (const char* s: {"off", "on"})
      raw.mov[s] = {"flip", "keep"};
    raw.tab["off"] = {{"flip", "on"}, {"keep", "off"}};
    raw.tab["on"] = {{"flip", "off"}, {"keep", "on"}};
    raw.players = 3;
    raw.base_perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    raw.observation = {{obs_atom::kind::id, {0}},
                       {obs_atom::kind::count, {1, 2}}};
    raw.objective = "G at(0,on)";
    raw.initial = {"off", "off", "off"};
    return validate_network(raw);
  }
}

TEST_CASE("obs_key examples")
{
  game_network g = fixture("toggle");
  auto rep = build_representation(g.base_perms);
  CHECK(obs_key(g, rep, 0, conf(g.arena, {"a", "b"})) == "id:[a,b]");
  CHECK(obs_key(g, rep, 1, conf(g.arena, {"a", "b"})) == "id:[b,a]");

  game_network noise = noise_network();
  auto nrep = build_representation(noise.base_perms);
  CHECK(obs_key(noise, nrep, 0, conf(noise.arena, {"on", "off", "on"}))
        == "id:[on];cnt:{off:1,on:1}");
  // Zero counts are left out.
  CHECK(obs_key(noise, nrep, 0, conf(noise.arena, {"on", "on", "on"}))
        == "id:[on];cnt:{on:2}");
  // Player 1 reads (t1, t2, t0).
  CHECK(obs_key(noise, nrep, 1, conf(noise.arena, {"on", "off", "off"}))
        == "id:[off];cnt:{off:1,on:1}");

  game_network blind = fixture("toggle_blind");
  auto brep = build_representation(blind.base_perms);
  CHECK(obs_key(blind, brep, 0, conf(blind.arena, {"a", "b"})).empty());
}

TEST_CASE("template_key is stable")
{
  game_network g = fixture("cards6");
  configuration t = g.initial;
  CHECK(template_key(g.arena, g.observation, t)
        == "id:[s];cnt:{s:1};cnt:{s:1}");
  CHECK(template_key(g.arena, g.observation, t)
        == template_key(g.arena, g.observation, t));
}

TEST_CASE("equiv examples")
{
  game_network toggle = fixture("toggle");
  game_network blind = fixture("toggle_blind");
  auto rep = build_representation(toggle.base_perms);
  const arena& ar = toggle.arena;
  CHECK(equiv(toggle, rep, 0, conf(ar, {"a", "b"}), conf(ar, {"a", "b"})));
  CHECK(equiv(blind, rep, 0, conf(ar, {"a", "b"}), conf(ar, {"b", "a"})));
  CHECK_FALSE(
    equiv(toggle, rep, 0, conf(ar, {"a", "b"}), conf(ar, {"b", "a"})));
}

TEST_CASE("equiv is an equivalence relation")
{
  for (const char* name: {"toggle", "penny", "toggle_blind"})
    {
      game_network g = fixture(name);
      auto rep = build_representation(g.base_perms);
      auto cs = symne::testing::all_configurations(g.arena, g.n);
      for (player_id i = 0; i < g.n; ++i)
        for (const auto& t: cs)
          {
            CHECK(equiv(g, rep, i, t, t));
            for (const auto& u: cs)
              {
                CHECK(equiv(g, rep, i, t, u) == equiv(g, rep, i, u, t));
                for (const auto& v: cs)
                  if (equiv(g, rep, i, t, u) && equiv(g, rep, i, u, v))
                    CHECK(equiv(g, rep, i, t, v));
              }
          }
    }
}

TEST_CASE("observation is compatible with the symmetry")
{
  game_network noise = noise_network();
  for (const game_network& g:
       {fixture("toggle"), fixture("penny"), fixture("toggle_blind"),
        fixture("cards6"), noise})
    {
      auto rep = build_representation(g.base_perms);
      reachable_set reach = explore(g);
      std::size_t violations = 0;
      for (player_id i = 0; i < g.n; ++i)
        for (player_id j = 0; j < g.n; ++j)
          {
            permutation inv = rep(i, j).inverse();
            for (const auto& t: reach.configs)
              for (const auto& u: reach.configs)
                violations += equiv(g, rep, i, t, u)
                  != equiv(g, rep, j, permute_config(t, inv),
                           permute_config(u, inv));
          }
      CHECK(violations == 0);
    }
}

TEST_CASE("allowed_actions_for_class")
{
  game_network toggle = fixture("toggle");
  auto rep = build_representation(toggle.base_perms);
  reachable_set reach = explore(toggle);
  std::vector<action_id> both{*toggle.arena.find_action("stay"),
                              *toggle.arena.find_action("go")};
  std::sort(both.begin(), both.end());
  CHECK(allowed_actions_for_class(toggle, rep, 0, "id:[a,a]", reach) == both);
  CHECK_ERRC(allowed_actions_for_class(toggle, rep, 0, "id:[z,z]", reach),
             errc::undefined_key);

  game_network blind = fixture("toggle_blind");
  reachable_set breach = explore(blind);
  CHECK(allowed_actions_for_class(blind, rep, 0, "", breach) == both);

  // A blind coin flipper: the single class holds (i,i) and (h,h).
  raw_network raw = describe(fixture("penny"));
  raw.observation.clear();
  game_network penny_blind = validate_network(raw);
  reachable_set preach = explore(penny_blind);
  CHECK_ERRC(allowed_actions_for_class(penny_blind, rep, 0, "", preach),
             errc::no_uniform_action);
  CHECK_ERRC(candidate_count(penny_blind, rep, 1), errc::no_uniform_action);
}

TEST_CASE("key domains")
{
  game_network toggle = fixture("toggle");
  auto rep = build_representation(toggle.base_perms);
  reachable_set reach = explore(toggle);
  key_domain dom = symmetric_key_domain(toggle, rep, reach);
  CHECK(dom.keys
        == std::vector<std::string>{"id:[a,a]", "id:[a,b]", "id:[b,a]",
                                    "id:[b,b]"});
  for (player_id i = 0; i < 2; ++i)
    for (std::size_t c = 0; c < reach.size(); ++c)
      CHECK(dom.keys[dom.slot[i][c]] == obs_key(toggle, rep, i,
                                                reach.configs[c]));

  // From an asymmetric start, player 1 sees keys player 0 never does.
  raw_network raw = describe(fixture("penny"));
  raw.initial = {"h", "t"};
  game_network ht = validate_network(raw);
  reachable_set hreach = explore(ht);
  CHECK(player_key_domain(ht, rep, hreach, 0).keys
        == std::vector<std::string>{"id:[h,t]"});
  CHECK(player_key_domain(ht, rep, hreach, 1).keys
        == std::vector<std::string>{"id:[t,h]"});
  CHECK(symmetric_key_domain(ht, rep, hreach).keys
        == std::vector<std::string>{"id:[h,t]", "id:[t,h]"});
}
