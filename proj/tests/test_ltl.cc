#include <random>

#include <doctest.h>

#include "check_errc.hh"
#include "support.hh"
#include "symne/buchi.hh"
#include "symne/ltl.hh"
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

  formula at(const arena& ar, player_id k, const char* s)
  {
    return formula::atom(k, *ar.find_state(s), s);
  }
}

TEST_CASE("parse")
{
  game_network toggle = fixture("toggle");
  game_network penny = fixture("penny");
  const arena& ta = toggle.arena;
  const arena& pa = penny.arena;

  formula f = parse("F at(0,b)", ta, 2);
  CHECK(f.op() == ltl_op::eventually);
  CHECK(f.lhs() == at(ta, 0, "b"));

  formula p = parse("F (at(0,h) & at(1,t))", pa, 2);
  CHECK(p == formula::unary(ltl_op::eventually,
                            formula::binary(ltl_op::land, at(pa, 0, "h"),
                                            at(pa, 1, "t"))));

  CHECK_ERRC(parse("at(7,b)", ta, 2), errc::player_out_of_range);
  CHECK_ERRC(parse("at(0,z)", ta, 2), errc::unknown_state);
  CHECK_ERRC(parse("F (at(0,b)", ta, 2), errc::syntax_error);
  CHECK_ERRC(parse("at(0,b) &", ta, 2), errc::syntax_error);
  CHECK_ERRC(parse("", ta, 2), errc::syntax_error);

  SUBCASE("precedence and associativity")
  {
    formula a = at(ta, 0, "a"), b = at(ta, 0, "b"), c = at(ta, 1, "a");
    CHECK(parse("at(0,a) | at(0,b) & at(1,a)", ta, 2) == (a | (b & c)));
    CHECK(parse("at(0,a) -> at(0,b) -> at(1,a)", ta, 2)
          == formula::binary(ltl_op::implies, a,
                             formula::binary(ltl_op::implies, b, c)));
    CHECK(parse("at(0,a) U at(0,b) U at(1,a)", ta, 2)
          == formula::binary(ltl_op::until, a,
                             formula::binary(ltl_op::until, b, c)));
    CHECK(parse("at(0,a) & at(0,b) U at(1,a)", ta, 2)
          == (a & formula::binary(ltl_op::until, b, c)));
    CHECK(parse("!at(0,a) U at(0,b)", ta, 2)
          == formula::binary(ltl_op::until, !a, b));
    CHECK(parse("X F G !at(0,a)", ta, 2)
          == formula::unary(
            ltl_op::next,
            formula::unary(ltl_op::eventually,
                           formula::unary(ltl_op::always, !a))));
    CHECK(parse("at(0,\"b\") R (true | false)", ta, 2)
          == formula::binary(ltl_op::release, b,
                             formula::tt() | formula::ff()));
    CHECK(parse("at(0,a) && at(0,b) || at(1,a)", ta, 2) == ((a & b) | c));
  }

  SUBCASE("to_string parses back")
  {
    for (const char* src:
         {"F at(0,b)", "G (at(0,b) -> X at(0,b))", "at(0,a) U (at(1,b) R true)",
          "!(at(0,a) | X at(1,a))", "false"})
      {
        formula g = parse(src, ta, 2);
        CHECK(parse(g.to_string(), ta, 2) == g);
      }
    formula odd = formula::atom(0, 0, "(a,0)");
    CHECK(odd.to_string() == "at(0,\"(a,0)\")");
  }
}

TEST_CASE("instantiate_for_player")
{
  game_network penny = fixture("penny");
  auto rep = build_representation(penny.base_perms);
  const arena& pa = penny.arena;
  CHECK(instantiate_for_player(penny.objective, 1, rep)
        == parse("F (at(1,h) & at(0,t))", pa, 2));
  CHECK(instantiate_for_player(penny.objective, 0, rep) == penny.objective);

  game_network cards = fixture("cards6");
  auto crep = build_representation(cards.base_perms);
  formula a1 = parse("at(1,s)", cards.arena, 6);
  CHECK(instantiate_for_player(a1, 1, crep) == parse("at(2,s)", cards.arena, 6));
}

TEST_CASE("objectives are compatible with the symmetry")
{
  for (const char* name: {"toggle", "penny", "toggle_blind", "cards6"})
    {
      game_network g = fixture(name);
      auto rep = build_representation(g.base_perms);
      std::vector<formula> phi;
      for (player_id i = 0; i < g.n; ++i)
        phi.push_back(instantiate_for_player(g.objective, i, rep));
      auto alphabet = symne::testing::all_configurations(g.arena, g.n);
      std::size_t violations = 0;
      for (const lasso& w: symne::testing::all_lassos(alphabet, 3))
        for (player_id i = 0; i < g.n; ++i)
          for (player_id j = 0; j < g.n; ++j)
            violations += eval_lasso(phi[i], w)
              != eval_lasso(phi[j], permute_lasso(w, rep(i, j).inverse()));
      CHECK(violations == 0);
    }
}

TEST_CASE("eval_lasso examples")
{
  game_network g = fixture("toggle");
  const arena& ar = g.arena;
  auto aa = conf(ar, {"a", "a"}), bb = conf(ar, {"b", "b"});
  CHECK(eval_lasso(parse("F at(0,b)", ar, 2), lasso{{aa}, {bb}}));
  CHECK_FALSE(eval_lasso(parse("G at(0,a)", ar, 2), lasso{{}, {aa, bb}}));
  CHECK_FALSE(eval_lasso(fixture("toggle_blind").objective,
                         lasso{{aa}, {bb, aa}}));
  CHECK(eval_lasso(fixture("toggle_blind").objective, lasso{{aa}, {bb}}));
  CHECK_ERRC(eval_lasso(formula::tt(), lasso{{aa}, {}}),
             errc::malformed_input);
}

TEST_CASE("eval_lasso agrees with the reference walker and the automaton")
{
  game_network g = fixture("toggle");
  auto alphabet = symne::testing::all_configurations(g.arena, 2);
  auto lassos = symne::testing::all_lassos(alphabet, 3);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 60; ++k)
    {
      formula f = parse(symne::testing::random_formula(rng, 2, g.arena.states),
                        g.arena, 2);
      CAPTURE(f.to_string());
      CHECK(temporal_depth(f) <= 2);
      buchi_automaton a = to_buchi(f);
      for (const lasso& w: lassos)
        {
          bool v = eval_lasso(f, w);
          CHECK(v == symne::testing::naive_eval(f, w));
          CHECK(v == buchi_accepts(a, w));
          CHECK(eval_lasso(!f, w) == !v);
        }
    }
}

TEST_CASE("expansion laws")
{
  game_network g = fixture("toggle");
  const arena& ar = g.arena;
  auto alphabet = symne::testing::all_configurations(ar, 2);
  auto lassos = symne::testing::all_lassos(alphabet, 4);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k)
    {
      formula p = parse(symne::testing::random_formula(rng, 2, ar.states), ar, 2);
      formula q = parse(symne::testing::random_formula(rng, 2, ar.states), ar, 2);
      formula u = formula::binary(ltl_op::until, p, q);
      formula gp = formula::unary(ltl_op::always, p);
      formula fp = formula::unary(ltl_op::eventually, p);
      auto X = [](formula f) { return formula::unary(ltl_op::next, f); };
      for (const lasso& w: lassos)
        {
          CHECK(eval_lasso(u, w) == eval_lasso(q | (p & X(u)), w));
          CHECK(eval_lasso(gp, w) == eval_lasso(p & X(gp), w));
          CHECK(eval_lasso(fp, w) == eval_lasso(p | X(fp), w));
        }
    }
}

TEST_CASE("to_buchi shapes")
{
  game_network g = fixture("toggle");
  const arena& ar = g.arena;
  formula p = at(ar, 0, "b");

  buchi_automaton gp = to_buchi(formula::unary(ltl_op::always, p));
  CHECK(gp.size() == 1);
  CHECK(gp.accepting[0]);
  REQUIRE(gp.edges[0].size() == 1);
  CHECK(gp.edges[0][0].target == 0);
  CHECK(gp.edges[0][0].label
        == std::vector<buchi_literal>{{0, *ar.find_state("b"), true}});

  buchi_automaton fp = to_buchi(formula::unary(ltl_op::eventually, p));
  CHECK(fp.size() == 2);

  buchi_automaton ff = to_buchi(formula::ff());
  auto alphabet = symne::testing::all_configurations(ar, 2);
  for (const lasso& w: symne::testing::all_lassos(alphabet, 3))
    CHECK_FALSE(buchi_accepts(ff, w));

  std::string dot = buchi_to_dot(fp, ar);
  CHECK(dot.rfind("digraph buchi {", 0) == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);
}
