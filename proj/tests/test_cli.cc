#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "cli.hh"
#include "support.hh"
#include "symne/game_io.hh"

using namespace symne;
using symne::cli::command;
using symne::cli::parse_args;
using symne::testing::fixture_path;

namespace
{
  struct run_result
  {
    int status;
    std::string out;
    std::string err;
  };

  run_result run(std::vector<std::string> args)
  {
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
  }

  std::string fx(const char* name)
  {
    return fixture_path(name).string();
  }

  struct scratch
  {
    std::filesystem::path dir;

    scratch()
    {
      dir = std::filesystem::temp_directory_path()
        / ("symne-cli-" + std::to_string(std::random_device{}()));
      std::filesystem::create_directories(dir);
    }

    ~scratch()
    {
      std::error_code ec;
      std::filesystem::remove_all(dir, ec);
    }

    std::string file(const std::string& name, const std::string& text = "")
    {
      auto p = dir / name;
      if (!text.empty())
        std::ofstream(p) << text;
      return p.string();
    }
  };

  std::string slurp(const std::string& path)
  {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
}

TEST_CASE("parse_args")
{
  command c = parse_args({"find", "g.json", "--memory", "2", "--winners", "0,1"});
  CHECK(c.verb == cli::verb::find);
  CHECK(c.game_path == "g.json");
  CHECK(c.memory == 2);
  REQUIRE(c.winners);
  CHECK(*c.winners == std::vector<player_id>{0, 1});
  CHECK_FALSE(c.losers);
  CHECK(c.jobs >= 1);

  command k = parse_args({"check", "g.json", "s.json"});
  CHECK(k.verb == cli::verb::check);
  REQUIRE(k.strategy_path);
  CHECK(*k.strategy_path == "s.json");

  command e = parse_args({"export-dot", "g.json", "--buchi", "-o", "x.dot",
                          "--budget-nodes", "10", "--budget-candidates", "20",
                          "--jobs", "3", "--losers", "1"});
  CHECK(e.verb == cli::verb::export_dot);
  CHECK(e.buchi);
  CHECK(*e.output == "x.dot");
  CHECK(e.budget_nodes == 10);
  CHECK(e.budget_candidates == 20);
  CHECK(e.jobs == 3);
  CHECK(*e.losers == std::vector<player_id>{1});
  CHECK(parse_args({"find", "g.json", "--winners", ""}).winners
        == std::vector<player_id>{});

  auto usage = [](std::vector<std::string> args) {
    try
      {
        parse_args(args);
      }
    catch (const cli::usage_error& e)
      {
        return e.status();
      }
    return -1;
  };
  CHECK(usage({"find", "g.json", "--memory", "0"}) == 64);
  CHECK(usage({"find", "g.json", "--frobnicate"}) == 64);
  CHECK(usage({"find"}) == 64);
  CHECK(usage({}) == 64);
  CHECK(usage({"solve", "g.json"}) == 64);
  CHECK(usage({"check", "g.json"}) == 64);
  CHECK(usage({"find", "g.json", "--winners", "0,x"}) == 64);
  CHECK(usage({"find", "g.json", "--winners", "0,1", "--losers", "1"}) == 64);
  CHECK(usage({"find", "g.json", "--budget-nodes", "0"}) == 64);
  CHECK(usage({"find", "g.json", "--jobs", "0"}) == 64);
  CHECK(usage({"--help"}) == 0);
}

TEST_CASE("find and general")
{
  run_result any = run({"find", fx("penny")});
  CHECK(any.status == 0);
  auto j = nlohmann::json::parse(any.out);
  CHECK(j["verdict"]["winners"] == nlohmann::json::array());

  CHECK(run({"find", fx("penny"), "--winners", "0,1"}).status == 1);
  CHECK(run({"oracle", fx("penny")}).status == 0);
  CHECK(run({"oracle", fx("penny"), "--winners", "0,1"}).status == 1);
  CHECK(run({"oracle", fx("toggle"), "--memory", "2"}).status == 3);

  run_result split = run({"general", fx("penny"), "--winners", "0",
                          "--losers", "1"});
  CHECK(split.status == 0);
  auto g = nlohmann::json::parse(split.out);
  CHECK(g["strategies"].size() == 2);
  CHECK(g["verdict"]["winners"] == nlohmann::json::array({0}));

  run_result blind = run({"find", fx("toggle_blind"), "--winners", "0,1"});
  CHECK(blind.status == 1);
  CHECK(run({"find", fx("toggle_blind"), "--winners", "0,1", "--memory", "2"})
          .status
        == 0);

  CHECK(run({"find", fx("toggle"), "--budget-candidates", "1",
             "--winners", "0,1"})
          .status
        == 3);
  CHECK(run({"find", fx("toggle"), "--winners", "5"}).status == 2);
}

TEST_CASE("check")
{
  scratch tmp;
  const std::string stay = tmp.file(
    "stay.json",
    R"({"memory": 1, "initial": 0, "table": {
          "0,id:[a,a]": {"act": "stay", "next": 0},
          "0,id:[a,b]": {"act": "stay", "next": 0},
          "0,id:[b,a]": {"act": "stay", "next": 0},
          "0,id:[b,b]": {"act": "stay", "next": 0}}})");
  run_result r = run({"check", fx("toggle"), stay});
  CHECK(r.status == 1);
  CHECK(r.err.find("player 0") != std::string::npos);
  CHECK(r.err.find("go") != std::string::npos);

  // Witnesses from find are accepted by check.
  for (const auto& args: std::vector<std::vector<std::string>>{
         {"find", fx("penny")},
         {"find", fx("toggle"), "--winners", "0,1"},
         {"find", fx("toggle_blind"), "--winners", "0,1", "--memory", "2"},
         {"find", fx("cards6")},
         {"general", fx("penny"), "--winners", "0", "--losers", "1"}})
    {
      std::string out = tmp.file("witness.json");
      std::vector<std::string> a = args;
      a.insert(a.end(), {"-o", out});
      REQUIRE(run(a).status == 0);
      std::vector<std::string> c{"check", a[1], out};
      for (std::size_t k = 2; k + 2 < a.size(); ++k)
        c.push_back(a[k]);
      CHECK(run(c).status == 0);
    }

  const std::string partial = tmp.file(
    "partial.json",
    R"({"memory": 1, "initial": 0, "table": {
          "0,id:[a,a]": {"act": "stay", "next": 0}}})");
  CHECK(run({"check", fx("toggle"), partial}).status == 2);
  CHECK(run({"check", fx("toggle"), tmp.file("missing.json")}).status == 66);
}

TEST_CASE("validate and failures")
{
  scratch tmp;
  run_result v = run({"validate", fx("toggle")});
  CHECK(v.status == 0);
  CHECK(v.out.find("4 reachable") != std::string::npos);

  CHECK(run({"validate", tmp.file("nope.json")}).status == 66);
  CHECK(run({"validate", tmp.file("bad.json", "{not json")}).status == 2);
  CHECK(run({"validate", tmp.file("extra.json",
                                  R"({"arena": {}, "colour": 1})")})
          .status
        == 2);

  auto raw = nlohmann::json::parse(slurp(fx("toggle")));
  raw["arena"]["mov"]["a"] = nlohmann::json::array();
  raw["arena"]["tab"].erase("a");
  run_result empty = run({"validate", tmp.file("empty.json", raw.dump())});
  CHECK(empty.status == 2);
  CHECK(empty.err.find("EmptyMoveSet") != std::string::npos);

  CHECK(run({"validate", fx("toggle"), "--budget-nodes", "2"}).status == 3);
  CHECK(run({"find", fx("penny"), "-o", (tmp.dir / "no/such/dir.json").string()})
          .status
        == 66);
}

TEST_CASE("desym and export-dot")
{
  scratch tmp;
  std::string h = tmp.file("h.json");
  CHECK(run({"desym", fx("toggle"), "-o", h}).status == 0);
  game_network g = load_game(h);
  CHECK(g.arena.states.size() == 4);
  CHECK(run({"validate", h}).status == 0);
  CHECK(run({"find", h}).status == 0);

  run_result dot = run({"export-dot", fx("toggle")});
  CHECK(dot.status == 0);
  CHECK(dot.out.rfind("digraph product {", 0) == 0);
  CHECK(dot.out.find("c0 -> c1") != std::string::npos);
  CHECK(dot.out.find("deviation") == std::string::npos);

  std::string w = tmp.file("w.json");
  REQUIRE(run({"find", fx("penny"), "-o", w}).status == 0);
  run_result dev = run({"export-dot", fx("penny"), w, "--buchi"});
  CHECK(dev.status == 0);
  CHECK(dev.out.find("digraph deviation_0 {") != std::string::npos);
  CHECK(dev.out.find("digraph deviation_1 {") != std::string::npos);
  CHECK(dev.out.find("digraph buchi {") != std::string::npos);
  CHECK(run({"export-dot", fx("penny"), w, "--buchi"}).out == dev.out);
}

TEST_CASE("outputs are byte-identical across runs and workers")
{
  for (const auto& base: std::vector<std::vector<std::string>>{
         {"find", fx("penny")},
         {"find", fx("toggle"), "--winners", "0,1"},
         {"find", fx("toggle_blind"), "--winners", "0,1", "--memory", "2"},
         {"general", fx("penny"), "--winners", "0", "--losers", "1"}})
    {
      std::vector<std::string> one = base, four = base;
      one.insert(one.end(), {"--jobs", "1"});
      four.insert(four.end(), {"--jobs", "4"});
      const std::string ref = run(one).out;
      CHECK_FALSE(ref.empty());
      for (int k = 0; k < 3; ++k)
        {
          CHECK(run(one).out == ref);
          CHECK(run(four).out == ref);
        }
    }
}
