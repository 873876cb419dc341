#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tes/commands.hpp"
#include "tes/reo.hpp"

using namespace tes;
using namespace tes::cli;
using dsl::Expr;

namespace {

const std::string kScenarios = TES_SOURCE_DIR "/scenarios/";

std::string temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tes_cli_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

Value random_value(std::mt19937& rng, int depth = 0) {
  std::uniform_int_distribution<int> kind(0, depth < 2 ? 6 : 5), small(-50, 50), den(1, 12);
  switch (kind(rng)) {
    case 0: return Atom(std::string(1, static_cast<char>('a' + small(rng) % 5 + 5)));
    case 1: return Value(std::int64_t{small(rng)});
    case 2: return Rational(small(rng), den(rng));
    case 3: return qty(Rational(small(rng), den(rng)), static_cast<Unit>(den(rng) % 5));
    case 4: return static_cast<Dir>(den(rng) % 4);
    case 5: return den(rng) % 2 ? Status::ON : Status::OFF;
    default: return Value(random_value(rng, depth + 1), random_value(rng, depth + 1));
  }
}

TesPrefix random_prefix(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 5), events(0, 3), den(1, 7), step(1, 9);
  TesPrefix p;
  Rational t(0);
  for (int i = len(rng); i > 0; --i) {
    t += Rational(step(rng), den(rng));
    std::vector<Event> es;
    for (int k = events(rng); k > 0; --k)
      es.push_back({Atom(k % 2 ? "move" : "read"), Atom(k == 2 ? "" : "R1"), random_value(rng)});
    p.push_back({Observable(std::move(es)), t});
  }
  return p;
}

// Random well-sorted expressions, printed form only.
struct ExprGen {
  std::mt19937 rng;
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  std::string name() { return std::vector<std::string>{"a", "b", "R1", "c_2", "x9"}[pick(5)]; }
  std::string pat() { return pick(2) ? name() : name() + "@" + name(); }
  std::string item() {
    switch (pick(5)) {
      case 0: return pat() + "~" + pat();
      case 1: return pat() + "*" + pat();
      case 2: return "rb(" + name() + ")";
      case 3: return "fr(" + name() + ")";
      default: return "ff(" + name() + ", " + name() + ")";
    }
  }
  std::string rel(int depth) {
    int k = pick(depth > 2 ? 4 : 6);
    if (k == 0) return "free";
    if (k < 4) {
      std::string s = std::vector<std::string>{"sync", "excl", "intl"}[k - 1] + "{";
      for (int i = pick(3); i >= 0; --i) s += item() + (i ? ", " : "");
      return s + "}";
    }
    return std::string(k == 4 ? "and" : "or") + "(" + rel(depth + 1) + ", " + rel(depth + 1) + ")";
  }
  std::string comp(int depth) {
    switch (pick(depth > 2 ? 4 : 8)) {
      case 0: return name();
      case 1: return "sync(" + name() + ", " + name() + ")";
      case 2: return "merger(" + name() + ", " + name() + ", " + name() + ")";
      case 3: return "subsystem(" + name() + ")";
      case 4: return "join(" + comp(depth + 1) + ", " + comp(depth + 1) + ")";
      case 5: return "intersect(" + comp(depth + 1) + ", " + comp(depth + 1) + ")";
      default:
        return std::vector<std::string>{"product", "divide", "coordinate"}[pick(3)] + "(" + rel(depth) + ", " +
               (pick(2) ? "union" : "inter") + ", " + comp(depth + 1) + ", " + comp(depth + 1) + ")";
    }
  }
};

TesPrefix without(const TesPrefix& p, const Atom& name) {
  TesPrefix out;
  for (const auto& o : p) {
    Observable kept;
    for (const auto& e : o.observable)
      if (e.name != name) kept.insert(e);
    out.push_back({kept, o.time});
  }
  return out;
}

dsl::Env env_of(const std::string& file) { return make_env(load_config(kScenarios + file)); }

}  // namespace

TEST_CASE("trace files round-trip exactly") {
  std::mt19937 rng(41);
  for (int i = 0; i < 300; ++i) {
    TesPrefix p = random_prefix(rng);
    std::string text = io::trace_text(p);
    TesPrefix back = io::parse_trace(text);
    REQUIRE(back == p);
    CHECK(io::trace_text(back) == text);
  }
  Observation o{Observable{cps::robot_move("R", Dir::N, Rational(20))}, Rational(3, 2)};
  CHECK(io::observation_line(o) ==
        R"({"events":[{"name":"move","payload":{"pair":[{"dir":"N"},{"qty":"20","unit":"W"}]},"subject":"R"}],"t":"3/2"})");
}

TEST_CASE("trace format errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      io::parse_trace(text);
    } catch (const io::FormatError& e) {
      return e.line;
    }
    return std::size_t{0};
  };
  const std::string ok = R"({"events":[],"t":"1"})";
  CHECK(line_of(ok + "\n" + R"({"events":[],"t":"1/2"})") == 2);
  CHECK(line_of(ok + "\n\n" + R"({"events":[{"name":"a","payload":{"qty":"1","unit":"J"}}],"t":"2"})") == 3);
  CHECK(line_of("{not json") == 1);
  CHECK(line_of(R"({"events":[],"t":"1","x":0})") == 1);
  CHECK(line_of(R"({"events":[],"t":1})") == 1);
  CHECK(line_of(ok) == 0);
  CHECK(io::parse_trace("").empty());
}

TEST_CASE("tree listings") {
  PrefixTree t = prefixes(sync_channel("a", "b"), Rational(2), Rational(1));
  std::ostringstream out;
  io::write_tree(out, t);
  std::istringstream in(out.str());
  std::vector<TesPrefix> listed = io::read_prefix_list(in);
  std::vector<TesPrefix> all = t.prefixes(), leaves;
  for (const auto& p : all)
    if (std::none_of(all.begin(), all.end(), [&](const TesPrefix& q) {
          return q.size() == p.size() + 1 && std::equal(p.begin(), p.end(), q.begin());
        }))
      leaves.push_back(p);
  std::sort(leaves.begin(), leaves.end());
  CHECK(listed == leaves);
}

TEST_CASE("expression parsing") {
  Expr j = dsl::parse_expr("join(sync(a,c1), fifo(x,c2))");
  CHECK(j.kind == Expr::Kind::Call);
  CHECK(j.name == "join");
  REQUIRE(j.args.size() == 2);
  CHECK(j.args[0].name == "sync");
  CHECK(j.args[1].name == "fifo");

  Expr p = dsl::parse_expr("product(free, union, A, B)");
  CHECK(p.name == "product");
  CHECK(p.args[0] == Expr{Expr::Kind::Ident, "free", {}, 0, 0});
  CHECK(p.args[1].name == "union");
  CHECK(dsl::print(p) == "product(free, union, A, B)");

  Expr r = dsl::parse_relation("sync{ move@R ~ discharge@B, read * read@B, rb(R1) }");
  CHECK(dsl::print(r) == "sync{move@R~discharge@B, read*read@B, rb(R1)}");
  // positions do not take part in equality
  CHECK(dsl::parse_expr("join(a,\n  b)") == dsl::parse_expr("join(a, b)"));
}

TEST_CASE("expression errors are positioned") {
  auto error = [](const std::string& text) -> std::tuple<int, int, std::string> {
    try {
      dsl::parse_expr(text);
    } catch (const dsl::ParseError& e) {
      return {e.line, e.column, e.what()};
    }
    return {0, 0, ""};
  };
  auto [l1, c1, m1] = error("product(free, union, A)");
  CHECK(l1 == 1);
  CHECK(c1 == 1);
  CHECK(m1.find("product expects 4 arguments, got 3") != std::string::npos);

  auto [l2, c2, m2] = error("join(a,\n     frob(b))");
  CHECK(l2 == 2);
  CHECK(c2 == 6);
  CHECK(m2.find("unknown constructor 'frob'") != std::string::npos);

  auto [l3, c3, m3] = error("product(union, free, a, b)");
  CHECK(c3 == 9);
  CHECK(m3.find("expected a relation") != std::string::npos);

  auto [l4, c4, m4] = error("join(a, b");
  CHECK(m4.find("expected ')' at end") != std::string::npos);
  CHECK(c4 == 10);

  CHECK(std::get<0>(error("join(a, b) c")) == 1);
  CHECK(std::get<2>(error("sync(a, b$)")).find("unexpected character") != std::string::npos);
  CHECK(std::get<2>(error("product(sync{a}, union, a, b)")).find("'~' or '*'") != std::string::npos);
  CHECK(std::get<2>(error("product(sync{rb(R1, R2)}, union, a, b)")).find("rb expects 1 argument") != std::string::npos);
}

TEST_CASE("printing and parsing are inverse") {
  ExprGen gen{std::mt19937(17)};
  for (int i = 0; i < 500; ++i) {
    std::string text = gen.comp(0);
    Expr e = dsl::parse_expr(text);
    CHECK(dsl::print(e) == text);
    CHECK(dsl::parse_expr(dsl::print(e)) == e);
  }
}

TEST_CASE("building expressions") {
  dsl::Env env = env_of("system_small.json");
  env.horizon = Rational(3);
  auto build = [&](const std::string& s) { return dsl::build(dsl::parse_expr(s), env); };

  CHECK(prefixes(build("sync(a, b)"), env.horizon, env.grid) == prefixes(sync_channel("a", "b"), env.horizon, env.grid));
  CHECK(equiv_upto(build("join(port(a), port(a))"), port({"a"}), env.horizon, env.grid).equal);
  CHECK(equiv_upto(build("product(sync{a~b}, union, port(a), port(b))"), sync_channel("a", "b"), env.horizon, env.grid).equal);

  cps::Scenario sc = env.scenario;
  CHECK(equiv_upto(build("eq2"), cps::system(sc), env.horizon, env.grid).equal);
  CHECK(equiv_upto(build("eq3"), cps::system_alt(sc), env.horizon, env.grid).equal);

  try {
    build("join(port(a), subsystem(R7))");
    FAIL("unknown robot accepted");
  } catch (const dsl::ParseError& e) {
    CHECK(e.column == 25);
  }
  CHECK_THROWS_AS(build("nothing"), dsl::ParseError);
}

TEST_CASE("config validation") {
  auto base = [] { return json{{"version", 1}, {"expression", "port(a)"}}; };
  auto with = [&](const json& extra) {
    json j = base();
    j.update(extra);
    return j;
  };
  CHECK_NOTHROW(parse_config(base()));
  auto fails = [](json j, const std::string& fragment) {
    try {
      make_env(parse_config(j));
    } catch (const ConfigError& e) {
      if (std::string(e.what()).find(fragment) != std::string::npos) return true;
      MESSAGE(std::string(e.what()));
    }
    return false;
  };
  CHECK(fails(json{{"expression", "a"}}, "missing field 'version'"));
  CHECK(fails(with(json{{"version", 2}}), "unsupported version"));
  CHECK(fails(with(json{{"horizn", 3}}), "unknown field 'horizn'"));
  CHECK(fails(with(json{{"grid", "0"}}), "grid: must be positive"));
  CHECK(fails(with(json{{"robots", json::array({json{{"robot", "R"}}})}}), "robots[0]: missing field"));
  CHECK(fails(with(json{{"robots", json::array({json{{"robot", "R"}, {"battery", "B"}, {"object", "I"},
                                                          {"start", {0, 0}}, {"dirs", {"Q"}}}})}}),
              "robots[0].dirs: unknown direction"));
  CHECK(fails(with(json{{"components", json::array({json{{"name", "k"}, {"kind", "blob"}}})}}),
              "components[0].kind: unknown kind"));
  CHECK(fails(with(json{{"components", json::array({json{{"name", "k"}, {"kind", "tree"},
                                                              {"traces", {{{{"t", "2"}, {"events", json::array()}},
                                                                           {{"t", "1"}, {"events", json::array()}}}}}}})}}),
              "components[0].traces[0][1]: time does not increase"));
  CHECK_THROWS_AS(load_config(kScenarios + "missing.json"), ConfigError);
  for (const char* f : {"table1.json", "system.json", "system_small.json", "fifo.json", "reo_join.json"})
    CHECK_NOTHROW(load_config(kScenarios + f));
}

TEST_CASE("run emits the worked single-robot prefix") {
  Config c = load_config(kScenarios + "table1.json");
  std::string dir = temp_dir("table1");
  RunResult r = run_scenario(c, dir);
  CHECK(r.exit_code == 0);
  CHECK_FALSE(r.summary["truncated"].get<bool>());
  CHECK(r.summary["verdict"]["verdict"] == "SatisfiedSoFar");
  TesPrefix target = cps::table1().composite;
  bool found = false;
  for (const auto& f : r.summary["files"]) found |= io::load_trace(dir + "/" + f.get<std::string>()) == target;
  CHECK(found);
}

TEST_CASE("run edge cases") {
  Config c = load_config(kScenarios + "fifo.json");
  c.horizon = Rational(0);
  std::string dir = temp_dir("zero");
  RunResult r = run_scenario(c, dir);
  CHECK(r.exit_code == 0);
  REQUIRE(r.summary["emitted"] == 1);
  CHECK(io::load_trace(dir + "/trace_0000.jsonl").empty());

  c = load_config(kScenarios + "fifo.json");
  c.node_cap = 10;
  dir = temp_dir("cap");
  r = run_scenario(c, dir);
  CHECK(r.exit_code == 2);
  CHECK(r.summary["truncated"] == true);
  CHECK(r.summary["overflow"] == true);
  CHECK(std::filesystem::exists(dir + "/summary.json"));
}

TEST_CASE("runs are deterministic given the seed") {
  Config c = load_config(kScenarios + "fifo.json");
  auto files = [](const std::string& dir, const json& summary) {
    std::vector<TesPrefix> out;
    for (const auto& f : summary["files"]) out.push_back(io::load_trace(dir + "/" + f.get<std::string>()));
    return out;
  };
  std::string d1 = temp_dir("seed1"), d2 = temp_dir("seed2"), d3 = temp_dir("seed3");
  RunResult a = run_scenario(c, d1), b = run_scenario(c, d2);
  CHECK(a.summary == b.summary);
  CHECK(files(d1, a.summary) == files(d2, b.summary));
  CHECK(a.summary["truncated"] == true);
  c.seed = 99;
  RunResult other = run_scenario(c, d3);
  CHECK(files(d1, a.summary) != files(d3, other.summary));
}

TEST_CASE("commands") {
  dsl::Env env = env_of("system_small.json");

  Outcome eq = guarded([&] { return cmd_equiv(env, "eq2", "eq3"); });
  CHECK(eq.code == kPass);
  CHECK(eq.record["equal"] == true);

  Outcome chk = guarded([&] { return cmd_check(env, "system", "energy"); });
  CHECK(chk.code == kPass);
  CHECK(chk.record["verdict"] == "SatisfiedSoFar");

  dsl::Env t1 = env_of("table1.json");
  TesPrefix table = cps::table1().composite;
  CHECK(guarded([&] { return cmd_admits(t1, "subsystem(R)", table); }).code == kPass);
  Outcome lone = guarded([&] { return cmd_admits(t1, "subsystem(R)", without(table, "discharge")); });
  CHECK(lone.code == kFail);
  CHECK(lone.record["admits"] == false);

  Outcome neq = guarded([&] { return cmd_equiv(env, "sync(a, b)", "syncdrain(a, b)"); });
  CHECK(neq.code == kFail);
  REQUIRE(neq.listing);
  CHECK_FALSE(io::parse_trace(*neq.listing).empty());

  Outcome orc = guarded([&] { return cmd_oracle(env, "port(a)", "port(b)", "sync{a~b}", "union"); });
  CHECK(orc.code == kPass);
  CHECK(orc.record["equal"] == true);

  dsl::Env shallow = env;
  shallow.horizon = Rational(2);
  Outcome div = guarded([&] { return cmd_divide(shallow, "product(free, union, port(a), port(b))", "port(b)", "free", "union"); });
  CHECK(div.code == kPass);
  CHECK(div.record["nodes"].get<std::size_t>() > 1);

  HyperArgs shift{"shift", {}, {Rational(1, 2)}, 100000};
  CHECK(guarded([&] { return cmd_hyper(env, "sync(a, b)", shift); }).code == kPass);

  env.node_cap = 50;
  Outcome over = guarded([&] { return cmd_equiv(env, "eq2", "eq3"); });
  CHECK(over.code == kInconclusive);
  CHECK(over.record["overflow"] == true);
  CHECK(guarded([&] { return cmd_check(env, "port(a)", "speed"); }).code == kInconclusive);
  CHECK(guarded([&] { return cmd_equiv(env, "product(free, union, a)", "a"); }).code == kInconclusive);
}
