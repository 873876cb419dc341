#include "tes/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

namespace tes::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [k, _] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) bad(where, "unknown field '" + k + "'");
}

Rational rational(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
  bad(where, "expected an integer or a rational string");
}

template <class T>
T integer(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(where, "expected a non-negative integer");
  return j.get<T>();
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected true or false");
  return j.get<bool>();
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

cps::Position position(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [x, y]");
  return {rational(j[0], where + "[0]"), rational(j[1], where + "[1]")};
}

template <class F>
auto wrap(const std::string& where, F f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

TesPrefix trace(const json& j, const std::string& where) {
  TesPrefix p;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    p.push_back(wrap(w, [&] { return io::observation_from_json(j[i]); }));
    if (i > 0 && !(p[i - 1].time < p[i].time)) bad(w, "time does not increase");
  }
  return p;
}

void apply_cps(const json& j, cps::Scenario& sc) {
  only_keys(j, "cps", {"capacity_wh", "eta_d", "eta_c", "eta_l", "min_dwell", "mass", "gravity", "size", "friction",
                       "station", "grid_step", "wheel_radius", "wheel_speed"});
  auto r = [&](const char* k, Rational& out) {
    if (j.contains(k)) out = rational(j[k], std::string("cps.") + k);
  };
  auto rate = [&](const char* k, cps::Rate& out) {
    if (j.contains(k)) out = cps::Rate(rational(j[k], std::string("cps.") + k));
  };
  r("capacity_wh", sc.battery.capacity_wh);
  rate("eta_d", sc.battery.eta_d);
  rate("eta_c", sc.battery.eta_c);
  rate("eta_l", sc.battery.eta_l);
  r("min_dwell", sc.battery.min_dwell);
  r("mass", sc.field.mass);
  r("gravity", sc.field.gravity);
  r("size", sc.field.size);
  r("grid_step", sc.field.grid_step);
  r("wheel_radius", sc.robot.wheel_radius);
  r("wheel_speed", sc.robot.wheel_speed);
  if (j.contains("friction")) {
    Rational mu = rational(j["friction"], "cps.friction");
    sc.field.friction = [mu](const cps::Position&) { return mu; };
  }
  if (j.contains("station")) sc.field.station = position(j["station"], "cps.station");
}

cps::RobotSetup robot_setup(const json& j, const std::string& where) {
  only_keys(j, where, {"robot", "battery", "object", "start", "dirs", "powers", "read_location", "read_battery", "charge"});
  for (const char* k : {"robot", "battery", "object", "start"})
    if (!j.contains(k)) bad(where, std::string("missing field '") + k + "'");
  cps::RobotSetup s{Atom(string(j["robot"], where + ".robot")), Atom(string(j["battery"], where + ".battery")),
                    Atom(string(j["object"], where + ".object")), position(j["start"], where + ".start"), {}};
  if (j.contains("dirs")) {
    s.alphabet.dirs.clear();
    for (const auto& d : array(j["dirs"], where + ".dirs")) {
      auto dir = parse_dir(string(d, where + ".dirs"));
      if (!dir) bad(where + ".dirs", "unknown direction " + d.dump());
      s.alphabet.dirs.push_back(*dir);
    }
  }
  if (j.contains("powers")) {
    s.alphabet.powers.clear();
    for (const auto& p : array(j["powers"], where + ".powers")) s.alphabet.powers.push_back(rational(p, where + ".powers"));
  }
  if (j.contains("read_location")) s.alphabet.read_location = boolean(j["read_location"], where + ".read_location");
  if (j.contains("read_battery")) s.alphabet.read_battery = boolean(j["read_battery"], where + ".read_battery");
  if (j.contains("charge")) s.alphabet.charge = boolean(j["charge"], where + ".charge");
  return s;
}

Component declared(const json& j, const std::string& where, const dsl::Env& env) {
  if (!j.is_object() || !j.contains("name") || !j.contains("kind")) bad(where, "needs name and kind");
  std::string name = string(j["name"], where + ".name");
  std::string kind = string(j["kind"], where + ".kind");
  if (kind == "tree") {
    only_keys(j, where, {"name", "kind", "traces"});
    std::vector<TesPrefix> done;
    json ts = j.value("traces", json::array());
    array(ts, where + ".traces");
    for (std::size_t i = 0; i < ts.size(); ++i) done.push_back(trace(ts[i], where + ".traces[" + std::to_string(i) + "]"));
    return tree_component(name, PrefixTree::from_completed(done));
  }
  if (kind == "const") {
    only_keys(j, where, {"name", "kind", "stem", "cycle", "shift"});
    TesPrefix stem = trace(j.value("stem", json::array()), where + ".stem");
    TesPrefix cycle = trace(j.value("cycle", json::array()), where + ".cycle");
    Rational shift = j.contains("shift") ? rational(j["shift"], where + ".shift") : Rational(0);
    return wrap(where, [&] { return const_component(name, stem, cycle, shift); });
  }
  if (kind == "alternating") {
    only_keys(j, where, {"name", "kind", "first", "second"});
    if (!j.contains("first") || !j.contains("second")) bad(where, "needs first and second events");
    return wrap(where, [&] {
      return alternating_component(name, io::event_from_json(j["first"]), io::event_from_json(j["second"]));
    });
  }
  if (kind == "sampled") {
    only_keys(j, where, {"name", "kind", "event", "subject", "initial", "times", "rate"});
    Atom event(string(j.value("event", json()), where + ".event"));
    Atom subject(j.contains("subject") ? string(j["subject"], where + ".subject") : "");
    std::vector<Value> initial;
    json initial_j = j.value("initial", json()), times_j = j.value("times", json());
    for (const auto& v : array(initial_j, where + ".initial"))
      initial.push_back(wrap(where + ".initial", [&] { return io::value_from_json(v); }));
    std::vector<TimeStamp> times;
    for (const auto& t : array(times_j, where + ".times")) times.push_back(rational(t, where + ".times"));
    Rational rate = j.contains("rate") ? rational(j["rate"], where + ".rate") : Rational(0);
    // d0 + rate * t for numeric d0; other values are held constant
    auto f = [rate](const Value& d0, const TimeStamp& t) -> Value {
      if (rate.is_zero()) return d0;
      if (d0.is<std::int64_t>()) return Rational(d0.as<std::int64_t>()) + rate * t;
      if (d0.is<Rational>()) return d0.as<Rational>() + rate * t;
      return d0;
    };
    return wrap(where, [&] { return sampled_component(name, event, subject, f, initial, times); });
  }
  if (kind == "expr") {
    only_keys(j, where, {"name", "kind", "expression"});
    std::string text = string(j.value("expression", json()), where + ".expression");
    return wrap(where, [&] { return dsl::build(dsl::parse_expr(text), env); });
  }
  bad(where + ".kind", "unknown kind '" + kind + "'");
}

}  // namespace

Config parse_config(const json& j) {
  only_keys(j, "config", {"version", "expression", "horizon", "grid", "max_traces", "seed", "node_cap", "property", "cps",
                          "robots", "components"});
  if (!j.contains("version")) bad("config", "missing field 'version'");
  if (integer<int>(j["version"], "version") != kConfigVersion)
    bad("version", "unsupported version " + j["version"].dump() + ", expected " + std::to_string(kConfigVersion));
  if (!j.contains("expression")) bad("config", "missing field 'expression'");
  Config c;
  c.expression = string(j["expression"], "expression");
  if (j.contains("horizon")) c.horizon = rational(j["horizon"], "horizon");
  if (j.contains("grid")) c.grid = rational(j["grid"], "grid");
  if (c.horizon.sign() < 0) bad("horizon", "must not be negative");
  if (c.grid.sign() <= 0) bad("grid", "must be positive");
  if (j.contains("max_traces")) c.max_traces = integer<std::size_t>(j["max_traces"], "max_traces");
  if (j.contains("seed")) c.seed = integer<std::uint64_t>(j["seed"], "seed");
  if (j.contains("node_cap")) c.node_cap = integer<std::size_t>(j["node_cap"], "node_cap");
  if (j.contains("property")) c.property = string(j["property"], "property");
  if (j.contains("robots") && array(j["robots"], "robots").size() > 2) bad("robots", "at most two robots");
  c.source = j;
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

dsl::Env make_env(const Config& c) {
  dsl::Env env;
  env.horizon = c.horizon;
  env.grid = c.grid;
  env.node_cap = c.node_cap;
  cps::Scenario& sc = env.scenario;
  sc.horizon = c.horizon;
  sc.grid = c.grid;
  if (c.source.contains("cps")) apply_cps(c.source["cps"], sc);
  if (c.source.contains("robots")) {
    const json& rs = c.source["robots"];
    if (rs.size() > 0) sc.r1 = robot_setup(rs[0], "robots[0]");
    if (rs.size() > 1) sc.r2 = robot_setup(rs[1], "robots[1]");
  }
  wrap("cps", [&] { return &sc.complete(); });
  if (c.source.contains("components")) {
    const json& cs = array(c.source["components"], "components");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string where = "components[" + std::to_string(i) + "]";
      Component comp = declared(cs[i], where, env);
      std::string name = cs[i]["name"].get<std::string>();
      if (!env.components.emplace(name, std::move(comp)).second) bad(where, "duplicate name '" + name + "'");
    }
  }
  return env;
}

dsl::Env default_env(const TimeStamp& horizon, const Rational& grid, std::size_t node_cap) {
  Config c;
  c.horizon = horizon;
  c.grid = grid;
  c.node_cap = node_cap;
  return make_env(c);
}

TraceProperty property_by_name(const std::string& name, const cps::Scenario& sc) {
  if (name == "energy") return cps::p_energy();
  if (name == "no-overlap") return cps::p_no_overlap();
  if (name == "swap") return cps::p_swap(sc);
  throw ConfigError("unknown property '" + name + "' (expected energy, no-overlap or swap)");
}

RunResult run_scenario(const Config& c, const std::string& out_dir) {
  dsl::Env env = make_env(c);
  dsl::Expr e = dsl::parse_expr(c.expression);
  Component comp = dsl::build(e, env);

  RunResult r;
  r.summary = {{"version", kConfigVersion}, {"expression", dsl::print(e)}, {"horizon", c.horizon.str()},
               {"grid", c.grid.str()}, {"seed", c.seed}, {"max_traces", c.max_traces}, {"node_cap", c.node_cap}};
  std::filesystem::create_directories(out_dir);
  auto finish = [&] {
    std::ofstream(std::filesystem::path(out_dir) / "summary.json") << r.summary.dump(2) << '\n';
    return r;
  };

  PrefixTree tree;
  try {
    tree = prefixes(comp, c.horizon, c.grid, c.node_cap);
  } catch (const EnumerationOverflow& o) {
    r.exit_code = 2;
    r.summary.update({{"overflow", true}, {"truncated", true}, {"nodes", nullptr}, {"completed", nullptr},
                      {"emitted", 0}, {"files", json::array()}, {"error", o.what()}});
    return finish();
  }

  std::vector<TesPrefix> done = tree.completed();
  std::vector<std::size_t> picked(done.size());
  for (std::size_t i = 0; i < picked.size(); ++i) picked[i] = i;
  if (done.size() > c.max_traces) {
    std::vector<std::size_t> sample;
    std::mt19937_64 rng(c.seed);
    std::sample(picked.begin(), picked.end(), std::back_inserter(sample), c.max_traces, rng);
    picked = std::move(sample);
  }
  json files = json::array();
  for (std::size_t k = 0; k < picked.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "trace_%04zu.jsonl", k);
    io::save_trace((std::filesystem::path(out_dir) / name).string(), done[picked[k]]);
    files.push_back(name);
  }
  r.summary.update({{"overflow", false}, {"truncated", done.size() > c.max_traces}, {"nodes", tree.size()},
                    {"completed", done.size()}, {"emitted", picked.size()}, {"files", files}});
  if (c.property) {
    SatResult s = satisfies(tree, property_by_name(*c.property, env.scenario));
    r.summary["verdict"] = io::verdict_record(*c.property, s.verdict, s.witness);
  }
  return finish();
}

}  // namespace tes::cli
