#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "CLI11.hpp"
#include "tes/commands.hpp"

using namespace tes;
using namespace tes::cli;

namespace {

struct Common {
  std::string config;
  std::string horizon, grid;
  std::size_t node_cap = 0;
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Scenario file supplying robots, parameters and declared components");
    app->add_option("--horizon", horizon, "Time horizon, e.g. 4 or 7/2");
    app->add_option("--grid", grid, "Grid step for observation times");
    app->add_option("--node-cap", node_cap, "Enumeration node cap (default 10^6 or TES_NODE_CAP)");
    app->add_option("--out", out, "File receiving the witness trace or language listing");
  }

  Config resolve() const {
    Config c = config.empty() ? Config{} : load_config(config);
    if (!horizon.empty()) c.horizon = Rational::parse(horizon);
    if (!grid.empty()) c.grid = Rational::parse(grid);
    if (node_cap) c.node_cap = node_cap;
    return c;
  }
};

int emit(const Outcome& o, const std::string& out) {
  std::cout << o.record.dump() << '\n';
  if (!out.empty() && o.listing) std::ofstream(out) << *o.listing;
  if (o.record.contains("error")) std::cerr << "error: " << o.record["error"].get<std::string>() << '\n';
  return o.code;
}

Observable observable_arg(const std::string& text) {
  auto j = io::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("--insert expects a JSON array of events");
  std::vector<Event> events;
  for (const auto& e : j) events.push_back(io::event_from_json(e));
  return Observable(std::move(events));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timed-event stream component algebra"};
  app.require_subcommand(1);

  std::vector<std::string> run_configs;
  std::string run_out = "out";
  std::size_t jobs = 1;
  auto* run = app.add_subcommand("run", "Enumerate a scenario and write sampled traces plus a summary");
  run->add_option("configs", run_configs, "Scenario files")->required();
  run->add_option("--out", run_out, "Output directory; one subdirectory per file when several are given");
  run->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);

  Common common;
  std::string expr, expr2, prop, trace_path, mode = "insert", rel = "free", fn = "union";
  std::vector<std::string> inserts, steps;
  std::size_t budget = 10'000;

  auto* check = app.add_subcommand("check", "Evaluate a trace property on every completed prefix");
  check->add_option("expr", expr)->required();
  check->add_option("--prop", prop, "energy, no-overlap or swap")->required();
  common.attach(check);

  auto* equiv = app.add_subcommand("equiv", "Compare two prefix languages");
  equiv->add_option("e1", expr)->required();
  equiv->add_option("e2", expr2)->required();
  common.attach(equiv);

  auto* adm = app.add_subcommand("admits", "Whether a component admits a trace file");
  adm->add_option("expr", expr)->required();
  adm->add_option("trace", trace_path)->required()->check(CLI::ExistingFile);
  common.attach(adm);

  auto* hyper = app.add_subcommand("hyper", "Sample insert or shift closure");
  hyper->add_option("expr", expr)->required();
  hyper->add_option("--mode", mode)->check(CLI::IsMember({"insert", "shift"}));
  hyper->add_option("--insert", inserts, "Observable to insert, as a JSON array of events");
  hyper->add_option("--step", steps, "Alternative grid step for shifting");
  hyper->add_option("--budget", budget);
  common.attach(hyper);

  auto* divide = app.add_subcommand("divide", "Bounded quotient language");
  divide->add_option("e1", expr)->required();
  divide->add_option("e2", expr2)->required();
  divide->add_option("--rel", rel);
  divide->add_option("--fn", fn);
  common.attach(divide);

  auto* oracle = app.add_subcommand("oracle", "Brute-force product language checked against the product");
  oracle->add_option("e1", expr)->required();
  oracle->add_option("e2", expr2)->required();
  oracle->add_option("--rel", rel);
  oracle->add_option("--fn", fn);
  common.attach(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInconclusive;
  }

  if (*run) {
    std::vector<std::future<std::pair<int, io::json>>> pending;
    std::vector<std::pair<int, io::json>> results;
    auto one = [&](const std::string& path) -> std::pair<int, io::json> {
      try {
        std::string dir = run_configs.size() == 1 ? run_out
                                                  : (std::filesystem::path(run_out) / std::filesystem::path(path).stem()).string();
        RunResult r = run_scenario(load_config(path), dir);
        return {r.exit_code, r.summary};
      } catch (const std::exception& e) {
        return {kInconclusive, {{"config", path}, {"error", e.what()}}};
      }
    };
    for (const auto& path : run_configs) {
      if (pending.size() == jobs) {
        results.push_back(pending.front().get());
        pending.erase(pending.begin());
      }
      pending.push_back(std::async(std::launch::async, one, path));
    }
    for (auto& p : pending) results.push_back(p.get());
    int code = kPass;
    for (const auto& [c, summary] : results) {
      std::cout << summary.dump() << '\n';
      if (summary.contains("error")) std::cerr << "error: " << summary["error"].get<std::string>() << '\n';
      code = std::max(code, c);
    }
    return code;
  }

  Outcome o = guarded([&]() -> Outcome {
    dsl::Env env = make_env(common.resolve());
    if (*check) return cmd_check(env, expr, prop);
    if (*equiv) return cmd_equiv(env, expr, expr2);
    if (*adm) return cmd_admits(env, expr, io::load_trace(trace_path));
    if (*hyper) {
      HyperArgs a{mode, {}, {}, budget};
      for (const auto& s : inserts) a.insert.push_back(observable_arg(s));
      for (const auto& s : steps) a.steps.push_back(Rational::parse(s));
      return cmd_hyper(env, expr, a);
    }
    if (*divide) return cmd_divide(env, expr, expr2, rel, fn);
    return cmd_oracle(env, expr, expr2, rel, fn);
  });
  return emit(o, common.out);
}
