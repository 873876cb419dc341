#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "tes/dsl.hpp"
#include "tes/trace_io.hpp"

namespace tes::cli {

using io::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kConfigVersion = 1;

// Parsed scenario file. See scenarios/ for examples of every field.
struct Config {
  std::string expression;
  TimeStamp horizon{4};
  Rational grid{1};
  std::size_t max_traces = 16;
  std::uint64_t seed = 1;
  std::size_t node_cap = default_node_cap();
  std::optional<std::string> property;
  json source;  // the file as read
};

Config parse_config(const json& j);
Config load_config(const std::string& path);
// The scenario, declared components and limits the expression is built in.
dsl::Env make_env(const Config& c);
// Calibrated two-robot scenario for commands run without a config.
dsl::Env default_env(const TimeStamp& horizon, const Rational& grid, std::size_t node_cap);

TraceProperty property_by_name(const std::string& name, const cps::Scenario& sc);

struct RunResult {
  int exit_code = 0;  // 0 done, 2 overflow
  json summary;
};

// Enumerates the expression's completed prefixes, writes up to max_traces of
// them (a seeded sample when there are more) as trace_NNNN.jsonl into
// out_dir, and a summary.json next to them.
RunResult run_scenario(const Config& c, const std::string& out_dir);

}  // namespace tes::cli
