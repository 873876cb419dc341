#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tes/algebra.hpp"
#include "tes/properties.hpp"

namespace tes::io {

using json = nlohmann::json;

struct FormatError : std::runtime_error {
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// Values: a string is an atom, an integer is an int, and the tagged objects
// {"rat"}, {"qty","unit"}, {"dir"}, {"pair"}, {"status"} cover the rest.
json to_json(const Value& v);
json to_json(const Event& e);
json to_json(const Observation& o);
Value value_from_json(const json& j);
Event event_from_json(const json& j);
Observation observation_from_json(const json& j);

// One observation per line: {"events":[...],"t":"p/q"}.
std::string observation_line(const Observation& o);
void write_trace(std::ostream& out, const TesPrefix& p);
std::string trace_text(const TesPrefix& p);
// Rejects malformed lines and non-increasing times.
TesPrefix read_trace(std::istream& in);
TesPrefix parse_trace(const std::string& text);
TesPrefix load_trace(const std::string& path);
void save_trace(const std::string& path, const TesPrefix& p);

// Depth-first listing of root-to-leaf prefixes, separated by blank lines.
void write_tree(std::ostream& out, const PrefixTree& t);
std::vector<TesPrefix> read_prefix_list(std::istream& in);

json verdict_record(const std::string& property, Verdict v, const std::optional<TesPrefix>& witness);

}  // namespace tes::io
