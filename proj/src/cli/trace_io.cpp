#include "tes/trace_io.hpp"

#include <fstream>
#include <sstream>

namespace tes::io {

namespace {

struct overloaded_json {
  json operator()(Atom a) const { return a.str(); }
  json operator()(std::int64_t v) const { return v; }
  json operator()(const Rational& r) const { return {{"rat", r.str()}}; }
  json operator()(const Quantity& q) const { return {{"qty", q.amount.str()}, {"unit", unit_name(q.unit)}}; }
  json operator()(Dir d) const { return {{"dir", dir_name(d)}}; }
  json operator()(const std::shared_ptr<const ValuePair>& p) const {
    return {{"pair", json::array({to_json(p->first), to_json(p->second)})}};
  }
  json operator()(Status s) const { return {{"status", s == Status::ON ? "ON" : "OFF"}}; }
};

Rational rational_field(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a rational string");
  return Rational::parse(j.get<std::string>());
}

const json& only_key(const json& j, const char* key, std::size_t size = 1) {
  if (j.size() != size || !j.contains(key)) throw std::invalid_argument("malformed value " + j.dump());
  return j.at(key);
}

}  // namespace

json to_json(const Value& v) { return std::visit(overloaded_json{}, v.rep()); }

json to_json(const Event& e) {
  return {{"name", e.name.str()}, {"subject", e.subject.str()}, {"payload", to_json(e.payload)}};
}

json to_json(const Observation& o) {
  json events = json::array();
  for (const auto& e : o.observable) events.push_back(to_json(e));
  return {{"t", o.time.str()}, {"events", std::move(events)}};
}

Value value_from_json(const json& j) {
  if (j.is_string()) return Atom(j.get<std::string>());
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (!j.is_object()) throw std::invalid_argument("malformed value " + j.dump());
  if (j.contains("rat")) return rational_field(only_key(j, "rat"));
  if (j.contains("qty")) {
    auto u = parse_unit(only_key(j, "unit", 2).get<std::string>());
    if (!u) throw std::invalid_argument("unknown unit in " + j.dump());
    return qty(rational_field(j.at("qty")), *u);
  }
  if (j.contains("dir")) {
    auto d = parse_dir(only_key(j, "dir").get<std::string>());
    if (!d) throw std::invalid_argument("unknown direction in " + j.dump());
    return *d;
  }
  if (j.contains("pair")) {
    const json& p = only_key(j, "pair");
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("pair needs two values");
    return Value(value_from_json(p[0]), value_from_json(p[1]));
  }
  if (j.contains("status")) {
    std::string s = only_key(j, "status").get<std::string>();
    if (s != "ON" && s != "OFF") throw std::invalid_argument("unknown status " + s);
    return s == "ON" ? Status::ON : Status::OFF;
  }
  throw std::invalid_argument("malformed value " + j.dump());
}

Event event_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("payload"))
    throw std::invalid_argument("event needs name and payload");
  for (const auto& [k, _] : j.items())
    if (k != "name" && k != "subject" && k != "payload") throw std::invalid_argument("unknown event field " + k);
  return {Atom(j.at("name").get<std::string>()), Atom(j.value("subject", std::string())),
          value_from_json(j.at("payload"))};
}

Observation observation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j.contains("events") || j.size() != 2 || !j.at("events").is_array())
    throw std::invalid_argument("observation needs exactly t and events");
  std::vector<Event> events;
  for (const auto& e : j.at("events")) events.push_back(event_from_json(e));
  return {Observable(std::move(events)), rational_field(j.at("t"))};
}

std::string observation_line(const Observation& o) { return to_json(o).dump(); }

void write_trace(std::ostream& out, const TesPrefix& p) {
  for (const auto& o : p) out << observation_line(o) << '\n';
}

std::string trace_text(const TesPrefix& p) {
  std::ostringstream out;
  write_trace(out, p);
  return out.str();
}

namespace {

// Reads observations until a blank line or the end; returns false at the end.
bool read_block(std::istream& in, std::size_t& line_no, TesPrefix& out, bool stop_at_blank) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (stop_at_blank && !out.empty()) return true;
      continue;
    }
    Observation o;
    try {
      o = observation_from_json(json::parse(line));
    } catch (const std::exception& e) {
      throw FormatError(line_no, e.what());
    }
    if (o.time.sign() < 0) throw FormatError(line_no, "negative time " + o.time.str());
    if (!out.empty() && !(out.back().time < o.time))
      throw FormatError(line_no, "time " + o.time.str() + " does not increase");
    out.push_back(std::move(o));
  }
  return false;
}

}  // namespace

TesPrefix read_trace(std::istream& in) {
  std::size_t line_no = 0;
  TesPrefix p;
  read_block(in, line_no, p, false);
  return p;
}

TesPrefix parse_trace(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

TesPrefix load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_trace(in);
}

void save_trace(const std::string& path, const TesPrefix& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace(out, p);
}

void write_tree(std::ostream& out, const PrefixTree& t) {
  if (t.empty()) return;
  bool first = true;
  TesPrefix path;
  std::function<void(std::size_t)> visit = [&](std::size_t n) {
    const auto& node = t.node(n);
    if (n != t.root()) path.push_back(node.edge);
    if (node.children.empty()) {
      if (!first) out << '\n';
      first = false;
      write_trace(out, path);
    }
    for (auto c : node.children) visit(c);
    if (n != t.root()) path.pop_back();
  };
  visit(t.root());
}

std::vector<TesPrefix> read_prefix_list(std::istream& in) {
  std::vector<TesPrefix> all;
  std::size_t line_no = 0;
  for (;;) {
    TesPrefix p;
    bool more = read_block(in, line_no, p, true);
    if (!p.empty() || all.empty()) all.push_back(std::move(p));
    if (!more) break;
  }
  return all;
}

json verdict_record(const std::string& property, Verdict v, const std::optional<TesPrefix>& witness) {
  json w = nullptr;
  if (witness) {
    w = json::array();
    for (const auto& o : *witness) w.push_back(to_json(o));
  }
  return {{"property", property}, {"verdict", verdict_str(v)}, {"witness", w}};
}

}  // namespace tes::io
