#include "tes/core.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace tes {

namespace {

struct AtomTable {
  std::mutex mu;
  std::deque<std::string> storage;
  std::unordered_map<std::string_view, const std::string*> index;
};

AtomTable& atoms() {
  static AtomTable table;
  return table;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Atom::Atom(std::string_view text) {
  auto& t = atoms();
  std::lock_guard lock(t.mu);
  if (auto it = t.index.find(text); it != t.index.end()) {
    text_ = it->second;
    return;
  }
  const std::string& stored = t.storage.emplace_back(text);
  t.index.emplace(std::string_view(stored), &stored);
  text_ = &stored;
}

std::string_view unit_name(Unit u) {
  switch (u) {
    case Unit::W: return "W";
    case Unit::Wh: return "Wh";
    case Unit::N: return "N";
    case Unit::m: return "m";
    case Unit::mps: return "m/s";
  }
  return "?";
}

std::optional<Unit> parse_unit(std::string_view s) {
  for (Unit u : {Unit::W, Unit::Wh, Unit::N, Unit::m, Unit::mps})
    if (unit_name(u) == s) return u;
  return std::nullopt;
}

std::string_view dir_name(Dir d) {
  switch (d) {
    case Dir::N: return "N";
    case Dir::S: return "S";
    case Dir::E: return "E";
    case Dir::W: return "W";
  }
  return "?";
}

std::optional<Dir> parse_dir(std::string_view s) {
  for (Dir d : {Dir::N, Dir::S, Dir::E, Dir::W})
    if (dir_name(d) == s) return d;
  return std::nullopt;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return a.rep_.index() <=> b.rep_.index();
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.rep_);
        if constexpr (std::is_same_v<T, std::shared_ptr<const ValuePair>>) {
          if (x == y) return std::strong_ordering::equal;
          if (auto c = x->first <=> y->first; c != 0) return c;
          return x->second <=> y->second;
        } else {
          return x <=> y;
        }
      },
      a.rep_);
}

std::string Value::str() const {
  return std::visit(overloaded{
                        [](Atom a) { return a.str(); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](const Rational& r) { return r.str(); },
                        [](const Quantity& q) { return q.amount.str() + std::string(unit_name(q.unit)); },
                        [](Dir d) { return std::string(dir_name(d)); },
                        [](const std::shared_ptr<const ValuePair>& p) {
                          return "(" + p->first.str() + "," + p->second.str() + ")";
                        },
                        [](Status s) { return std::string(s == Status::ON ? "ON" : "OFF"); },
                    },
                    rep_);
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

std::size_t Value::hash() const {
  std::size_t h = rep_.index();
  return std::visit(
      [h](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Atom>) {
          return mix(h, v.hash());
        } else if constexpr (std::is_same_v<T, Rational>) {
          return mix(h, std::hash<Rational>{}(v));
        } else if constexpr (std::is_same_v<T, Quantity>) {
          return mix(mix(h, std::hash<Rational>{}(v.amount)), static_cast<std::size_t>(v.unit));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const ValuePair>>) {
          return mix(mix(h, v->first.hash()), v->second.hash());
        } else {
          return mix(h, static_cast<std::size_t>(v));
        }
      },
      rep_);
}

std::size_t Event::hash() const { return mix(mix(name.hash(), subject.hash()), payload.hash()); }

Value qty(Rational amount, Unit u) { return Value(Quantity{amount, u}); }
Value position(Rational x, Rational y) { return Value(qty(x, Unit::m), qty(y, Unit::m)); }

std::strong_ordering operator<=>(const Event& a, const Event& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  return a.payload <=> b.payload;
}

std::string Event::str() const {
  std::string s = name.str();
  if (!subject.empty()) s += "(" + subject.str() + ")";
  return s + ";" + payload.str();
}

Observable::Observable(std::initializer_list<Event> events) : Observable(std::vector<Event>(events)) {}

Observable::Observable(std::vector<Event> events) : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

bool Observable::contains(const Event& e) const {
  return std::binary_search(events_.begin(), events_.end(), e);
}

bool Observable::subset_of(const Observable& o) const {
  if (events_.size() * 8 < o.events_.size())
    return std::all_of(events_.begin(), events_.end(), [&](const Event& e) { return o.contains(e); });
  return std::includes(o.events_.begin(), o.events_.end(), events_.begin(), events_.end());
}

void Observable::insert(const Event& e) {
  auto it = std::lower_bound(events_.begin(), events_.end(), e);
  if (it == events_.end() || !(*it == e)) events_.insert(it, e);
}

std::strong_ordering operator<=>(const Observable& a, const Observable& b) {
  return std::lexicographical_compare_three_way(a.events_.begin(), a.events_.end(), b.events_.begin(),
                                                b.events_.end());
}

std::string Observable::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (i) s += ", ";
    s += events_[i].str();
  }
  return s + "}";
}

Observable obs_union(const Observable& a, const Observable& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Event> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Observable(std::move(out));
}

Observable obs_intersection(const Observable& a, const Observable& b) {
  std::vector<Event> out;
  if (a.size() * 8 < b.size() || b.size() * 8 < a.size()) {
    const Observable& small = a.size() < b.size() ? a : b;
    const Observable& large = a.size() < b.size() ? b : a;
    for (const auto& e : small)
      if (large.contains(e)) out.push_back(e);
    return Observable(std::move(out));
  }
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Observable(std::move(out));
}

Observable obs_difference(const Observable& a, const Observable& b) {
  std::vector<Event> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Observable(std::move(out));
}

std::string Observation::str() const { return "(" + observable.str() + ", " + time.str() + ")"; }

bool is_valid_prefix(const TesPrefix& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].time.sign() < 0) return false;
    if (i > 0 && !(p[i - 1].time < p[i].time)) return false;
  }
  return true;
}

bool within_interface(const TesPrefix& p, const EventSet& e) {
  return std::all_of(p.begin(), p.end(), [&](const Observation& o) { return o.observable.subset_of(e); });
}

std::string prefix_str(const TesPrefix& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += p[i].str();
  }
  return s + ">";
}

TesPrefix merge_prefixes(const TesPrefix& p1, const TesPrefix& p2, const ObsFn& f) {
  TesPrefix out;
  out.reserve(p1.size() + p2.size());
  std::size_t i = 0, j = 0;
  while (i < p1.size() || j < p2.size()) {
    if (j == p2.size() || (i < p1.size() && p1[i].time < p2[j].time)) {
      out.push_back(p1[i++]);
    } else if (i == p1.size() || p2[j].time < p1[i].time) {
      out.push_back(p2[j++]);
    } else {
      out.push_back({f(p1[i].observable, p2[j].observable), p1[i].time});
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<IndexTriple> enumerate_triple(const TesPrefix& p1, const TesPrefix& p2, const TesPrefix& p3) {
  std::vector<IndexTriple> out;
  const TesPrefix* ps[3] = {&p1, &p2, &p3};
  IndexTriple idx{0, 0, 0};
  auto live = [&](int k) { return idx[k] < ps[k]->size(); };
  while (live(0) || live(1) || live(2)) {
    out.push_back(idx);
    std::optional<TimeStamp> least;
    for (int k = 0; k < 3; ++k)
      if (live(k) && (!least || (*ps[k])[idx[k]].time < *least)) least = (*ps[k])[idx[k]].time;
    IndexTriple next = idx;
    for (int k = 0; k < 3; ++k)
      if (live(k) && (*ps[k])[idx[k]].time == *least) ++next[k];
    idx = next;
  }
  if (out.empty() || out.back() != idx) out.push_back(idx);
  return out;
}

TesPrefix project_prefix(const TesPrefix& p, const EventSet& e) {
  TesPrefix out;
  out.reserve(p.size());
  for (const auto& o : p) out.push_back({obs_intersection(o.observable, e), o.time});
  return out;
}

}  // namespace tes
