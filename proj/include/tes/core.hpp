#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tes/rational.hpp"

namespace tes {

// Interned symbol. Equality is by identity; ordering is lexicographic so that
// canonical forms do not depend on interning order.
class Atom {
 public:
  Atom() : Atom(std::string_view{}) {}
  Atom(std::string_view text);   // NOLINT
  Atom(const char* text) : Atom(std::string_view(text)) {}  // NOLINT
  Atom(const std::string& text) : Atom(std::string_view(text)) {}  // NOLINT

  const std::string& str() const { return *text_; }
  std::size_t hash() const { return std::hash<const void*>{}(text_); }
  bool empty() const { return text_->empty(); }

  friend bool operator==(Atom a, Atom b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Atom a, Atom b) {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return *a.text_ <=> *b.text_;
  }

 private:
  const std::string* text_;
};

enum class Unit { W, Wh, N, m, mps };
enum class Dir { N, S, E, W };
enum class Status { OFF, ON };

std::string_view unit_name(Unit u);
std::optional<Unit> parse_unit(std::string_view s);
std::string_view dir_name(Dir d);
std::optional<Dir> parse_dir(std::string_view s);

struct Quantity {
  Rational amount;
  Unit unit;
  friend bool operator==(const Quantity&, const Quantity&) = default;
  friend std::strong_ordering operator<=>(const Quantity& a, const Quantity& b) {
    if (auto c = a.unit <=> b.unit; c != 0) return c;
    return a.amount <=> b.amount;
  }
};

class Value;
using ValuePair = std::pair<Value, Value>;

class Value {
 public:
  using Rep = std::variant<Atom, std::int64_t, Rational, Quantity, Dir, std::shared_ptr<const ValuePair>, Status>;

  Value() : rep_(Atom()) {}
  Value(Atom a) : rep_(a) {}                          // NOLINT
  Value(const char* a) : rep_(Atom(a)) {}             // NOLINT
  Value(int v) : rep_(std::int64_t{v}) {}             // NOLINT
  Value(std::int64_t v) : rep_(v) {}                  // NOLINT
  Value(Rational r) : rep_(r) {}                      // NOLINT
  Value(Quantity q) : rep_(q) {}                      // NOLINT
  Value(Dir d) : rep_(d) {}                           // NOLINT
  Value(Status s) : rep_(s) {}                        // NOLINT
  Value(Value a, Value b) : rep_(std::make_shared<const ValuePair>(std::move(a), std::move(b))) {}

  const Rep& rep() const { return rep_; }
  template <class T>
  bool is() const { return std::holds_alternative<T>(rep_); }
  template <class T>
  const T& as() const { return std::get<T>(rep_); }

  bool is_pair() const { return is<std::shared_ptr<const ValuePair>>(); }
  const Value& first() const { return as<std::shared_ptr<const ValuePair>>()->first; }
  const Value& second() const { return as<std::shared_ptr<const ValuePair>>()->second; }

  friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  std::string str() const;
  std::size_t hash() const;

 private:
  Rep rep_;
};

Value qty(Rational amount, Unit u);
Value position(Rational x, Rational y);

struct Event {
  Atom name;
  Atom subject;
  Value payload;

  friend bool operator==(const Event&, const Event&) = default;
  friend std::strong_ordering operator<=>(const Event& a, const Event& b);

  std::string str() const;
  std::size_t hash() const;
};

// Sorted, duplicate-free set of events. Also used for interfaces.
class Observable {
 public:
  Observable() = default;
  Observable(std::initializer_list<Event> events);
  explicit Observable(std::vector<Event> events);

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  auto begin() const { return events_.begin(); }
  auto end() const { return events_.end(); }

  bool contains(const Event& e) const;
  bool subset_of(const Observable& o) const;
  void insert(const Event& e);

  friend bool operator==(const Observable&, const Observable&) = default;
  friend std::strong_ordering operator<=>(const Observable& a, const Observable& b);

  std::string str() const;

 private:
  std::vector<Event> events_;
};

using EventSet = Observable;

Observable obs_union(const Observable& a, const Observable& b);
Observable obs_intersection(const Observable& a, const Observable& b);
Observable obs_difference(const Observable& a, const Observable& b);

struct Observation {
  Observable observable;
  TimeStamp time;

  friend bool operator==(const Observation&, const Observation&) = default;
  friend std::strong_ordering operator<=>(const Observation& a, const Observation& b) {
    if (auto c = a.time <=> b.time; c != 0) return c;
    return a.observable <=> b.observable;
  }
  std::string str() const;
};

using TesPrefix = std::vector<Observation>;
using ObsFn = std::function<Observable(const Observable&, const Observable&)>;

// Strictly increasing non-negative times.
bool is_valid_prefix(const TesPrefix& p);
bool within_interface(const TesPrefix& p, const EventSet& e);
std::string prefix_str(const TesPrefix& p);

TesPrefix merge_prefixes(const TesPrefix& p1, const TesPrefix& p2, const ObsFn& f);

using IndexTriple = std::array<std::size_t, 3>;
// Exhausted prefixes count as infinitely late; stops once all three are exhausted.
std::vector<IndexTriple> enumerate_triple(const TesPrefix& p1, const TesPrefix& p2, const TesPrefix& p3);

TesPrefix project_prefix(const TesPrefix& p, const EventSet& e);

}  // namespace tes

template <>
struct std::hash<tes::Event> {
  std::size_t operator()(const tes::Event& e) const noexcept { return e.hash(); }
};
