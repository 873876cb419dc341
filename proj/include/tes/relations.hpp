#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "tes/core.hpp"

namespace tes {

struct EventPattern {
  std::optional<Atom> name;
  std::optional<Atom> subject;
  std::optional<Value> payload;

  bool matches(const Event& e) const;
  static EventPattern exact(const Event& e) { return {e.name, e.subject, e.payload}; }
  std::string str() const;
};

using PayloadLink = std::function<bool(const Value&, const Value&)>;

// Relates the singleton observables {l} and {r} when both patterns match and
// the payload link accepts (left payload, right payload).
struct GeneratorPair {
  EventPattern left;
  EventPattern right;
  PayloadLink link;  // empty means always
  std::string label;

  bool matches(const Event& l, const Event& r) const;
};

// Union closure of singleton generator pairs.
class ObsRelationSpec {
 public:
  ObsRelationSpec() = default;
  explicit ObsRelationSpec(std::vector<GeneratorPair> gens) : gens_(std::move(gens)) {}

  const std::vector<GeneratorPair>& generators() const { return gens_; }
  void add(GeneratorPair g) { gens_.push_back(std::move(g)); }

  bool matches(const Event& l, const Event& r) const;
  // Adds the mirrored generator for every pair.
  ObsRelationSpec symmetric_closure() const;
  ObsRelationSpec merged_with(const ObsRelationSpec& other) const;

 private:
  std::vector<GeneratorPair> gens_;
};

ObsRelationSpec identity_spec(const EventSet& e);

// Every event of o1 has a partner in o2 and vice versa; never true when either side is empty.
bool related(const ObsRelationSpec& spec, const Observable& o1, const Observable& o2);
// Some event of o1 has a partner in o2.
bool overlaps(const ObsRelationSpec& spec, const Observable& o1, const Observable& o2);
bool is_independent(const ObsRelationSpec& spec, const Observable& o, const EventSet& e);
// Events of o that have a partner in e, as left operand.
Observable partnered_left(const ObsRelationSpec& spec, const Observable& o, const EventSet& e);
Observable partnered_right(const ObsRelationSpec& spec, const EventSet& e, const Observable& o);

class CompatRelation {
 public:
  enum class Kind { Free, Sync, Excl, Intl, And, Or };

  Kind kind() const { return kind_; }
  const ObsRelationSpec& spec() const { return *spec_; }
  const CompatRelation& lhs() const { return *a_; }
  const CompatRelation& rhs() const { return *b_; }

  static CompatRelation free();
  static CompatRelation sync(ObsRelationSpec spec);
  static CompatRelation excl(ObsRelationSpec spec);
  static CompatRelation intl(ObsRelationSpec spec);
  static CompatRelation conj(CompatRelation a, CompatRelation b);
  static CompatRelation disj(CompatRelation a, CompatRelation b);

  std::string str() const;

 private:
  Kind kind_ = Kind::Free;
  std::shared_ptr<const ObsRelationSpec> spec_;
  std::shared_ptr<const CompatRelation> a_, b_;
};

inline CompatRelation free_relation() { return CompatRelation::free(); }
inline CompatRelation sync_relation(ObsRelationSpec s) { return CompatRelation::sync(std::move(s)); }
inline CompatRelation excl_relation(ObsRelationSpec s) { return CompatRelation::excl(std::move(s)); }
inline CompatRelation intl_relation(ObsRelationSpec s) { return CompatRelation::intl(std::move(s)); }
inline CompatRelation and_relation(CompatRelation a, CompatRelation b) { return CompatRelation::conj(std::move(a), std::move(b)); }
inline CompatRelation or_relation(CompatRelation a, CompatRelation b) { return CompatRelation::disj(std::move(a), std::move(b)); }

// A head check specialised to a pair of interfaces. A null head stands for an
// observation that lies beyond the exploration window: its time exceeds every
// concrete head and its observable is unknown.
class BoundCompat {
 public:
  BoundCompat(const CompatRelation& rel, const EventSet& e1, const EventSet& e2);
  bool check(const Observation* h1, const Observation* h2) const;

  // Outcome for a head strictly earlier than the other side's next head,
  // whatever that head turns out to be.
  enum class Alone { Fails, Holds, Deferred };
  Alone alone(bool first, const Observation& o) const;

 private:
  CompatRelation::Kind kind_;
  std::shared_ptr<const ObsRelationSpec> spec_;
  std::shared_ptr<const std::unordered_set<Event>> partnered1_, partnered2_;
  std::vector<BoundCompat> parts_;
};

bool head_check(const CompatRelation& rel, const EventSet& e1, const EventSet& e2, const Observation& o1,
                const Observation& o2);

struct DomainTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Property1Report {
  std::array<bool, 5> holds{true, true, true, true, true};
  std::array<std::string, 5> witness;
  bool all() const { return holds[0] && holds[1] && holds[2] && holds[3] && holds[4]; }
};

// Exhaustive over all subsets of e1 ∪ e2.
Property1Report check_property1(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2,
                                std::size_t max_events = 4);
bool is_symmetric(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2, std::size_t max_events = 4);
bool is_coreflexive(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2, std::size_t max_events = 4);

}  // namespace tes
