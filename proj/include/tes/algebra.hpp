#pragma once

#include <cstddef>
#include <functional>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <typeinfo>
#include <vector>

#include "tes/core.hpp"
#include "tes/relations.hpp"

namespace tes {

// Immutable component state. Values of any totally ordered type; states of
// different types order by type.
class State {
 public:
  State() = default;
  template <class T>
  static State of(T value) {
    State s;
    s.p_ = std::make_shared<const Model<T>>(std::move(value));
    return s;
  }
  template <class T>
  const T& as() const { return static_cast<const Model<T>*>(p_.get())->value; }
  bool empty() const { return !p_; }

  friend bool operator==(const State& a, const State& b) { return (a <=> b) == 0; }
  friend std::weak_ordering operator<=>(const State& a, const State& b) {
    if (a.p_ == b.p_) return std::weak_ordering::equivalent;
    if (!a.p_ || !b.p_) return a.p_ ? std::weak_ordering::greater : std::weak_ordering::less;
    return a.p_->compare(*b.p_);
  }

 private:
  struct Base {
    virtual ~Base() = default;
    virtual const std::type_info& type() const = 0;
    virtual std::weak_ordering compare(const Base& o) const = 0;
  };
  template <class T>
  struct Model final : Base {
    explicit Model(T v) : value(std::move(v)) {}
    const std::type_info& type() const override { return typeid(T); }
    std::weak_ordering compare(const Base& o) const override {
      if (type() != o.type()) return type().before(o.type()) ? std::weak_ordering::less : std::weak_ordering::greater;
      const T& w = static_cast<const Model&>(o).value;
      if (value < w) return std::weak_ordering::less;
      if (w < value) return std::weak_ordering::greater;
      return std::weak_ordering::equivalent;
    }
    T value;
  };
  std::shared_ptr<const Base> p_;
};

// The concrete times an exploration may use. Anything after `limit` is
// "beyond" and never materialised.
struct TimeDomain {
  std::vector<TimeStamp> times;  // sorted
  TimeStamp limit;
  bool off_grid_exact = true;  // whether Exact times <= limit outside `times` are allowed

  static TimeDomain grid(const TimeStamp& horizon, const Rational& step);
  static TimeDomain of_prefix(const TesPrefix& p);

  bool beyond(const TimeStamp& t) const { return limit < t; }
  bool allows_exact(const TimeStamp& t) const;
  // Candidate times strictly after `last` and at least `dwell` later.
  std::vector<TimeStamp> after(const TimeStamp& last, const Rational& dwell) const;
};

struct Step {
  Observation obs;
  State next;
  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

struct Steps {
  std::vector<Step> steps;
  bool idle = false;  // the component may stay silent until past the domain limit
};

class Behavior {
 public:
  virtual ~Behavior() = default;
  virtual Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const = 0;
  // The state after time moves to `now` without a step; only called on
  // components that ignore their last time.
  virtual State advance(const State& s, const TimeStamp& now) const {
    (void)now;
    return s;
  }
};

struct InterfaceViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct EnumerationOverflow : std::runtime_error {
  explicit EnumerationOverflow(std::size_t cap)
      : std::runtime_error("prefix enumeration exceeded node cap " + std::to_string(cap)), cap(cap) {}
  std::size_t cap;
};

struct Component {
  std::string name;
  EventSet interface;
  State init;
  Rational min_dwell{1, 1000};
  std::shared_ptr<const Behavior> behavior;
  // Steps after any time L >= last do not depend on last itself, so a product
  // may move last forward to its own latest step.
  bool ignores_last = false;

  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const {
    return behavior->next(s, last, dom);
  }
};

// Symbolic step: either an exact time or any admissible time after the last one.
struct StepChoice {
  Observable observable;
  std::optional<TimeStamp> exact;
  State next;
};

using Stepper = std::function<std::vector<StepChoice>(const State&, const TimeStamp& last)>;
// Choices at a concrete candidate time; every such component may idle.
using TimedStepper =
    std::function<std::vector<std::pair<Observable, State>>(const State&, const TimeStamp& last, const TimeStamp& t)>;

Component make_component(std::string name, EventSet iface, State init, Stepper stepper,
                         Rational min_dwell = Rational(1, 1000));
Component make_timed_component(std::string name, EventSet iface, State init, TimedStepper stepper,
                               Rational min_dwell = Rational(1, 1000));

struct CompositionFn {
  std::string name;
  ObsFn fn;
};
CompositionFn union_fn();
CompositionFn inter_fn();

Component product(const Component& c1, const Component& c2, const CompatRelation& rel, const CompositionFn& f);
Component intersection(const Component& c1, const Component& c2);
Component join(const Component& c1, const Component& c2);

class PrefixTree {
 public:
  struct Node {
    Observation edge;
    bool idle = false;
    std::vector<std::size_t> children;  // sorted by edge
  };

  PrefixTree();  // the empty language
  std::size_t root() const { return root_; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  bool empty() const { return root_ == npos; }
  std::size_t size() const;

  // Every root-to-node path; prefix-closed.
  std::vector<TesPrefix> prefixes() const;
  // Paths that end where the component may go silent past the limit.
  std::vector<TesPrefix> completed() const;
  bool contains(const TesPrefix& p) const;
  bool completes(const TesPrefix& p) const;

  // Prefix closure of the given completed prefixes.
  static PrefixTree from_completed(const std::vector<TesPrefix>& done);
  static PrefixTree from_prefixes_all_idle(const std::vector<TesPrefix>& all);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
  std::size_t root_ = npos;
};

struct TreeDiff {
  TesPrefix prefix;
  bool in_first = false;       // the prefix belongs to the first language only
  bool completion_only = false;  // both contain it, only one completes it
  std::string str() const;
};

std::optional<TreeDiff> tree_difference(const PrefixTree& a, const PrefixTree& b);
bool operator==(const PrefixTree& a, const PrefixTree& b);

std::size_t default_node_cap();  // 10^6 unless TES_NODE_CAP is set

PrefixTree explore(const Component& c, const TimeDomain& dom, std::size_t node_cap = default_node_cap());
PrefixTree prefixes(const Component& c, const TimeStamp& horizon, const Rational& grid,
                    std::size_t node_cap = default_node_cap());
bool admits(const Component& c, const TesPrefix& p);

struct EquivResult {
  bool equal = false;
  std::optional<TreeDiff> witness;
};
EquivResult equiv_upto(const Component& c1, const Component& c2, const TimeStamp& horizon, const Rational& grid,
                       std::size_t node_cap = default_node_cap());

// Head-wise walk of two finite sequences; an exhausted side is "beyond".
bool lifted_check(const BoundCompat& rel, const TesPrefix& p1, const TesPrefix& p2);

PrefixTree divide_bounded(const Component& c1, const Component& c2, const CompatRelation& rel,
                          const CompositionFn& f, const TimeStamp& horizon, const Rational& grid,
                          std::size_t node_cap = default_node_cap());

// stem, then cycle, then cycle shifted by `shift`, 2*shift, ...
Component const_component(std::string name, TesPrefix stem, TesPrefix cycle, Rational shift);
// Chooses d0 in `initial` once; each step emits {event(f(d0,t))} at a sample time.
Component sampled_component(std::string name, Atom event_name, Atom subject,
                            std::function<Value(const Value& d0, const TimeStamp& t)> f, std::vector<Value> initial,
                            std::vector<TimeStamp> sample_times);
Component alternating_component(std::string name, Event e0, Event e1);
// Replays a tree; children at exact times, idle where the tree is.
Component tree_component(std::string name, PrefixTree tree, std::optional<EventSet> iface = std::nullopt);

}  // namespace tes
