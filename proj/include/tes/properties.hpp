#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "tes/algebra.hpp"

namespace tes {

enum class Verdict { Violated, SatisfiedSoFar, Confirmed };
enum class PropertyKind { Safety, Liveness, Mixed };

std::string verdict_str(Verdict v);

struct TraceProperty {
  std::string name;
  EventSet scope;
  std::function<Verdict(const TesPrefix&)> monitor;
  PropertyKind kind = PropertyKind::Mixed;
  std::optional<PrefixTree> tree;  // set when the property is given constructively
};

struct NonConstructiveProperty : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

TraceProperty p_finite(EventSet e);
// Safety property whose members are exactly the nodes of `tree`. The scope
// defaults to the events the tree mentions.
TraceProperty tree_property(std::string name, PrefixTree tree, std::optional<EventSet> scope = std::nullopt);

struct SatResult {
  Verdict verdict = Verdict::SatisfiedSoFar;
  std::optional<TesPrefix> witness;  // shortest violating prefix
};

// Evaluates the monitor on every completed prefix up to the horizon.
SatResult satisfies(const PrefixTree& language, const TraceProperty& p);
SatResult satisfies(const Component& c, const TraceProperty& p, const TimeStamp& horizon, const Rational& grid,
                    std::size_t node_cap = default_node_cap());

// Interface is the smallest event set covering the tree.
Component componentize(const PrefixTree& tree, std::string name = "property");
// Interface is the property's scope.
Component componentize(const TraceProperty& p);

EquivResult satisfies_via_intersection(const Component& c, const Component& cp, const TimeStamp& horizon,
                                       const Rational& grid, std::size_t node_cap = default_node_cap());

Component coordinate(const Component& c, const Component& cp, const CompatRelation& rel, const CompositionFn& f);

struct HyperCheckResult {
  enum class Outcome { Pass, Counterexample, Inconclusive };
  Outcome outcome = Outcome::Pass;
  TesPrefix base;
  std::string mutation;
  TesPrefix rejected;
  std::size_t tried = 0;
  std::string str() const;
};

HyperCheckResult check_insert_closure(const Component& c, const std::vector<Observable>& x, const TimeStamp& horizon,
                                      const Rational& grid, std::size_t budget);
// Re-times every explored prefix onto k*step for each alternative step.
HyperCheckResult check_shift_closure(const Component& c, const TimeStamp& horizon, const Rational& grid,
                                     const std::vector<Rational>& steps, std::size_t budget);

}  // namespace tes
