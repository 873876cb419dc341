#pragma once

#include <functional>
#include <vector>

#include "tes/algebra.hpp"

namespace tes {

struct PortSpec {
  Atom name;
  std::vector<Value> domain{Value(0), Value(1)};
};

struct GammaSpec {
  Atom from, to;
  std::vector<Value> domain{Value(0), Value(1)};
  std::function<Value(const Value&)> transfer;  // identity when empty
};

Event port_event(const Atom& port, const Value& v);
EventSet port_events(const PortSpec& p);

// At any admissible time: one value on the port, or silence.
Component port(const PortSpec& p);
ObsRelationSpec gamma(const GammaSpec& g);
// Alternates {(m,0)} and {(m,1)}, starting with 0.
Component memory(const Atom& m);

using Domain = std::vector<Value>;
inline Domain bits() { return {Value(0), Value(1)}; }

Component sync_channel(const Atom& a, const Atom& b, const Domain& d = bits());
Component syncdrain_channel(const Atom& a, const Atom& b, const Domain& d = bits());
Component fifo_channel(const Atom& a, const Atom& b, const Atom& m = "m", const Domain& d = bits());
Component merger_channel(const Atom& a, const Atom& b, const Atom& c, const Domain& d = bits());

// The operand list in the order joined; used for reordering checks.
std::vector<Component> alternator_parts(const Atom& a, const Atom& b, const Atom& c, const Domain& d = bits());
Component alternator_circuit(const Atom& a, const Atom& b, const Atom& c, const Domain& d = bits());
Component fifo2_circuit(const Atom& a, const Atom& b, const Domain& d = bits());

// Operands and relation of the outermost Fifo product, for oracle comparison.
struct FifoParts {
  Component left, right;
  CompatRelation rel;
};
FifoParts fifo_parts(const Atom& a, const Atom& b, const Atom& m = "m", const Domain& d = bits());

}  // namespace tes
