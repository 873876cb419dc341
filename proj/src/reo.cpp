#include "tes/reo.hpp"

namespace tes {

Event port_event(const Atom& port, const Value& v) { return {port, "", v}; }

EventSet port_events(const PortSpec& p) {
  EventSet e;
  for (const auto& v : p.domain) e.insert(port_event(p.name, v));
  return e;
}

Component port(const PortSpec& p) {
  if (p.domain.empty()) throw std::invalid_argument("port " + p.name.str() + " has an empty domain");
  std::vector<Observable> offers{Observable{}};
  for (const auto& v : p.domain) offers.push_back(Observable{port_event(p.name, v)});
  Component c =
      make_component("P" + p.name.str(), port_events(p), State::of(0), [offers](const State& s, const TimeStamp&) {
        std::vector<StepChoice> out;
        for (const auto& o : offers) out.push_back({o, std::nullopt, s});
        return out;
      });
  c.ignores_last = true;
  return c;
}

ObsRelationSpec gamma(const GammaSpec& g) {
  ObsRelationSpec s;
  for (const auto& v : g.domain) {
    Value w = g.transfer ? g.transfer(v) : v;
    s.add({EventPattern::exact(port_event(g.from, v)), EventPattern::exact(port_event(g.to, w)), {},
           g.from.str() + "->" + g.to.str()});
  }
  return s;
}

Component memory(const Atom& m) {
  return alternating_component("M" + m.str(), port_event(m, Value(0)), port_event(m, Value(1)));
}

namespace {

Component named(Component c, std::string name) {
  c.name = std::move(name);
  return c;
}

ObsRelationSpec any_pair(const Atom& a, const Atom& b) {
  ObsRelationSpec s;
  EventPattern l, r;
  l.name = a;
  r.name = b;
  s.add({l, r, {}, a.str() + "*" + b.str()});
  return s;
}

}  // namespace

Component sync_channel(const Atom& a, const Atom& b, const Domain& d) {
  return named(product(port({a, d}), port({b, d}), sync_relation(gamma({a, b, d, {}})), union_fn()),
               "Sync(" + a.str() + "," + b.str() + ")");
}

Component syncdrain_channel(const Atom& a, const Atom& b, const Domain& d) {
  return named(product(port({a, d}), port({b, d}), sync_relation(any_pair(a, b)), union_fn()),
               "Syncdrain(" + a.str() + "," + b.str() + ")");
}

FifoParts fifo_parts(const Atom& a, const Atom& b, const Atom& m, const Domain& d) {
  Component left = product(port({a, d}), memory(m),
                           sync_relation(gamma({a, m, d, [](const Value&) { return Value(0); }})), union_fn());
  Component right = product(port({b, d}), memory(m),
                            sync_relation(gamma({b, m, d, [](const Value&) { return Value(1); }})), union_fn());
  Domain bits{Value(0), Value(1)};
  CompatRelation rel = or_relation(intl_relation(gamma({a, b, d, {}})), sync_relation(gamma({m, m, bits, {}})));
  return {std::move(left), std::move(right), std::move(rel)};
}

Component fifo_channel(const Atom& a, const Atom& b, const Atom& m, const Domain& d) {
  FifoParts f = fifo_parts(a, b, m, d);
  return named(product(f.left, f.right, f.rel, union_fn()), "Fifo(" + a.str() + "," + b.str() + ")");
}

Component merger_channel(const Atom& a, const Atom& b, const Atom& c, const Domain& d) {
  Component ab = product(port({a, d}), port({b, d}), excl_relation(any_pair(a, b)), union_fn());
  CompatRelation out = or_relation(sync_relation(gamma({a, c, d, {}})), sync_relation(gamma({b, c, d, {}})));
  return named(product(ab, port({c, d}), out, union_fn()),
               "Merger(" + a.str() + "," + b.str() + "," + c.str() + ")");
}

std::vector<Component> alternator_parts(const Atom& a, const Atom& b, const Atom& c, const Domain& d) {
  return {sync_channel(a, "c1", d), fifo_channel("x", "c2", "m", d), syncdrain_channel(a, b, d),
          sync_channel(b, "x", d), merger_channel("c1", "c2", c, d)};
}

Component alternator_circuit(const Atom& a, const Atom& b, const Atom& c, const Domain& d) {
  auto parts = alternator_parts(a, b, c, d);
  Component out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = join(out, parts[i]);
  return named(out, "Alternator(" + a.str() + "," + b.str() + "," + c.str() + ")");
}

Component fifo2_circuit(const Atom& a, const Atom& b, const Domain& d) {
  return named(join(fifo_channel(a, "x", "m1", d), fifo_channel("x", b, "m2", d)),
               "Fifo2(" + a.str() + "," + b.str() + ")");
}

}  // namespace tes
