#include "tes/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <cstdlib>

namespace tes {

TimeDomain TimeDomain::grid(const TimeStamp& horizon, const Rational& step) {
  if (step.sign() <= 0) throw std::invalid_argument("grid step must be positive");
  TimeDomain d;
  d.limit = horizon;
  for (Rational t = step; t <= horizon; t += step) d.times.push_back(t);
  return d;
}

TimeDomain TimeDomain::of_prefix(const TesPrefix& p) {
  TimeDomain d;
  for (const auto& o : p) d.times.push_back(o.time);
  d.limit = p.empty() ? Rational(0) : p.back().time;
  d.off_grid_exact = false;
  return d;
}

bool TimeDomain::allows_exact(const TimeStamp& t) const {
  return off_grid_exact || std::binary_search(times.begin(), times.end(), t);
}

std::vector<TimeStamp> TimeDomain::after(const TimeStamp& last, const Rational& dwell) const {
  std::vector<TimeStamp> out;
  for (auto it = std::upper_bound(times.begin(), times.end(), last); it != times.end(); ++it)
    if (!(*it - last < dwell)) out.push_back(*it);
  return out;
}

namespace {

void require_within(const Component& c, const Observable& o) {
  if (!o.subset_of(c.interface))
    throw InterfaceViolation(c.name + " emitted " + o.str() + " outside its interface");
}

class SymbolicBehavior : public Behavior {
 public:
  SymbolicBehavior(EventSet iface, Stepper s, Rational dwell, std::string name)
      : iface_(std::move(iface)), stepper_(std::move(s)), dwell_(dwell), name_(std::move(name)) {}

  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const override {
    Steps out;
    std::optional<std::vector<TimeStamp>> anytimes;
    for (auto& ch : stepper_(s, last)) {
      if (!ch.observable.subset_of(iface_))
        throw InterfaceViolation(name_ + " emitted " + ch.observable.str() + " outside its interface");
      if (ch.exact) {
        if (!(last < *ch.exact)) continue;
        if (dom.beyond(*ch.exact)) {
          out.idle = true;
        } else if (dom.allows_exact(*ch.exact)) {
          out.steps.push_back({{ch.observable, *ch.exact}, ch.next});
        }
      } else {
        out.idle = true;
        if (!anytimes) anytimes = dom.after(last, dwell_);
        for (const auto& t : *anytimes) out.steps.push_back({{ch.observable, t}, ch.next});
      }
    }
    return out;
  }

 private:
  EventSet iface_;
  Stepper stepper_;
  Rational dwell_;
  std::string name_;
};

class TimedBehavior : public Behavior {
 public:
  TimedBehavior(EventSet iface, TimedStepper s, Rational dwell, std::string name)
      : iface_(std::move(iface)), stepper_(std::move(s)), dwell_(dwell), name_(std::move(name)) {}

  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const override {
    Steps out;
    out.idle = true;
    for (const auto& t : dom.after(last, dwell_))
      for (auto& [o, n] : stepper_(s, last, t)) {
        if (!o.subset_of(iface_))
          throw InterfaceViolation(name_ + " emitted " + o.str() + " outside its interface");
        out.steps.push_back({{o, t}, n});
      }
    return out;
  }

 private:
  EventSet iface_;
  TimedStepper stepper_;
  Rational dwell_;
  std::string name_;
};

struct Head {
  bool beyond = false;
  Observation obs;
  State next;
};

// Observations one side emitted alone that still wait for the other side's
// next observation.
struct ProductState {
  State s1, s2;
  TimeStamp last1, last2;
  std::vector<Observation> wait1, wait2;
  friend bool operator==(const ProductState&, const ProductState&) = default;
  friend auto operator<=>(const ProductState&, const ProductState&) = default;
};

void dedupe(std::vector<Step>& steps) {
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
}

std::vector<Head> heads(const Component& c, const State& s, const TimeStamp& last, const TimeDomain& dom) {
  Steps st = c.next(s, last, dom);
  std::vector<Head> out;
  out.reserve(st.steps.size() + 1);
  for (auto& step : st.steps) {
    require_within(c, step.obs.observable);
    out.push_back({false, std::move(step.obs), std::move(step.next)});
  }
  if (st.idle) out.push_back({true, {}, {}});
  return out;
}

bool has_head_after(const std::vector<Head>& hs, const TimeStamp& t) {
  return std::any_of(hs.begin(), hs.end(), [&](const Head& h) { return h.beyond || t < h.obs.time; });
}

// Walks both operands head by head. A side steps alone when the other can
// still step later or stay silent. When the head check for a lone step
// depends on the other side's next observation, the step waits until that
// observation appears.
class ProductBehavior : public Behavior {
 public:
  ProductBehavior(Component c1, Component c2, const CompatRelation& rel, CompositionFn f)
      : c1_(std::move(c1)),
        c2_(std::move(c2)),
        check_(rel, c1_.interface, c2_.interface),
        f_(std::move(f)) {}

  State advance(const State& s, const TimeStamp& now) const override {
    const auto& ps = s.as<ProductState>();
    return State::of(ProductState{c1_.behavior->advance(ps.s1, now), c2_.behavior->advance(ps.s2, now), now, now,
                                  ps.wait1, ps.wait2});
  }

 private:
  // The side that did not step, with its time moved up when that is harmless.
  static std::pair<State, TimeStamp> idle_side(const Component& c, const State& s, const TimeStamp& own,
                                               const TimeStamp& now) {
    if (!c.ignores_last) return {s, own};
    return {c.behavior->advance(s, now), now};
  }

 public:

  Steps next(const State& s, const TimeStamp&, const TimeDomain& dom) const override {
    {
      std::lock_guard lock(memo_mutex_);
      if (same_domain(memo_dom_, dom)) {
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
      } else {
        memo_.clear();
        memo_dom_ = dom;
      }
    }
    Steps out = compute(s, dom);
    std::lock_guard lock(memo_mutex_);
    if (same_domain(memo_dom_, dom)) {
      if (memo_.size() >= kMemoCap) memo_.clear();
      memo_.emplace(s, out);
    }
    return out;
  }

 private:
  static constexpr std::size_t kMemoCap = 200'000;

  static bool same_domain(const TimeDomain& a, const TimeDomain& b) {
    return a.limit == b.limit && a.off_grid_exact == b.off_grid_exact && a.times == b.times;
  }

  Steps compute(const State& s, const TimeDomain& dom) const {
    const auto& ps = s.as<ProductState>();
    TimeStamp last = max(ps.last1, ps.last2);
    auto fresh = [&](const Component& c, const State& st, const TimeStamp& l) {
      std::vector<Head> hs = heads(c, st, l, dom);
      std::erase_if(hs, [&](const Head& h) { return !h.beyond && !(last < h.obs.time); });
      return hs;
    };
    std::vector<Head> a = fresh(c1_, ps.s1, ps.last1), b = fresh(c2_, ps.s2, ps.last2);
    auto settles1 = [&](const Observation& y) {
      return std::all_of(ps.wait1.begin(), ps.wait1.end(), [&](const Observation& x) { return check_.check(&x, &y); });
    };
    auto settles2 = [&](const Observation& x) {
      return std::all_of(ps.wait2.begin(), ps.wait2.end(), [&](const Observation& y) { return check_.check(&x, &y); });
    };
    auto waiting = [](std::vector<Observation> w, const Observation& o, BoundCompat::Alone v) {
      if (v == BoundCompat::Alone::Deferred) w.push_back(o);
      return w;
    };

    Steps out;
    bool idle1 = false, idle2 = false;
    for (const auto& x : a) {
      if (x.beyond) {
        idle1 = true;
        continue;
      }
      if (!settles2(x.obs)) continue;
      auto v = check_.alone(true, x.obs);
      if (v != BoundCompat::Alone::Fails && has_head_after(b, x.obs.time)) {
        auto [s2, l2] = idle_side(c2_, ps.s2, ps.last2, x.obs.time);
        out.steps.push_back({x.obs, State::of(ProductState{x.next, s2, x.obs.time, l2, waiting(ps.wait1, x.obs, v), {}})});
      }
      for (const auto& y : b)
        if (!y.beyond && y.obs.time == x.obs.time && settles1(y.obs) && check_.check(&x.obs, &y.obs))
          out.steps.push_back({{f_.fn(x.obs.observable, y.obs.observable), x.obs.time},
                               State::of(ProductState{x.next, y.next, x.obs.time, y.obs.time, {}, {}})});
    }
    for (const auto& y : b) {
      if (y.beyond) {
        idle2 = true;
        continue;
      }
      if (!settles1(y.obs)) continue;
      auto v = check_.alone(false, y.obs);
      if (v != BoundCompat::Alone::Fails && has_head_after(a, y.obs.time)) {
        auto [s1, l1] = idle_side(c1_, ps.s1, ps.last1, y.obs.time);
        out.steps.push_back({y.obs, State::of(ProductState{s1, y.next, l1, y.obs.time, {}, waiting(ps.wait2, y.obs, v)})});
      }
    }
    out.idle = idle1 && idle2;
    dedupe(out.steps);
    return out;
  }

 private:
  Component c1_, c2_;
  BoundCompat check_;
  CompositionFn f_;
  // Steps depend only on the state and the domain.
  mutable std::mutex memo_mutex_;
  mutable TimeDomain memo_dom_;
  mutable std::map<State, Steps> memo_;
};

}  // namespace

Component make_component(std::string name, EventSet iface, State init, Stepper stepper, Rational min_dwell) {
  Component c;
  c.name = name;
  c.interface = iface;
  c.init = std::move(init);
  c.min_dwell = min_dwell;
  c.behavior = std::make_shared<SymbolicBehavior>(std::move(iface), std::move(stepper), min_dwell, std::move(name));
  return c;
}

Component make_timed_component(std::string name, EventSet iface, State init, TimedStepper stepper,
                               Rational min_dwell) {
  Component c;
  c.name = name;
  c.interface = iface;
  c.init = std::move(init);
  c.min_dwell = min_dwell;
  c.behavior = std::make_shared<TimedBehavior>(std::move(iface), std::move(stepper), min_dwell, std::move(name));
  return c;
}

CompositionFn union_fn() { return {"union", obs_union}; }
CompositionFn inter_fn() { return {"inter", obs_intersection}; }

Component product(const Component& c1, const Component& c2, const CompatRelation& rel, const CompositionFn& f) {
  Component c;
  c.name = "(" + c1.name + " x[" + rel.str() + "," + f.name + "] " + c2.name + ")";
  c.interface = obs_union(c1.interface, c2.interface);
  c.init = State::of(ProductState{c1.init, c2.init, Rational(0), Rational(0), {}, {}});
  c.min_dwell = min(c1.min_dwell, c2.min_dwell);
  c.behavior = std::make_shared<ProductBehavior>(c1, c2, rel, f);
  c.ignores_last = c1.ignores_last && c2.ignores_last;
  return c;
}

Component intersection(const Component& c1, const Component& c2) {
  Component c = product(c1, c2, sync_relation(identity_spec(obs_union(c1.interface, c2.interface))), inter_fn());
  c.name = "(" + c1.name + " & " + c2.name + ")";
  return c;
}

Component join(const Component& c1, const Component& c2) {
  Component c =
      product(c1, c2, sync_relation(identity_spec(obs_intersection(c1.interface, c2.interface))), union_fn());
  c.name = "(" + c1.name + " |><| " + c2.name + ")";
  return c;
}

// ---------------------------------------------------------------------------
// Prefix trees

PrefixTree::PrefixTree() = default;

std::size_t PrefixTree::size() const {
  if (empty()) return 0;
  std::size_t n = 0;
  std::vector<std::size_t> stack{root_};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    ++n;
    for (auto c : nodes_[i].children) stack.push_back(c);
  }
  return n;
}

namespace {

template <class Visit>
void walk_paths(const PrefixTree& t, std::size_t i, TesPrefix& path, const Visit& visit) {
  visit(path, t.node(i));
  for (auto c : t.node(i).children) {
    path.push_back(t.node(c).edge);
    walk_paths(t, c, path, visit);
    path.pop_back();
  }
}

std::optional<std::size_t> find_child(const PrefixTree& t, std::size_t i, const Observation& o) {
  const auto& ch = t.node(i).children;
  auto it = std::lower_bound(ch.begin(), ch.end(), o,
                             [&](std::size_t c, const Observation& x) { return t.node(c).edge < x; });
  if (it != ch.end() && t.node(*it).edge == o) return *it;
  return std::nullopt;
}

std::optional<std::size_t> locate(const PrefixTree& t, const TesPrefix& p) {
  if (t.empty()) return std::nullopt;
  std::size_t i = t.root();
  for (const auto& o : p) {
    auto c = find_child(t, i, o);
    if (!c) return std::nullopt;
    i = *c;
  }
  return i;
}

}  // namespace

std::vector<TesPrefix> PrefixTree::prefixes() const {
  std::vector<TesPrefix> out;
  if (empty()) return out;
  TesPrefix path;
  walk_paths(*this, root_, path, [&](const TesPrefix& p, const Node&) { out.push_back(p); });
  return out;
}

std::vector<TesPrefix> PrefixTree::completed() const {
  std::vector<TesPrefix> out;
  if (empty()) return out;
  TesPrefix path;
  walk_paths(*this, root_, path, [&](const TesPrefix& p, const Node& n) {
    if (n.idle) out.push_back(p);
  });
  return out;
}

bool PrefixTree::contains(const TesPrefix& p) const { return locate(*this, p).has_value(); }

bool PrefixTree::completes(const TesPrefix& p) const {
  auto i = locate(*this, p);
  return i && nodes_[*i].idle;
}

class TreeBuilder {
 public:
  struct Draft {
    bool idle = false;
    std::map<Observation, Draft> children;
  };

  static void add(Draft& root, const TesPrefix& p, bool idle_everywhere) {
    Draft* d = &root;
    if (idle_everywhere) d->idle = true;
    for (const auto& o : p) {
      d = &d->children[o];
      if (idle_everywhere) d->idle = true;
    }
    d->idle = true;
  }

  static std::size_t emit(PrefixTree& t, const Draft& d, const Observation& edge) {
    std::vector<std::size_t> kids;
    for (const auto& [o, child] : d.children) kids.push_back(emit(t, child, o));
    t.nodes_.push_back({edge, d.idle, std::move(kids)});
    return t.nodes_.size() - 1;
  }

  static PrefixTree finish(const Draft* root) {
    PrefixTree t;
    if (root) t.root_ = emit(t, *root, Observation{});
    return t;
  }

  // Subset construction over component states, pruning branches that cannot
  // reach a point where the component may go silent.
  struct Explorer {
    const Component& c;
    const TimeDomain& dom;
    std::size_t cap;
    std::size_t count = 0;
    PrefixTree& out;

    std::optional<std::size_t> build(const std::vector<std::pair<State, TimeStamp>>& states, const Observation& edge) {
      if (++count > cap) throw EnumerationOverflow(cap);
      bool idle = false;
      std::map<Observation, std::vector<std::pair<State, TimeStamp>>> groups;
      for (const auto& [s, last] : states) {
        Steps st = c.next(s, last, dom);
        idle = idle || st.idle;
        for (auto& step : st.steps) {
          require_within(c, step.obs.observable);
          TimeStamp t = step.obs.time;
          groups[std::move(step.obs)].emplace_back(std::move(step.next), t);
        }
      }
      std::vector<std::size_t> kids;
      for (auto& [o, next] : groups) {
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (auto k = build(next, o)) kids.push_back(*k);
      }
      if (!idle && kids.empty()) return std::nullopt;
      out.nodes_.push_back({edge, idle, std::move(kids)});
      return out.nodes_.size() - 1;
    }
  };

  static PrefixTree explore(const Component& c, const TimeDomain& dom, std::size_t cap) {
    PrefixTree t;
    Explorer ex{c, dom, cap, 0, t};
    if (auto r = ex.build({{c.init, Rational(0)}}, Observation{})) t.root_ = *r;
    return t;
  }
};

PrefixTree PrefixTree::from_completed(const std::vector<TesPrefix>& done) {
  if (done.empty()) return PrefixTree{};
  TreeBuilder::Draft root;
  for (const auto& p : done) TreeBuilder::add(root, p, false);
  return TreeBuilder::finish(&root);
}

PrefixTree PrefixTree::from_prefixes_all_idle(const std::vector<TesPrefix>& all) {
  if (all.empty()) return PrefixTree{};
  TreeBuilder::Draft root;
  for (const auto& p : all) TreeBuilder::add(root, p, true);
  return TreeBuilder::finish(&root);
}

std::string TreeDiff::str() const {
  std::string s = prefix_str(prefix);
  if (completion_only)
    s += in_first ? " completes only in the first language" : " completes only in the second language";
  else
    s += in_first ? " only in the first language" : " only in the second language";
  return s;
}

namespace {

std::optional<TreeDiff> diff_nodes(const PrefixTree& a, std::size_t i, const PrefixTree& b, std::size_t j,
                                   TesPrefix& path) {
  const auto& na = a.node(i);
  const auto& nb = b.node(j);
  if (na.idle != nb.idle) return TreeDiff{path, na.idle, true};
  std::size_t x = 0, y = 0;
  while (x < na.children.size() || y < nb.children.size()) {
    if (y == nb.children.size() ||
        (x < na.children.size() && a.node(na.children[x]).edge < b.node(nb.children[y]).edge)) {
      path.push_back(a.node(na.children[x]).edge);
      return TreeDiff{path, true, false};
    }
    if (x == na.children.size() || b.node(nb.children[y]).edge < a.node(na.children[x]).edge) {
      path.push_back(b.node(nb.children[y]).edge);
      return TreeDiff{path, false, false};
    }
    path.push_back(a.node(na.children[x]).edge);
    if (auto d = diff_nodes(a, na.children[x], b, nb.children[y], path)) return d;
    path.pop_back();
    ++x;
    ++y;
  }
  return std::nullopt;
}

}  // namespace

std::optional<TreeDiff> tree_difference(const PrefixTree& a, const PrefixTree& b) {
  if (a.empty() && b.empty()) return std::nullopt;
  if (a.empty()) return TreeDiff{{}, false, false};
  if (b.empty()) return TreeDiff{{}, true, false};
  TesPrefix path;
  return diff_nodes(a, a.root(), b, b.root(), path);
}

bool operator==(const PrefixTree& a, const PrefixTree& b) { return !tree_difference(a, b); }

std::size_t default_node_cap() {
  if (const char* env = std::getenv("TES_NODE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

PrefixTree explore(const Component& c, const TimeDomain& dom, std::size_t node_cap) {
  return TreeBuilder::explore(c, dom, node_cap);
}

PrefixTree prefixes(const Component& c, const TimeStamp& horizon, const Rational& grid, std::size_t node_cap) {
  return explore(c, TimeDomain::grid(horizon, grid), node_cap);
}

bool admits(const Component& c, const TesPrefix& p) {
  if (!is_valid_prefix(p)) return false;
  TimeDomain dom = TimeDomain::of_prefix(p);
  std::vector<std::pair<State, TimeStamp>> frontier{{c.init, Rational(0)}};
  for (std::size_t k = 0;; ++k) {
    std::vector<std::pair<State, TimeStamp>> next;
    for (const auto& [s, last] : frontier) {
      Steps st = c.next(s, last, dom);
      if (k == p.size()) {
        if (st.idle) return true;
        continue;
      }
      for (auto& step : st.steps)
        if (step.obs == p[k]) next.emplace_back(std::move(step.next), p[k].time);
    }
    if (k == p.size() || next.empty()) return false;
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
}

EquivResult equiv_upto(const Component& c1, const Component& c2, const TimeStamp& horizon, const Rational& grid,
                       std::size_t node_cap) {
  PrefixTree a = prefixes(c1, horizon, grid, node_cap);
  PrefixTree b = prefixes(c2, horizon, grid, node_cap);
  EquivResult r;
  r.witness = tree_difference(a, b);
  r.equal = !r.witness;
  return r;
}

bool lifted_check(const BoundCompat& rel, const TesPrefix& p1, const TesPrefix& p2) {
  std::size_t i = 0, j = 0;
  while (i < p1.size() || j < p2.size()) {
    const Observation* h1 = i < p1.size() ? &p1[i] : nullptr;
    const Observation* h2 = j < p2.size() ? &p2[j] : nullptr;
    if (!rel.check(h1, h2)) return false;
    if (!h2 || (h1 && h1->time < h2->time)) {
      ++i;
    } else if (!h1 || h2->time < h1->time) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return true;
}

PrefixTree divide_bounded(const Component& c1, const Component& c2, const CompatRelation& rel,
                          const CompositionFn& f, const TimeStamp& horizon, const Rational& grid,
                          std::size_t node_cap) {
  TimeDomain dom = TimeDomain::grid(horizon, grid);
  const auto& ev = c1.interface.events();
  if (ev.size() > 16) throw EnumerationOverflow(node_cap);
  std::vector<Observable> observables;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ev.size()); ++mask) {
    std::vector<Event> pick;
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (mask >> i & 1) pick.push_back(ev[i]);
    observables.emplace_back(std::move(pick));
  }
  double candidates = 1;
  for (std::size_t k = 0; k < dom.times.size(); ++k) candidates *= static_cast<double>(observables.size() + 1);
  if (candidates > static_cast<double>(node_cap)) throw EnumerationOverflow(node_cap);

  PrefixTree dividend = explore(c1, dom, node_cap);
  PrefixTree divisor = explore(c2, dom, node_cap);
  std::vector<TesPrefix> witnesses = divisor.completed();
  BoundCompat check(rel, c1.interface, c2.interface);

  std::vector<TesPrefix> accepted;
  TesPrefix sigma;
  std::function<void(std::size_t)> rec = [&](std::size_t slot) {
    if (slot == dom.times.size()) {
      for (const auto& s2 : witnesses)
        if (lifted_check(check, sigma, s2) && dividend.completes(merge_prefixes(sigma, s2, f.fn))) {
          accepted.push_back(sigma);
          return;
        }
      return;
    }
    rec(slot + 1);
    for (const auto& o : observables) {
      sigma.push_back({o, dom.times[slot]});
      rec(slot + 1);
      sigma.pop_back();
    }
  };
  rec(0);
  return PrefixTree::from_completed(accepted);
}

// ---------------------------------------------------------------------------
// Leaf constructors

Component const_component(std::string name, TesPrefix stem, TesPrefix cycle, Rational shift) {
  if (cycle.empty() || shift.sign() <= 0) throw std::invalid_argument("periodic part needs positive duration");
  if (!is_valid_prefix(stem) || !is_valid_prefix(cycle)) throw std::invalid_argument("invalid stem or cycle");
  if (!(cycle.back().time - cycle.front().time < shift))
    throw std::invalid_argument("cycle longer than its shift");
  if (!stem.empty() && !(stem.back().time < cycle.front().time))
    throw std::invalid_argument("cycle must start after the stem");
  EventSet iface;
  for (const auto& o : stem) iface = obs_union(iface, o.observable);
  for (const auto& o : cycle) iface = obs_union(iface, o.observable);
  auto at = [stem, cycle, shift](std::int64_t k) -> Observation {
    if (k < static_cast<std::int64_t>(stem.size())) return stem[k];
    std::int64_t r = k - static_cast<std::int64_t>(stem.size());
    std::int64_t n = static_cast<std::int64_t>(cycle.size());
    const Observation& o = cycle[r % n];
    return {o.observable, o.time + shift * Rational(r / n)};
  };
  Component c = make_component(std::move(name), iface, State::of<std::int64_t>(0),
                               [at](const State& s, const TimeStamp&) {
                                 std::int64_t k = s.as<std::int64_t>();
                                 Observation o = at(k);
                                 return std::vector<StepChoice>{{o.observable, o.time, State::of<std::int64_t>(k + 1)}};
                               });
  c.ignores_last = true;
  return c;
}

Component sampled_component(std::string name, Atom event_name, Atom subject,
                            std::function<Value(const Value& d0, const TimeStamp& t)> f, std::vector<Value> initial,
                            std::vector<TimeStamp> sample_times) {
  std::sort(sample_times.begin(), sample_times.end());
  EventSet iface;
  for (const auto& d : initial)
    for (const auto& t : sample_times) iface.insert({event_name, subject, f(d, t)});
  using S = std::optional<Value>;
  Component c = make_timed_component(
      std::move(name), iface, State::of<S>(std::nullopt),
      [=](const State& s, const TimeStamp&, const TimeStamp& t) {
        std::vector<std::pair<Observable, State>> out;
        if (!std::binary_search(sample_times.begin(), sample_times.end(), t)) return out;
        const S& chosen = s.as<S>();
        if (chosen) {
          out.push_back({Observable{{event_name, subject, f(*chosen, t)}}, s});
        } else {
          for (const auto& d : initial) out.push_back({Observable{{event_name, subject, f(d, t)}}, State::of<S>(d)});
        }
        return out;
      });
  c.ignores_last = true;
  return c;
}

Component alternating_component(std::string name, Event e0, Event e1) {
  Component c = make_component(std::move(name), Observable{e0, e1}, State::of(false),
                               [e0, e1](const State& s, const TimeStamp&) {
                                 bool odd = s.as<bool>();
                                 return std::vector<StepChoice>{{Observable{odd ? e1 : e0}, std::nullopt, State::of(!odd)}};
                               });
  c.ignores_last = true;
  return c;
}

namespace {

class TreeBehavior : public Behavior {
 public:
  explicit TreeBehavior(std::shared_ptr<const PrefixTree> t) : t_(std::move(t)) {}
  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const override {
    Steps out;
    std::size_t i = s.as<std::size_t>();
    if (i == PrefixTree::npos) return out;
    const auto& n = t_->node(i);
    out.idle = n.idle;
    for (auto c : n.children) {
      const auto& e = t_->node(c).edge;
      if (!(last < e.time)) continue;
      if (dom.beyond(e.time))
        out.idle = true;
      else if (dom.allows_exact(e.time))
        out.steps.push_back({e, State::of<std::size_t>(c)});
    }
    return out;
  }

 private:
  std::shared_ptr<const PrefixTree> t_;
};

}  // namespace

Component tree_component(std::string name, PrefixTree tree, std::optional<EventSet> iface) {
  Component c;
  c.name = std::move(name);
  if (iface) {
    c.interface = *iface;
  } else {
    for (const auto& p : tree.prefixes())
      for (const auto& o : p) c.interface = obs_union(c.interface, o.observable);
  }
  c.init = State::of<std::size_t>(tree.root());
  c.behavior = std::make_shared<TreeBehavior>(std::make_shared<const PrefixTree>(std::move(tree)));
  c.ignores_last = true;
  return c;
}

}  // namespace tes
