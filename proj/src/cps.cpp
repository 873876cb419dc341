#include "tes/cps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tes::cps {

namespace {

const Rational kJoulesPerWh(3600);

const Value* pair_field(const Value& v, const char* tag) {
  if (!v.is_pair() || !v.first().is<Atom>() || v.first().as<Atom>() != Atom(tag)) return nullptr;
  return &v.second();
}

std::optional<Rational> amount(const Value& v, Unit u) {
  if (!v.is<Quantity>() || v.as<Quantity>().unit != u) return std::nullopt;
  return v.as<Quantity>().amount;
}

// (direction, amount) from a move payload in the given unit.
std::optional<std::pair<Dir, Rational>> move_payload(const Value& v, Unit u) {
  if (!v.is_pair() || !v.first().is<Dir>()) return std::nullopt;
  auto a = amount(v.second(), u);
  if (!a) return std::nullopt;
  return std::pair{v.first().as<Dir>(), *a};
}

EventPattern named(const char* name, const Atom& subject) {
  EventPattern p;
  p.name = Atom(name);
  p.subject = subject;
  return p;
}

Component renamed(Component c, std::string name) {
  c.name = std::move(name);
  return c;
}

// Every event any reachable step emits within the horizon.
EventSet reachable_events(const Component& c, const TimeStamp& horizon, const Rational& grid) {
  TimeDomain dom = TimeDomain::grid(horizon, grid);
  std::set<std::pair<State, TimeStamp>> seen{{c.init, Rational(0)}};
  std::vector<std::pair<State, TimeStamp>> todo(seen.begin(), seen.end());
  EventSet out;
  while (!todo.empty()) {
    auto [s, last] = todo.back();
    todo.pop_back();
    for (auto& step : c.next(s, last, dom).steps) {
      out = obs_union(out, step.obs.observable);
      std::pair<State, TimeStamp> key{step.next, step.obs.time};
      if (seen.insert(key).second) todo.push_back(std::move(key));
    }
  }
  return out;
}

}  // namespace

Rate::Rate(std::vector<std::pair<TimeStamp, Rational>> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end());
}

Rational Rate::at(const TimeStamp& t) const {
  Rational v(0);
  for (const auto& [start, value] : pieces_) {
    if (t < start) break;
    v = value;
  }
  return v;
}

Rational Rate::integral(const TimeStamp& a, const TimeStamp& b) const {
  Rational sum(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Rational lo = max(a, pieces_[i].first);
    Rational hi = i + 1 < pieces_.size() ? min(b, pieces_[i + 1].first) : b;
    if (lo < hi) sum += pieces_[i].second * (hi - lo);
  }
  return sum;
}

std::vector<Rational> Rate::values() const {
  std::set<Rational> vs;
  if (pieces_.empty() || Rational(0) < pieces_.front().first) vs.insert(Rational(0));
  for (const auto& p : pieces_) vs.insert(p.second);
  return {vs.begin(), vs.end()};
}

bool Rate::nonnegative() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const auto& p) { return p.second.sign() >= 0; });
}

std::optional<Position> as_position(const Value& v) {
  if (!v.is_pair()) return std::nullopt;
  auto x = amount(v.first(), Unit::m), y = amount(v.second(), Unit::m);
  if (!x || !y) return std::nullopt;
  return Position{*x, *y};
}

Rational delta_d(const Rational& force, const Rational& mass, const TimeStamp& t0, const TimeStamp& t) {
  if (t < t0) throw std::invalid_argument("negative interval");
  if (mass.sign() <= 0) throw std::invalid_argument("mass must be positive");
  Rational dt = t - t0;
  return Rational(1, 2) * (force / mass) * dt * dt;
}

Rational traction_bound(const Position& pos, const FieldParams& params) {
  return Rational(1, 4) * params.friction(pos) * params.mass * params.gravity;
}

bool traction_bound_ok(const Rational& force, const Position& pos, const FieldParams& params) {
  return !(traction_bound(pos, params) < force);
}

Position clamp(const Position& p, const FieldParams& params) {
  auto c = [&](const Rational& v) { return min(max(v, Rational(0)), params.size); };
  return {c(p.x), c(p.y)};
}

Position displace(const Position& p, Dir d, const Rational& dist) {
  switch (d) {
    case Dir::N: return {p.x, p.y + dist};
    case Dir::S: return {p.x, p.y - dist};
    case Dir::E: return {p.x + dist, p.y};
    case Dir::W: return {p.x - dist, p.y};
  }
  return p;
}

namespace {

// Position at `t` after a move started at `t0` from `pos`. Forces beyond the
// traction bound slip and leave the position unchanged.
Position after_move(const Position& pos, Dir d, const Rational& force, const TimeStamp& t0, const TimeStamp& t,
                    const FieldParams& params) {
  if (!traction_bound_ok(force, pos, params)) return pos;
  return clamp(displace(pos, d, delta_d(force, params.mass, t0, t)), params);
}

}  // namespace

Position dis(const TesPrefix& prefix, const Position& pos0, const FieldParams& params) {
  Position pos = pos0;
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
    for (const auto& e : prefix[i].observable)
      if (e.name == Atom("move"))
        if (auto mv = move_payload(e.payload, Unit::N))
          pos = after_move(pos, mv->first, mv->second, prefix[i].time, prefix[i + 1].time, params);
  return pos;
}

namespace {

enum class Mode { Idle, Discharge, Charge };

Rational interval_spend(Mode m, const TimeStamp& a, const TimeStamp& b, const BatteryParams& p) {
  Rational leak = p.eta_l.integral(a, b);
  switch (m) {
    case Mode::Discharge: return p.eta_d.integral(a, b) + leak;
    case Mode::Charge: return leak - p.eta_c.integral(a, b);
    case Mode::Idle: return leak;
  }
  return leak;
}

Mode mode_of(const Observable& o) {
  for (const auto& e : o) {
    if (e.name == Atom("discharge")) return Mode::Discharge;
    if (e.name == Atom("charge")) return Mode::Charge;
  }
  return Mode::Idle;
}

}  // namespace

Rational lev(const TesPrefix& prefix, const BatteryParams& params) {
  Rational sum(0);
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
    sum += interval_spend(mode_of(prefix[i].observable), prefix[i].time, prefix[i + 1].time, params);
  return sum;
}

Rational level_wh(const Rational& spent_j, const BatteryParams& params) {
  return min(params.capacity_wh, max(params.capacity_wh - spent_j / kJoulesPerWh, Rational(0)));
}

Rational traction_force(const Rational& power, const RobotParams& params) {
  Rational rw = params.wheel_radius * params.wheel_speed;
  if (rw.sign() <= 0) throw std::invalid_argument("wheel radius times speed must be positive");
  return power / rw;
}

Event robot_read_location(const Atom& r, const Position& l) { return {"read", r, Value(Value("loc"), l.value())}; }
Event robot_read_battery(const Atom& r, const Rational& wh) { return {"read", r, Value(Value("bat"), qty(wh, Unit::Wh))}; }
Event robot_move(const Atom& r, Dir d, const Rational& watts) { return {"move", r, Value(Value(d), qty(watts, Unit::W))}; }
Event robot_charge(const Atom& r) { return {"charge", r, Value(Status::ON)}; }
Event battery_read(const Atom& b, const Rational& wh) { return {"read", b, qty(wh, Unit::Wh)}; }
Event battery_discharge(const Atom& b, const Rational& watts) { return {"discharge", b, qty(watts, Unit::W)}; }
Event battery_charge(const Atom& b, const Rational& watts) { return {"charge", b, qty(watts, Unit::W)}; }
Event field_loc(const Atom& i, const Position& p) { return {"loc", i, p.value()}; }
Event field_move(const Atom& i, Dir d, const Rational& newtons) { return {"move", i, Value(Value(d), qty(newtons, Unit::N))}; }
Event signal() { return {"signal", "", Value(0)}; }

namespace {

struct BatteryState {
  Rational spent;  // joules up to the last observation
  Mode mode = Mode::Idle;
  friend auto operator<=>(const BatteryState&, const BatteryState&) = default;
};

class BatteryBehavior : public Behavior {
 public:
  BatteryBehavior(Atom id, BatteryParams p, std::optional<std::set<Rational>> levels, bool charge)
      : id_(id), p_(std::move(p)), levels_(std::move(levels)), charge_(charge) {}

  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const override {
    const auto& b = s.as<BatteryState>();
    Steps out;
    out.idle = true;
    for (const auto& t : dom.after(last, p_.min_dwell)) {
      Rational spent = b.spent + interval_spend(b.mode, last, t, p_);
      Rational level = level_wh(spent, p_);
      if (!levels_ || levels_->contains(level))
        out.steps.push_back({{Observable{battery_read(id_, level)}, t}, State::of(BatteryState{spent, Mode::Idle})});
      Rational ahead = interval_spend(Mode::Discharge, t, t + p_.min_dwell, p_);
      if (!(level * kJoulesPerWh < ahead))
        out.steps.push_back(
            {{Observable{battery_discharge(id_, p_.eta_d.at(t))}, t}, State::of(BatteryState{spent, Mode::Discharge})});
      if (charge_)
        out.steps.push_back(
            {{Observable{battery_charge(id_, p_.eta_c.at(t))}, t}, State::of(BatteryState{spent, Mode::Charge})});
    }
    return out;
  }

 private:
  Atom id_;
  BatteryParams p_;
  std::optional<std::set<Rational>> levels_;  // readable levels; all when unset
  bool charge_;
};

void check_battery(const BatteryParams& params) {
  if (params.capacity_wh.sign() <= 0) throw std::invalid_argument("battery capacity must be positive");
  if (!params.eta_d.nonnegative() || !params.eta_c.nonnegative() || !params.eta_l.nonnegative())
    throw std::invalid_argument("battery rates must be non-negative");
}

Component battery_shell(const Atom& id, const BatteryParams& params) {
  Component c;
  c.name = "B(" + id.str() + ")";
  c.init = State::of(BatteryState{Rational(0), Mode::Idle});
  c.min_dwell = params.min_dwell;
  return c;
}

}  // namespace

std::vector<Rational> battery_levels(const Atom& id, const BatteryParams& params, const TimeStamp& horizon,
                                     const Rational& grid) {
  check_battery(params);
  Component c = battery_shell(id, params);
  c.behavior = std::make_shared<BatteryBehavior>(id, params, std::nullopt, true);
  std::vector<Rational> out;
  for (const auto& e : reachable_events(c, horizon, grid))
    if (e.name == Atom("read")) out.push_back(e.payload.as<Quantity>().amount);
  return out;
}

Component battery(const Atom& id, const BatteryParams& params, const std::vector<Rational>& levels, bool charge) {
  check_battery(params);
  Component c = battery_shell(id, params);
  c.behavior =
      std::make_shared<BatteryBehavior>(id, params, std::set<Rational>(levels.begin(), levels.end()), charge);
  for (const auto& l : levels) c.interface.insert(battery_read(id, l));
  for (const auto& r : params.eta_d.values()) c.interface.insert(battery_discharge(id, r));
  if (charge)
    for (const auto& r : params.eta_c.values()) c.interface.insert(battery_charge(id, r));
  return c;
}

namespace {

struct FieldState {
  Position pos;
  int dir = -1;  // pending move, -1 when none
  Rational force;
  friend auto operator<=>(const FieldState&, const FieldState&) = default;
};

bool on_grid(const Position& p, const FieldParams& params) {
  return (p.x / params.grid_step).is_integer() && (p.y / params.grid_step).is_integer();
}

class FieldBehavior : public Behavior {
 public:
  FieldBehavior(Atom id, FieldParams p, std::vector<Dir> dirs, std::vector<Rational> forces, bool locate,
                Rational dwell)
      : id_(id), p_(std::move(p)), dirs_(std::move(dirs)), forces_(std::move(forces)), locate_(locate), dwell_(dwell) {}

  Steps next(const State& s, const TimeStamp& last, const TimeDomain& dom) const override {
    const auto& f = s.as<FieldState>();
    Steps out;
    out.idle = true;
    for (const auto& t : dom.after(last, dwell_)) {
      Position pos = f.dir < 0 ? f.pos : after_move(f.pos, static_cast<Dir>(f.dir), f.force, last, t, p_);
      if (locate_ && on_grid(pos, p_))
        out.steps.push_back({{Observable{field_loc(id_, pos)}, t}, State::of(FieldState{pos, -1, Rational(0)})});
      for (Dir d : dirs_)
        for (const auto& force : forces_)
          out.steps.push_back(
              {{Observable{field_move(id_, d, force)}, t}, State::of(FieldState{pos, static_cast<int>(d), force})});
    }
    return out;
  }

 private:
  Atom id_;
  FieldParams p_;
  std::vector<Dir> dirs_;
  std::vector<Rational> forces_;
  bool locate_;
  Rational dwell_;
};

}  // namespace

Component field(const Atom& id, const Position& pos0, const FieldParams& params, const std::vector<Dir>& dirs,
                const std::vector<Rational>& forces, bool locate) {
  if (params.mass.sign() <= 0) throw std::invalid_argument("mass must be positive");
  if (params.grid_step.sign() <= 0) throw std::invalid_argument("position grid step must be positive");
  Component c;
  c.name = "F(" + id.str() + ")";
  Position start = clamp(pos0, params);
  c.init = State::of(FieldState{start, -1, Rational(0)});
  c.behavior = std::make_shared<FieldBehavior>(id, params, dirs, forces, locate, c.min_dwell);
  if (locate) {
    for (Rational x(0); !(params.size < x); x += params.grid_step)
      for (Rational y(0); !(params.size < y); y += params.grid_step) c.interface.insert(field_loc(id, {x, y}));
    if (!on_grid(start, params)) c.interface.insert(field_loc(id, start));
  }
  for (Dir d : dirs)
    for (const auto& f : forces) c.interface.insert(field_move(id, d, f));
  return c;
}

Component robot(const Atom& id, const RobotAlphabet& a) {
  std::vector<Observable> offers;
  if (a.read_location)
    for (const auto& p : a.positions) offers.push_back({robot_read_location(id, p)});
  if (a.read_battery)
    for (const auto& l : a.levels) offers.push_back({robot_read_battery(id, l)});
  for (Dir d : a.dirs)
    for (const auto& w : a.powers) offers.push_back({robot_move(id, d, w)});
  if (a.charge) offers.push_back({robot_charge(id)});
  EventSet iface;
  for (const auto& o : offers) iface = obs_union(iface, o);
  Component c = make_component("R(" + id.str() + ")", iface, State::of(0), [offers](const State& s, const TimeStamp&) {
    std::vector<StepChoice> out;
    for (const auto& o : offers) out.push_back({o, std::nullopt, s});
    return out;
  });
  c.ignores_last = true;
  return c;
}

ObsRelationSpec rb_relation(const Atom& r, const Atom& b) {
  ObsRelationSpec s;
  s.add({named("read", r), named("read", b),
         [](const Value& l, const Value& rv) {
           const Value* v = pair_field(l, "bat");
           return v && *v == rv;
         },
         "read-bat"});
  s.add({named("move", r), named("discharge", b),
         [](const Value& l, const Value& rv) {
           auto mv = move_payload(l, Unit::W);
           auto eta = amount(rv, Unit::W);
           return mv && eta && !(*eta < mv->second);
         },
         "move-discharge"});
  s.add({named("charge", r), named("charge", b), {}, "charge"});
  return s;
}

ObsRelationSpec fr_relation(const Atom& i, const Atom& r, const RobotParams& robot, const FieldParams& field) {
  ObsRelationSpec s;
  s.add({named("loc", i), named("read", r),
         [](const Value& l, const Value& rv) {
           const Value* v = pair_field(rv, "loc");
           return v && *v == l;
         },
         "read-loc"});
  s.add({named("move", i), named("move", r),
         [robot](const Value& l, const Value& rv) {
           auto f = move_payload(l, Unit::N);
           auto a = move_payload(rv, Unit::W);
           return f && a && f->first == a->first && f->second == traction_force(a->second, robot);
         },
         "move"});
  Value station = field.station.value();
  s.add({named("loc", i), named("charge", r), [station](const Value& l, const Value&) { return l == station; },
         "charge-at-station"});
  return s;
}

ObsRelationSpec ff_relation(const Atom& i1, const Atom& i2) {
  ObsRelationSpec s;
  s.add({named("loc", i1), named("loc", i2), [](const Value& l, const Value& r) { return l == r; }, "same-loc"});
  return s;
}

namespace {

std::vector<Rational> forces_for(const RobotAlphabet& a, const RobotParams& r) {
  std::vector<Rational> out;
  for (const auto& w : a.powers) out.push_back(traction_force(w, r));
  return out;
}

void fill(RobotSetup& s, const Scenario& sc) {
  s.alphabet.positions.clear();
  for (const auto& e : reachable_events(field_of(s, sc), sc.horizon, sc.grid))
    if (e.name == Atom("loc")) s.alphabet.positions.push_back(*as_position(e.payload));
  s.alphabet.levels.clear();
  if (s.alphabet.read_battery) s.alphabet.levels = battery_levels(s.battery, sc.battery, sc.horizon, sc.grid);
}

}  // namespace

Scenario& Scenario::complete() {
  fill(r1, *this);
  fill(r2, *this);
  return *this;
}

Component robot_of(const RobotSetup& s, const Scenario&) { return robot(s.robot, s.alphabet); }

Component battery_of(const RobotSetup& s, const Scenario& sc) {
  return battery(s.battery, sc.battery, s.alphabet.read_battery ? s.alphabet.levels : std::vector<Rational>{},
                 s.alphabet.charge);
}

Component field_of(const RobotSetup& s, const Scenario& sc) {
  return field(s.object, s.start, sc.field, s.alphabet.dirs, forces_for(s.alphabet, sc.robot),
               s.alphabet.read_location || s.alphabet.charge);
}

Component robot_subsystem(const RobotSetup& s, const Scenario& sc) {
  Component fr = product(field_of(s, sc), robot_of(s, sc),
                         sync_relation(fr_relation(s.object, s.robot, sc.robot, sc.field)), union_fn());
  return renamed(product(fr, battery_of(s, sc), sync_relation(rb_relation(s.robot, s.battery)), union_fn()),
                 "S(" + s.robot.str() + ")");
}

Component system(const Scenario& sc) {
  Component fields =
      product(field_of(sc.r1, sc), field_of(sc.r2, sc), excl_relation(ff_relation(sc.r1.object, sc.r2.object)), union_fn());
  Component rb1 = product(robot_of(sc.r1, sc), battery_of(sc.r1, sc),
                          sync_relation(rb_relation(sc.r1.robot, sc.r1.battery)), union_fn());
  Component rb2 = product(robot_of(sc.r2, sc), battery_of(sc.r2, sc),
                          sync_relation(rb_relation(sc.r2.robot, sc.r2.battery)), union_fn());
  Component robots = product(rb1, rb2, free_relation(), union_fn());
  ObsRelationSpec fr = fr_relation(sc.r1.object, sc.r1.robot, sc.robot, sc.field)
                           .merged_with(fr_relation(sc.r2.object, sc.r2.robot, sc.robot, sc.field));
  return renamed(product(fields, robots, sync_relation(fr), union_fn()), "System");
}

Component system_alt(const Scenario& sc) {
  return renamed(product(robot_subsystem(sc.r1, sc), robot_subsystem(sc.r2, sc),
                         excl_relation(ff_relation(sc.r1.object, sc.r2.object)), union_fn()),
                 "SystemAlt");
}

Table1 table1(const BatteryParams& battery) {
  Atom r("R"), b("B"), i("I");
  Position origin{Rational(0), Rational(0)}, north{Rational(0), Rational(1)};
  Rational level = level_wh(battery.eta_d.integral(Rational(2), Rational(4)) + battery.eta_l.integral(Rational(0), Rational(4)),
                            battery);
  Rational draw = battery.eta_d.at(Rational(2));
  Table1 t;
  t.robot = {{{robot_read_location(r, origin)}, Rational(1)},
             {{robot_move(r, Dir::N, Rational(20))}, Rational(2)},
             {{robot_read_location(r, north)}, Rational(3)},
             {{robot_read_battery(r, level)}, Rational(4)}};
  t.battery = {{{battery_discharge(b, draw)}, Rational(2)}, {{battery_read(b, level)}, Rational(4)}};
  t.field = {{{field_loc(i, origin)}, Rational(1)},
             {{field_move(i, Dir::N, traction_force(Rational(20), RobotParams{}))}, Rational(2)},
             {{field_loc(i, north)}, Rational(3)}};
  t.composite = merge_prefixes(merge_prefixes(t.robot, t.battery, obs_union), t.field, obs_union);
  return t;
}

Scenario table1_scenario() {
  Scenario sc;
  sc.r1 = {"R", "B", "I", {Rational(0), Rational(0)}, {}};
  sc.complete();
  return sc;
}

namespace {

bool zero_read(const Event& e) {
  if (e.name != Atom("read")) return false;
  const Value* v = pair_field(e.payload, "bat");
  auto wh = amount(v ? *v : e.payload, Unit::Wh);
  return wh && wh->is_zero();
}

bool shared_location(const Observable& o) {
  std::vector<std::pair<Value, Atom>> locs;
  for (const auto& e : o)
    if (e.name == Atom("loc")) locs.push_back({e.payload, e.subject});
  std::sort(locs.begin(), locs.end());
  for (std::size_t k = 1; k < locs.size(); ++k)
    if (locs[k].first == locs[k - 1].first && locs[k].second != locs[k - 1].second) return true;
  return false;
}

}  // namespace

TraceProperty p_energy() {
  return {"energy", {},
          [](const TesPrefix& p) {
            for (const auto& o : p)
              if (std::any_of(o.observable.begin(), o.observable.end(), zero_read)) return Verdict::Violated;
            return Verdict::SatisfiedSoFar;
          },
          PropertyKind::Safety, std::nullopt};
}

TraceProperty p_no_overlap() {
  return {"no-overlap", {},
          [](const TesPrefix& p) {
            for (const auto& o : p)
              if (shared_location(o.observable)) return Verdict::Violated;
            return Verdict::SatisfiedSoFar;
          },
          PropertyKind::Safety, std::nullopt};
}

namespace {

Observable swap_start(const Scenario& sc) {
  return {field_loc(sc.r1.object, sc.r1.start), field_loc(sc.r2.object, sc.r2.start)};
}

Observable swap_end(const Scenario& sc) {
  return {field_loc(sc.r1.object, sc.r2.start), field_loc(sc.r2.object, sc.r1.start), signal()};
}

}  // namespace

TraceProperty p_swap(const Scenario& sc) {
  Observable start = swap_start(sc), end = swap_end(sc);
  EventSet scope = obs_union(start, end);
  return {"swap", scope,
          [start, end](const TesPrefix& p) {
            if (p.empty()) return Verdict::SatisfiedSoFar;
            if (!start.subset_of(p.front().observable)) return Verdict::Violated;
            for (const auto& o : p)
              if (end.subset_of(o.observable)) return Verdict::Confirmed;
            return Verdict::SatisfiedSoFar;
          },
          PropertyKind::Liveness, std::nullopt};
}

SwapCoordinators swap_coordinators(const Scenario& sc, const TimeStamp& first, const TimeStamp& swapped) {
  Observation a{obs_union(swap_start(sc), Observable{signal()}), first};
  Observation b{swap_end(sc), swapped};
  std::vector<TesPrefix> all{{}, {a}, {a, b}};
  SwapCoordinators k;
  k.tree = PrefixTree::from_prefixes_all_idle(all);
  k.central = componentize(k.tree, "Cswap");
  auto local = [&](const RobotSetup& s, const char* name) {
    EventSet keep = robot_subsystem(s, sc).interface;
    keep.insert(signal());
    std::vector<TesPrefix> proj;
    for (const auto& p : all) proj.push_back(project_prefix(p, keep));
    return componentize(PrefixTree::from_prefixes_all_idle(proj), name);
  };
  k.local1 = local(sc.r1, "Cswap1");
  k.local2 = local(sc.r2, "Cswap2");
  return k;
}

namespace {

CompatRelation signal_sync() { return sync_relation(identity_spec(Observable{signal()})); }

}  // namespace

Component centralized_swap(const Scenario& sc, const SwapCoordinators& k) {
  Component robots = product(robot_subsystem(sc.r1, sc), robot_subsystem(sc.r2, sc), signal_sync(), union_fn());
  return renamed(join(k.central, robots), "CentralSwap");
}

Component decentralized_swap(const Scenario& sc, const SwapCoordinators& k) {
  return renamed(product(join(k.local1, robot_subsystem(sc.r1, sc)), join(k.local2, robot_subsystem(sc.r2, sc)),
                         signal_sync(), union_fn()),
                 "LocalSwap");
}

Rational evasion_depletion(const EvasionParams& p) { return p.capacity_j / p.draw_w; }

Component evasion(const EvasionParams& p) {
  if (p.draw_w.sign() <= 0 || p.capacity_j.sign() <= 0) throw std::invalid_argument("draw and capacity must be positive");
  Rational empty_at = evasion_depletion(p);
  std::vector<TimeStamp> reads;
  for (const auto& t : p.read_times)
    if (t < empty_at) reads.push_back(t);
  std::sort(reads.begin(), reads.end());
  auto level = [p](const TimeStamp& t) { return max(p.capacity_j - p.draw_w * t, Rational(0)) / kJoulesPerWh; };
  EventSet iface{battery_discharge(p.battery, p.draw_w), battery_read(p.battery, Rational(0))};
  for (const auto& t : reads) iface.insert(battery_read(p.battery, level(t)));
  Component c = make_timed_component(
      "Evasion(" + p.battery.str() + ")", iface, State::of(0),
      [p, reads, level](const State& s, const TimeStamp&, const TimeStamp& t) {
        std::vector<std::pair<Observable, State>> out{{Observable{}, s},
                                                      {Observable{battery_discharge(p.battery, p.draw_w)}, s}};
        if (std::binary_search(reads.begin(), reads.end(), t))
          out.push_back({Observable{battery_read(p.battery, level(t))}, s});
        return out;
      });
  c.ignores_last = true;
  return c;
}

}  // namespace tes::cps
