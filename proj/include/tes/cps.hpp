#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tes/algebra.hpp"
#include "tes/properties.hpp"

namespace tes::cps {

// Piecewise-constant rate in watts: each piece holds from its start time
// until the next start. Zero before the first piece.
class Rate {
 public:
  Rate() = default;
  Rate(Rational constant) : pieces_{{Rational(0), constant}} {}  // NOLINT
  explicit Rate(std::vector<std::pair<TimeStamp, Rational>> pieces);

  Rational at(const TimeStamp& t) const;
  // Exact integral over [a, b], in joules.
  Rational integral(const TimeStamp& a, const TimeStamp& b) const;
  bool nonnegative() const;
  std::vector<Rational> values() const;

 private:
  std::vector<std::pair<TimeStamp, Rational>> pieces_;
};

struct BatteryParams {
  Rational capacity_wh{2000};
  Rate eta_d{Rational(20)};
  Rate eta_c{Rational(20)};
  Rate eta_l{Rational(0)};
  Rational min_dwell{1, 1000};
};

struct Position {
  Rational x, y;
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
  Value value() const { return position(x, y); }
};

std::optional<Position> as_position(const Value& v);

struct FieldParams {
  Rational size{20};
  std::function<Rational(const Position&)> friction = [](const Position&) { return Rational(1); };
  Rational mass{20};
  Rational gravity{49, 5};
  Position station{Rational(5), Rational(5)};
  Rational grid_step{1};  // loc events exist for positions on this grid
};

struct RobotParams {
  Rational wheel_radius{1, 10};
  Rational wheel_speed{5};
};

// Which singleton observables a robot offers.
struct RobotAlphabet {
  std::vector<Dir> dirs{Dir::N, Dir::S, Dir::E, Dir::W};
  std::vector<Rational> powers{Rational(20)};  // W
  std::vector<Position> positions;             // readable locations
  std::vector<Rational> levels;                // readable battery levels, Wh
  bool read_location = true;
  bool read_battery = true;
  bool charge = true;
};

// Physics.
Rational delta_d(const Rational& force, const Rational& mass, const TimeStamp& t0, const TimeStamp& t);
Rational traction_bound(const Position& pos, const FieldParams& params);
bool traction_bound_ok(const Rational& force, const Position& pos, const FieldParams& params);
Position clamp(const Position& p, const FieldParams& params);
Position displace(const Position& p, Dir d, const Rational& dist);
// Position after a field prefix: each interval moves by the move at its start.
Position dis(const TesPrefix& prefix, const Position& pos0, const FieldParams& params);
// Cumulative energy spent over a battery prefix, joules. Time 0 starts full.
Rational lev(const TesPrefix& prefix, const BatteryParams& params);
// Displayed charge for a cumulative spend, Wh.
Rational level_wh(const Rational& spent_j, const BatteryParams& params);
Rational traction_force(const Rational& power, const RobotParams& params);

// Events.
Event robot_read_location(const Atom& r, const Position& l);
Event robot_read_battery(const Atom& r, const Rational& wh);
Event robot_move(const Atom& r, Dir d, const Rational& watts);
Event robot_charge(const Atom& r);
Event battery_read(const Atom& b, const Rational& wh);
Event battery_discharge(const Atom& b, const Rational& watts);
Event battery_charge(const Atom& b, const Rational& watts);
Event field_loc(const Atom& i, const Position& p);
Event field_move(const Atom& i, Dir d, const Rational& newtons);
// The external coordination signal.
Event signal();

// Components.
// Every level a read can show within the horizon.
std::vector<Rational> battery_levels(const Atom& id, const BatteryParams& params, const TimeStamp& horizon,
                                     const Rational& grid);
// Reads are offered only for the listed levels.
Component battery(const Atom& id, const BatteryParams& params, const std::vector<Rational>& levels,
                  bool charge = true);
Component robot(const Atom& id, const RobotAlphabet& alphabet);
Component field(const Atom& id, const Position& pos0, const FieldParams& params = {},
                const std::vector<Dir>& dirs = {Dir::N, Dir::S, Dir::E, Dir::W},
                const std::vector<Rational>& forces = {Rational(40)}, bool locate = true);

// Relations; the first argument names the left operand.
ObsRelationSpec rb_relation(const Atom& r, const Atom& b);
ObsRelationSpec fr_relation(const Atom& i, const Atom& r, const RobotParams& robot = {},
                            const FieldParams& field = {});
ObsRelationSpec ff_relation(const Atom& i1, const Atom& i2);

struct RobotSetup {
  Atom robot, battery, object;
  Position start;
  RobotAlphabet alphabet;  // positions and levels are filled in by the scenario
};
// The scenario builders leave out battery and field events whose robot-side
// partner the alphabet omits, so that they cannot fire unpartnered.

struct Scenario {
  BatteryParams battery;
  FieldParams field;
  RobotParams robot;
  RobotSetup r1{"R1", "B1", "I1", {Rational(0), Rational(0)}, {}};
  RobotSetup r2{"R2", "B2", "I2", {Rational(5), Rational(0)}, {}};
  TimeStamp horizon{4};
  Rational grid{1};

  // Fills each robot's readable positions and levels with the values its
  // field and battery can reach within the horizon.
  Scenario& complete();
};

Component robot_of(const RobotSetup& s, const Scenario& sc);
Component battery_of(const RobotSetup& s, const Scenario& sc);
Component field_of(const RobotSetup& s, const Scenario& sc);
// ((F ×sync R) ×sync B)
Component robot_subsystem(const RobotSetup& s, const Scenario& sc);
// (F1 ×excl F2) ×sync (R1B1 ×free R2B2)
Component system(const Scenario& sc);
// S1 ×excl S2 with Si the robot subsystems
Component system_alt(const Scenario& sc);

// The worked single-robot scenario: columns for robot R, battery B, field I
// and their composite.
struct Table1 {
  TesPrefix robot, battery, field, composite;
};
Table1 table1(const BatteryParams& battery = {});
// Single robot with positions and levels sufficient for the table.
Scenario table1_scenario();

// Properties.
TraceProperty p_energy();
TraceProperty p_no_overlap();
TraceProperty p_swap(const Scenario& sc);

struct SwapCoordinators {
  Component central, local1, local2;
  PrefixTree tree;
};
// Reads at `first` and `swapped`, each observation carrying the signal.
SwapCoordinators swap_coordinators(const Scenario& sc, const TimeStamp& first, const TimeStamp& swapped);
// Coordinator joined with the free product of the two robot subsystems.
Component centralized_swap(const Scenario& sc, const SwapCoordinators& k);
// Each local coordinator joined with its subsystem, then synchronized on the signal.
Component decentralized_swap(const Scenario& sc, const SwapCoordinators& k);

// A battery drained at a constant rate from the start, whose reads stop
// before it empties.
struct EvasionParams {
  Atom battery{"B1"};
  Rational capacity_j{72};
  Rational draw_w{20};
  std::vector<TimeStamp> read_times;  // candidate read times
};
Component evasion(const EvasionParams& p);
Rational evasion_depletion(const EvasionParams& p);

}  // namespace tes::cps
