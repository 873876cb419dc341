#include "tes/properties.hpp"

#include <algorithm>

namespace tes {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Violated: return "Violated";
    case Verdict::SatisfiedSoFar: return "SatisfiedSoFar";
    case Verdict::Confirmed: return "Confirmed";
  }
  return "?";
}

TraceProperty p_finite(EventSet e) {
  return {"finite", std::move(e), [](const TesPrefix&) { return Verdict::SatisfiedSoFar; }, PropertyKind::Liveness,
          std::nullopt};
}

TraceProperty tree_property(std::string name, PrefixTree tree, std::optional<EventSet> scope) {
  if (!scope) {
    scope.emplace();
    for (const auto& p : tree.prefixes())
      for (const auto& o : p) *scope = obs_union(*scope, o.observable);
  }
  auto shared = std::make_shared<const PrefixTree>(tree);
  return {std::move(name), *scope,
          [shared](const TesPrefix& p) { return shared->contains(p) ? Verdict::SatisfiedSoFar : Verdict::Violated; },
          PropertyKind::Safety, std::move(tree)};
}

SatResult satisfies(const PrefixTree& language, const TraceProperty& p) {
  SatResult r;
  bool all_confirmed = true;
  for (const auto& done : language.completed()) {
    Verdict v = p.monitor(done);
    if (v == Verdict::Violated) {
      std::size_t n = 0;
      while (n < done.size() && p.monitor(TesPrefix(done.begin(), done.begin() + n)) != Verdict::Violated) ++n;
      TesPrefix w(done.begin(), done.begin() + n);
      if (r.verdict != Verdict::Violated || w.size() < r.witness->size()) r.witness = std::move(w);
      r.verdict = Verdict::Violated;
    }
    all_confirmed = all_confirmed && v == Verdict::Confirmed;
  }
  if (r.verdict != Verdict::Violated && all_confirmed && !language.empty()) r.verdict = Verdict::Confirmed;
  return r;
}

SatResult satisfies(const Component& c, const TraceProperty& p, const TimeStamp& horizon, const Rational& grid,
                    std::size_t node_cap) {
  return satisfies(prefixes(c, horizon, grid, node_cap), p);
}

Component componentize(const PrefixTree& tree, std::string name) { return tree_component(std::move(name), tree); }

Component componentize(const TraceProperty& p) {
  if (!p.tree) throw NonConstructiveProperty(p.name + " has no constructive description");
  return tree_component(p.name, *p.tree, p.scope);
}

EquivResult satisfies_via_intersection(const Component& c, const Component& cp, const TimeStamp& horizon,
                                       const Rational& grid, std::size_t node_cap) {
  return equiv_upto(intersection(c, cp), c, horizon, grid, node_cap);
}

Component coordinate(const Component& c, const Component& cp, const CompatRelation& rel, const CompositionFn& f) {
  return product(c, cp, rel, f);
}

std::string HyperCheckResult::str() const {
  switch (outcome) {
    case Outcome::Pass: return "pass after " + std::to_string(tried) + " mutations";
    case Outcome::Inconclusive: return "inconclusive: budget exhausted after " + std::to_string(tried) + " mutations";
    case Outcome::Counterexample:
      return "counterexample: base " + prefix_str(base) + ", " + mutation + ", rejected " + prefix_str(rejected);
  }
  return "?";
}

namespace {

// Shortest prefixes first, so counterexamples stay small.
std::vector<TesPrefix> by_length(const PrefixTree& t) {
  std::vector<TesPrefix> all = t.prefixes();
  std::stable_sort(all.begin(), all.end(), [](const TesPrefix& a, const TesPrefix& b) { return a.size() < b.size(); });
  return all;
}

}  // namespace

HyperCheckResult check_insert_closure(const Component& c, const std::vector<Observable>& x, const TimeStamp& horizon,
                                      const Rational& grid, std::size_t budget) {
  if (x.empty()) throw std::invalid_argument("insertion set must be nonempty");
  TimeDomain dom = TimeDomain::grid(horizon, grid);
  HyperCheckResult r;
  for (const auto& p : by_length(prefixes(c, horizon, grid))) {
    for (std::size_t i = 0; i <= p.size(); ++i) {
      TimeStamp lo = i == 0 ? Rational(0) : p[i - 1].time;
      for (const auto& t : dom.after(lo, Rational(0))) {
        if (i < p.size() && !(t < p[i].time)) break;
        for (const auto& o : x) {
          if (r.tried == budget) {
            r.outcome = HyperCheckResult::Outcome::Inconclusive;
            return r;
          }
          ++r.tried;
          TesPrefix q = p;
          q.insert(q.begin() + static_cast<std::ptrdiff_t>(i), Observation{o, t});
          if (!admits(c, q)) {
            r.outcome = HyperCheckResult::Outcome::Counterexample;
            r.base = p;
            r.mutation = "insert " + o.str() + " at " + t.str() + " (position " + std::to_string(i) + ")";
            r.rejected = std::move(q);
            return r;
          }
        }
      }
    }
  }
  return r;
}

HyperCheckResult check_shift_closure(const Component& c, const TimeStamp& horizon, const Rational& grid,
                                     const std::vector<Rational>& steps, std::size_t budget) {
  HyperCheckResult r;
  for (const auto& p : by_length(prefixes(c, horizon, grid)))
    for (const auto& step : steps) {
      if (r.tried == budget) {
        r.outcome = HyperCheckResult::Outcome::Inconclusive;
        return r;
      }
      ++r.tried;
      TesPrefix q = p;
      for (std::size_t k = 0; k < q.size(); ++k) q[k].time = step * Rational(static_cast<std::int64_t>(k + 1));
      if (!admits(c, q)) {
        r.outcome = HyperCheckResult::Outcome::Counterexample;
        r.base = p;
        r.mutation = "retime onto step " + step.str();
        r.rejected = std::move(q);
        return r;
      }
    }
  return r;
}

}  // namespace tes
