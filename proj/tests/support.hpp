#pragma once

#include <random>
#include <string>

#include "tes/algebra.hpp"

namespace tes::testing {

inline Event ev(const char* n) { return {n, "", 0}; }
inline Observation at(Observable o, std::int64_t t) { return {std::move(o), Rational(t)}; }

inline EventSet events(std::initializer_list<const char*> names) {
  EventSet e;
  for (const char* n : names) e.insert(ev(n));
  return e;
}

inline Observable random_subset(std::mt19937& rng, const EventSet& e, bool nonempty) {
  for (;;) {
    Observable o;
    for (const auto& x : e)
      if (rng() % 2) o.insert(x);
    if (!nonempty || !o.empty() || e.empty()) return o;
  }
}

// A component given by a few random completed prefixes on the integer grid.
inline Component random_component(std::mt19937& rng, const std::string& name, const EventSet& e, int horizon,
                                  bool nonempty, int max_runs = 4) {
  std::vector<TesPrefix> runs;
  int n = 1 + static_cast<int>(rng() % max_runs);
  for (int r = 0; r < n; ++r) {
    TesPrefix p;
    for (int t = 1; t <= horizon; ++t)
      if (rng() % 2) p.push_back(at(random_subset(rng, e, nonempty), t));
    runs.push_back(std::move(p));
  }
  return tree_component(name, PrefixTree::from_completed(runs), e);
}

}  // namespace tes::testing
