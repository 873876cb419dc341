#pragma once

#include <cstddef>

#include "tes/algebra.hpp"

namespace tes {

// Brute-force product language: every pair of completed operand prefixes
// that passes the head-wise walk, merged. No product state machine involved.
PrefixTree oracle_language(const EventSet& e1, const EventSet& e2, const CompatRelation& rel,
                           const CompositionFn& f, const PrefixTree& l1, const PrefixTree& l2,
                           std::size_t max_pairs = 4'000'000);

PrefixTree oracle_language(const Component& c1, const Component& c2, const CompatRelation& rel,
                           const CompositionFn& f, const TimeStamp& horizon, const Rational& grid,
                           std::size_t max_pairs = 4'000'000);

}  // namespace tes
