#include "tes/oracle.hpp"

namespace tes {

namespace {

// Walks both sequences by index; the earlier head advances, equal times
// advance together, a finished sequence counts as beyond.
bool walk(const BoundCompat& rel, const TesPrefix& a, const TesPrefix& b, std::size_t i, std::size_t j) {
  for (;;) {
    bool more_a = i < a.size(), more_b = j < b.size();
    if (!more_a && !more_b) return true;
    if (!rel.check(more_a ? &a[i] : nullptr, more_b ? &b[j] : nullptr)) return false;
    if (more_a && more_b && a[i].time == b[j].time) {
      ++i;
      ++j;
    } else if (!more_b || (more_a && a[i].time < b[j].time)) {
      ++i;
    } else {
      ++j;
    }
  }
}

}  // namespace

PrefixTree oracle_language(const EventSet& e1, const EventSet& e2, const CompatRelation& rel,
                           const CompositionFn& f, const PrefixTree& l1, const PrefixTree& l2,
                           std::size_t max_pairs) {
  std::vector<TesPrefix> d1 = l1.completed(), d2 = l2.completed();
  if (static_cast<double>(d1.size()) * static_cast<double>(d2.size()) > static_cast<double>(max_pairs))
    throw EnumerationOverflow(max_pairs);
  BoundCompat check(rel, e1, e2);
  std::vector<TesPrefix> out;
  for (const auto& p : d1)
    for (const auto& q : d2)
      if (walk(check, p, q, 0, 0)) out.push_back(merge_prefixes(p, q, f.fn));
  return PrefixTree::from_completed(out);
}

PrefixTree oracle_language(const Component& c1, const Component& c2, const CompatRelation& rel,
                           const CompositionFn& f, const TimeStamp& horizon, const Rational& grid,
                           std::size_t max_pairs) {
  return oracle_language(c1.interface, c2.interface, rel, f, prefixes(c1, horizon, grid), prefixes(c2, horizon, grid),
                         max_pairs);
}

}  // namespace tes
