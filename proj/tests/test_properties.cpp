#include "doctest.h"
#include "support.hpp"
#include "tes/properties.hpp"

using namespace tes;
using namespace tes::testing;

namespace {

// Emits any of the given observables at any admissible time.
Component chatter(const std::vector<Observable>& offers, const EventSet& iface) {
  return make_component("chatter", iface, State::of(0), [offers](const State& s, const TimeStamp&) {
    std::vector<StepChoice> out;
    for (const auto& o : offers) out.push_back({o, std::nullopt, s});
    return out;
  });
}

// Keeps a random subset of the nodes of `t`, closed under prefixes.
PrefixTree random_subtree(std::mt19937& rng, const PrefixTree& t) {
  std::vector<TesPrefix> keep;
  for (const auto& p : t.prefixes()) {
    bool ok = rng() % 5 != 0;
    if (ok) keep.push_back(p);
  }
  std::vector<TesPrefix> closed;
  for (const auto& p : keep) {
    bool all = true;
    for (std::size_t n = 0; n < p.size() && all; ++n)
      all = std::find(keep.begin(), keep.end(), TesPrefix(p.begin(), p.begin() + n)) != keep.end();
    if (all) closed.push_back(p);
  }
  return PrefixTree::from_prefixes_all_idle(closed);
}

}  // namespace

TEST_CASE("finiteness is never decided on prefixes") {
  auto p = p_finite(events({"a"}));
  CHECK(p.monitor({}) == Verdict::SatisfiedSoFar);
  CHECK(p.monitor({at({ev("a")}, 1), at({ev("a")}, 2)}) == Verdict::SatisfiedSoFar);
  CHECK(p.monitor({at({}, 1), at({}, 2)}) == Verdict::SatisfiedSoFar);
  CHECK(p.kind == PropertyKind::Liveness);
  CHECK(satisfies(alternating_component("alt", ev("a"), ev("b")), p, Rational(3), Rational(1)).verdict ==
        Verdict::SatisfiedSoFar);
}

TEST_CASE("satisfies reports the shortest violating prefix") {
  Component c = alternating_component("alt", ev("a"), ev("b"));
  auto no_b = tree_property("no-b", PrefixTree::from_prefixes_all_idle({{}, {at({ev("a")}, 1)}, {at({ev("a")}, 2)},
                                                                          {at({ev("a")}, 3)}}));
  auto r = satisfies(c, no_b, Rational(3), Rational(1));
  CHECK(r.verdict == Verdict::Violated);
  REQUIRE(r.witness);
  CHECK(r.witness->size() == 2);
  CHECK(r.witness->back().observable == Observable{ev("b")});
  auto own = tree_property("own", PrefixTree::from_prefixes_all_idle(prefixes(c, Rational(3), Rational(1)).prefixes()));
  CHECK(satisfies(c, own, Rational(3), Rational(1)).verdict == Verdict::SatisfiedSoFar);
}

TEST_CASE("tree property verdicts are stable under extension") {
  std::mt19937 rng(2);
  EventSet e = events({"a", "b"});
  for (int round = 0; round < 30; ++round) {
    Component c = random_component(rng, "c", e, 3, true);
    PrefixTree t = prefixes(c, Rational(3), Rational(1));
    auto p = tree_property("p", random_subtree(rng, t));
    for (const auto& q : t.prefixes())
      if (p.monitor(q) == Verdict::Violated)
        for (const auto& ext : t.prefixes())
          if (ext.size() > q.size() && std::equal(q.begin(), q.end(), ext.begin()))
            CHECK(p.monitor(ext) == Verdict::Violated);
  }
}

TEST_CASE("componentize round-trips languages") {
  std::mt19937 rng(8);
  for (int round = 0; round < 20; ++round) {
    Component c = random_component(rng, "c", events({"a", "b"}), 3, false);
    PrefixTree t = prefixes(c, Rational(3), Rational(1));
    CHECK(prefixes(componentize(t), Rational(3), Rational(1)) == t);
  }
  Component empty = componentize(PrefixTree{});
  CHECK(empty.interface.empty());
  CHECK(prefixes(empty, Rational(3), Rational(1)).empty());
  CHECK_THROWS_AS(componentize(p_finite(events({"a"}))), NonConstructiveProperty);
  Component marked = componentize(PrefixTree::from_completed({{at({ev("d"), ev("a")}, 1)}}));
  CHECK(marked.interface.contains(ev("d")));
}

TEST_CASE("satisfaction agrees with intersection equality") {
  std::mt19937 rng(17);
  EventSet e = events({"a", "b"});
  int violated = 0;
  for (int round = 0; round < 60; ++round) {
    Component c = random_component(rng, "c", e, 3, true);
    auto p = tree_property("p", random_subtree(rng, prefixes(c, Rational(3), Rational(1))), e);
    auto direct = satisfies(c, p, Rational(3), Rational(1));
    auto via = satisfies_via_intersection(c, componentize(p), Rational(3), Rational(1));
    CHECK((direct.verdict != Verdict::Violated) == via.equal);
    if (!via.equal) {
      ++violated;
      REQUIRE(direct.witness);
      CHECK_FALSE(p.tree->contains(*direct.witness));
      // the intersection witness leads to a violating completion of C
      const auto& v = via.witness->prefix;
      bool leads = false;
      for (const auto& done : prefixes(c, Rational(3), Rational(1)).completed())
        leads = leads || (done.size() >= v.size() && std::equal(v.begin(), v.end(), done.begin()) &&
                          p.monitor(done) == Verdict::Violated);
      CHECK(leads);
    }
  }
  CHECK(violated > 5);
}

TEST_CASE("a smaller property scope leaves outside events unconstrained") {
  Component c = alternating_component("alt", ev("a"), ev("b"));
  PrefixTree only_empty = PrefixTree::from_prefixes_all_idle({{}});
  auto narrow = tree_property("narrow", only_empty);
  auto wide = tree_property("wide", only_empty, c.interface);
  CHECK(narrow.scope.empty());
  CHECK(satisfies_via_intersection(c, componentize(narrow), Rational(2), Rational(1)).equal);
  CHECK_FALSE(satisfies_via_intersection(c, componentize(wide), Rational(2), Rational(1)).equal);
  CHECK(satisfies(c, wide, Rational(2), Rational(1)).verdict == Verdict::Violated);
}

TEST_CASE("coordinating with a component's own language changes nothing") {
  std::mt19937 rng(3);
  EventSet e = events({"a", "b"});
  for (int round = 0; round < 20; ++round) {
    Component c = random_component(rng, "c", e, 3, true);
    Component cp = componentize(prefixes(c, Rational(3), Rational(1)));
    Component k = coordinate(c, cp, sync_relation(identity_spec(e)), union_fn());
    CHECK(equiv_upto(k, c, Rational(3), Rational(1)).equal);
  }
}

TEST_CASE("insert closure") {
  EventSet e = events({"a"});
  std::vector<Observable> offers{Observable{}, Observable{ev("a")}};
  auto ok = check_insert_closure(chatter(offers, e), offers, Rational(3), Rational(1), 10'000);
  CHECK(ok.outcome == HyperCheckResult::Outcome::Pass);
  CHECK(ok.tried > 0);
  auto silent = check_insert_closure(chatter({Observable{}}, e), {Observable{}}, Rational(3), Rational(1), 10'000);
  CHECK(silent.outcome == HyperCheckResult::Outcome::Pass);

  Component alt = alternating_component("alt", ev("a"), ev("b"));
  auto bad = check_insert_closure(alt, {Observable{ev("b")}}, Rational(3), Rational(1), 10'000);
  REQUIRE(bad.outcome == HyperCheckResult::Outcome::Counterexample);
  CHECK(bad.base.empty());
  CHECK_FALSE(admits(alt, bad.rejected));
  CHECK(check_insert_closure(alt, {Observable{ev("b")}}, Rational(3), Rational(1), 0).outcome ==
        HyperCheckResult::Outcome::Inconclusive);
}

TEST_CASE("shift closure") {
  Component alt = alternating_component("alt", ev("a"), ev("b"));
  auto r = check_shift_closure(alt, Rational(3), Rational(1), {Rational(1, 2), Rational(3, 2)}, 10'000);
  CHECK(r.outcome == HyperCheckResult::Outcome::Pass);
  Component k = const_component("k", {}, {at({ev("a")}, 1)}, Rational(1));
  auto same = check_shift_closure(k, Rational(3), Rational(1), {Rational(1)}, 10'000);
  CHECK(same.outcome == HyperCheckResult::Outcome::Pass);
  auto moved = check_shift_closure(k, Rational(3), Rational(1), {Rational(1, 2)}, 10'000);
  REQUIRE(moved.outcome == HyperCheckResult::Outcome::Counterexample);
  CHECK(moved.rejected.front().time == Rational(1, 2));
}
