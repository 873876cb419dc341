#include "doctest.h"
#include "support.hpp"
#include "tes/oracle.hpp"

using namespace tes;
using namespace tes::testing;

namespace {

ObsRelationSpec pairs(std::initializer_list<std::pair<const char*, const char*>> ps) {
  ObsRelationSpec s;
  for (auto [l, r] : ps) s.add({EventPattern::exact(ev(l)), EventPattern::exact(ev(r)), {}, ""});
  return s;
}

}  // namespace

TEST_CASE("grid domains") {
  auto d = TimeDomain::grid(Rational(2), Rational(1, 2));
  CHECK(d.times == std::vector<TimeStamp>{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)});
  CHECK(d.after(Rational(1), Rational(1, 1000)) == std::vector<TimeStamp>{Rational(3, 2), Rational(2)});
  CHECK(d.after(Rational(1), Rational(1)) == std::vector<TimeStamp>{Rational(2)});
  CHECK(d.beyond(Rational(5, 2)));
  CHECK(TimeDomain::grid(Rational(0), Rational(1)).times.empty());
}

TEST_CASE("alternating component") {
  Component c = alternating_component("alt", ev("0"), ev("1"));
  CHECK(admits(c, {}));
  CHECK(admits(c, {at({ev("0")}, 1), at({ev("1")}, 2), at({ev("0")}, 7)}));
  CHECK(admits(c, {at({ev("0")}, 3)}));
  CHECK_FALSE(admits(c, {at({ev("1")}, 1)}));
  CHECK_FALSE(admits(c, {at({ev("0")}, 1), at({ev("0")}, 2)}));
  CHECK_FALSE(admits(c, {at({ev("0")}, 2), at({ev("1")}, 1)}));
  CHECK_FALSE(admits(c, {at({ev("0")}, 0)}));
  PrefixTree t = prefixes(c, Rational(3), Rational(1));
  // any subset of the three grid times, labelled alternately
  CHECK(t.size() == 8);
  CHECK(t.completed().size() == 8);
  CHECK(t.contains({at({ev("0")}, 2), at({ev("1")}, 3)}));
}

TEST_CASE("constant component") {
  Component c = const_component("k", {at({ev("a")}, 1)}, {at({ev("b")}, 2)}, Rational(2));
  CHECK(admits(c, {at({ev("a")}, 1), at({ev("b")}, 2), at({ev("b")}, 4)}));
  CHECK(admits(c, {at({ev("a")}, 1)}));
  CHECK_FALSE(admits(c, {at({ev("a")}, 1), at({ev("b")}, 3)}));
  PrefixTree t = prefixes(c, Rational(4), Rational(1));
  CHECK(t.size() == 4);
  CHECK(t.completed() == std::vector<TesPrefix>{{at({ev("a")}, 1), at({ev("b")}, 2), at({ev("b")}, 4)}});
  CHECK_THROWS_AS(const_component("bad", {}, {at({ev("a")}, 1), at({ev("a")}, 3)}, Rational(1)),
                  std::invalid_argument);
}

TEST_CASE("sampled component keeps its initial value") {
  auto f = [](const Value& d0, const TimeStamp& t) { return Value(d0.as<std::int64_t>() + t.floor()); };
  Component c = sampled_component("f", "x", "", f, {Value(0), Value(10)}, {Rational(1), Rational(2)});
  auto obs = [](std::int64_t v, std::int64_t t) { return at({Event{"x", "", Value(v)}}, t); };
  CHECK(admits(c, {obs(1, 1), obs(2, 2)}));
  CHECK(admits(c, {obs(11, 1), obs(12, 2)}));
  CHECK(admits(c, {obs(12, 2)}));
  CHECK_FALSE(admits(c, {obs(1, 1), obs(12, 2)}));
  CHECK_FALSE(admits(c, {obs(3, 3)}));
  CHECK(c.interface.size() == 4);
}

TEST_CASE("join of two alternators on a shared event") {
  Component x = alternating_component("x", ev("a"), ev("b"));
  Component y = alternating_component("y", ev("b"), ev("c"));
  Component j = join(x, y);
  CHECK(j.interface.size() == 3);
  CHECK(admits(j, {at({ev("a")}, 1), at({ev("b")}, 2), at({ev("c")}, 3)}));
  CHECK(admits(j, {at({ev("a")}, 1), at({ev("b")}, 2), at({ev("c"), ev("a")}, 3)}));
  CHECK_FALSE(admits(j, {at({ev("b")}, 1)}));
  CHECK_FALSE(admits(j, {at({ev("a")}, 1), at({ev("c")}, 2)}));
  Component i = intersection(x, x);
  CHECK(equiv_upto(i, x, Rational(3), Rational(1)).equal);
}

TEST_CASE("product languages equal the brute-force oracle") {
  std::mt19937 rng(21);
  EventSet e1 = events({"a", "b"}), e2 = events({"c", "d"});
  std::vector<std::pair<std::string, CompatRelation>> rels{
      {"free", free_relation()},
      {"sync", sync_relation(pairs({{"a", "c"}}))},
      {"excl", excl_relation(pairs({{"a", "c"}, {"b", "d"}}))},
      {"intl", intl_relation(pairs({{"a", "c"}}))},
      {"and", and_relation(sync_relation(pairs({{"a", "c"}})), excl_relation(pairs({{"b", "d"}})))},
      {"or", or_relation(sync_relation(pairs({{"a", "c"}})), excl_relation(pairs({{"a", "c"}})))},
  };
  for (int round = 0; round < 40; ++round) {
    Component c1 = random_component(rng, "c1", e1, 3, false);
    Component c2 = random_component(rng, "c2", e2, 3, false);
    for (const auto& [label, rel] : rels)
      for (const auto& f : {union_fn(), inter_fn()}) {
        CAPTURE(label);
        CAPTURE(round);
        auto diff = tree_difference(prefixes(product(c1, c2, rel, f), Rational(3), Rational(1)),
                                    oracle_language(c1, c2, rel, f, Rational(3), Rational(1)));
        CHECK_MESSAGE(!diff, (diff ? diff->str() : ""));
      }
    Component s1 = random_component(rng, "s1", events({"a", "b"}), 3, false);
    Component s2 = random_component(rng, "s2", events({"a", "c"}), 3, false);
    auto shared_rel = sync_relation(identity_spec(events({"a"})));
    CHECK(prefixes(join(s1, s2), Rational(3), Rational(1)) ==
          oracle_language(s1, s2, shared_rel, union_fn(), Rational(3), Rational(1)));
  }
}

TEST_CASE("join equals intersection on equal interfaces") {
  std::mt19937 rng(4);
  EventSet e = events({"a", "b"});
  for (int round = 0; round < 30; ++round) {
    Component c1 = random_component(rng, "c1", e, 3, false);
    Component c2 = random_component(rng, "c2", e, 3, false);
    CHECK(equiv_upto(join(c1, c2), intersection(c1, c2), Rational(3), Rational(1)).equal);
  }
}

TEST_CASE("admits agrees with tree membership for replayed trees") {
  std::mt19937 rng(9);
  EventSet e = events({"a", "b"});
  for (int round = 0; round < 50; ++round) {
    Component c = random_component(rng, "c", e, 4, false);
    PrefixTree t = prefixes(c, Rational(4), Rational(1));
    for (const auto& p : t.prefixes()) CHECK(admits(c, p));
    for (int k = 0; k < 10; ++k) {
      TesPrefix q;
      for (int s = 1; s <= 4; ++s)
        if (rng() % 3 == 0) q.push_back(at(random_subset(rng, e, false), s));
      CHECK(admits(c, q) == t.contains(q));
    }
  }
}

TEST_CASE("tree differences report a witness") {
  PrefixTree a = PrefixTree::from_completed({{at({ev("a")}, 1)}, {at({ev("b")}, 2)}});
  PrefixTree b = PrefixTree::from_completed({{at({ev("a")}, 1)}});
  PrefixTree c = PrefixTree::from_completed({{at({ev("a")}, 1)}, {}});
  CHECK(a == a);
  auto d = tree_difference(a, b);
  REQUIRE(d);
  CHECK(d->in_first);
  CHECK(d->prefix == TesPrefix{at({ev("b")}, 2)});
  auto d2 = tree_difference(b, c);
  REQUIRE(d2);
  CHECK(d2->completion_only);
  CHECK_FALSE(d2->in_first);
  CHECK(d2->prefix.empty());
  CHECK(tree_difference(PrefixTree{}, PrefixTree{}) == std::nullopt);
  CHECK(tree_difference(PrefixTree{}, b)->prefix.empty());
}

TEST_CASE("exploration guards") {
  Component c = alternating_component("alt", ev("0"), ev("1"));
  CHECK_THROWS_AS(prefixes(c, Rational(10), Rational(1), 50), EnumerationOverflow);
  Component bad = make_component("bad", events({"a"}), State::of(0), [](const State& s, const TimeStamp&) {
    return std::vector<StepChoice>{{Observable{ev("z")}, std::nullopt, s}};
  });
  CHECK_THROWS_AS(prefixes(bad, Rational(2), Rational(1)), InterfaceViolation);
}

TEST_CASE("lifted check walks heads in time order") {
  BoundCompat k(sync_relation(pairs({{"a", "c"}})), events({"a", "b"}), events({"c", "d"}));
  CHECK(lifted_check(k, {at({ev("a")}, 1)}, {at({ev("c")}, 1)}));
  CHECK(lifted_check(k, {at({ev("b")}, 1), at({ev("a")}, 2)}, {at({ev("d")}, 1), at({ev("c")}, 2)}));
  CHECK_FALSE(lifted_check(k, {at({ev("a")}, 1)}, {}));
  CHECK_FALSE(lifted_check(k, {at({ev("a")}, 2)}, {at({ev("c")}, 1)}));
  CHECK(lifted_check(k, {at({ev("b")}, 1)}, {at({ev("d")}, 3)}));
}

TEST_CASE("division recovers the dividend's left operand") {
  std::mt19937 rng(13);
  for (int round = 0; round < 5; ++round) {
    Component c1 = random_component(rng, "c1", events({"a"}), 3, false, 3);
    Component c2 = random_component(rng, "c2", events({"c"}), 3, false, 3);
    Component p = product(c1, c2, free_relation(), union_fn());
    PrefixTree q = divide_bounded(p, c2, free_relation(), union_fn(), Rational(3), Rational(1));
    for (const auto& s : prefixes(c1, Rational(3), Rational(1)).completed()) CHECK(q.completes(s));
  }
}

TEST_CASE("oracle handles empty operands") {
  PrefixTree none;
  PrefixTree one = PrefixTree::from_completed({{}});
  CHECK(oracle_language(events({"a"}), events({"b"}), free_relation(), union_fn(), none, one).empty());
  CHECK(oracle_language(events({"a"}), events({"b"}), free_relation(), union_fn(), one, one) == one);
}
