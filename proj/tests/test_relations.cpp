#include <random>

#include "doctest.h"
#include "tes/relations.hpp"

using namespace tes;

namespace {

Event ev(const char* n) { return {n, "", 0}; }
Observation at(Observable o, std::int64_t t) { return {std::move(o), Rational(t)}; }

ObsRelationSpec pairs(std::initializer_list<std::pair<const char*, const char*>> ps) {
  ObsRelationSpec s;
  for (auto [l, r] : ps) s.add({EventPattern::exact(ev(l)), EventPattern::exact(ev(r)), {}, ""});
  return s;
}

const EventSet E1{ev("a"), ev("b")};
const EventSet E2{ev("c"), ev("d")};

}  // namespace

TEST_CASE("related covers both sides") {
  auto s = pairs({{"a", "c"}});
  CHECK(related(s, {ev("a")}, {ev("c")}));
  CHECK_FALSE(related(s, {ev("a")}, {ev("d")}));
  CHECK(related(pairs({{"a", "c"}, {"b", "d"}}), {ev("a"), ev("b")}, {ev("c"), ev("d")}));
  CHECK_FALSE(related(s, {}, {}));
  CHECK_FALSE(related(s, {}, {ev("c")}));
  CHECK_FALSE(related(s, {ev("a"), ev("b")}, {ev("c")}));
}

TEST_CASE("independence") {
  auto s = pairs({{"a", "c"}});
  CHECK(is_independent(s, {ev("a"), ev("b")}, {}));
  CHECK_FALSE(is_independent(s, {ev("a")}, E2));
  CHECK(is_independent(s, {ev("b")}, E2));
}

TEST_CASE("free head check accepts everything") {
  auto k = free_relation();
  CHECK(head_check(k, E1, E2, at({ev("a")}, 1), at({ev("a")}, 1)));
  CHECK(head_check(k, E1, E2, at({}, 0), at({ev("b")}, 5)));
  CHECK(head_check(k, E1, E2, at({ev("b")}, 4), at({ev("c")}, 2)));
}

TEST_CASE("sync head check on the a~c example") {
  auto k = sync_relation(pairs({{"a", "c"}}));
  CHECK(head_check(k, E1, E2, at({ev("a")}, 3), at({ev("c")}, 3)));
  CHECK(head_check(k, E1, E2, at({ev("a")}, 3), at({ev("d")}, 2)));
  CHECK_FALSE(head_check(k, E1, E2, at({ev("a")}, 3), at({ev("d")}, 3)));
  CHECK_FALSE(head_check(k, E1, E2, at({ev("a")}, 3), at({ev("d")}, 4)));
  CHECK_FALSE(head_check(k, E1, E2, at({ev("a")}, 1), at({ev("c")}, 2)));
  // independent parts ride along with a related core
  CHECK(head_check(k, E1, E2, at({ev("a"), ev("b")}, 2), at({ev("c"), ev("d")}, 2)));
  // purely independent simultaneous observables compose
  CHECK(head_check(k, E1, E2, at({ev("b")}, 2), at({ev("d")}, 2)));
  CHECK(head_check(k, E1, E2, at({}, 2), at({}, 2)));
  // an independent observable may precede a partnered one, not the other way
  CHECK(head_check(k, E1, E2, at({ev("b")}, 1), at({ev("c")}, 2)));
  CHECK_FALSE(head_check(k, E1, E2, at({ev("b")}, 2), at({ev("c")}, 2)));
}

TEST_CASE("sync with a beyond head") {
  auto s = pairs({{"a", "c"}});
  BoundCompat k(sync_relation(s), E1, E2);
  Observation a = at({ev("a")}, 1), b = at({ev("b")}, 1), c = at({ev("c")}, 1), d = at({ev("d")}, 1);
  CHECK_FALSE(k.check(&a, nullptr));
  CHECK(k.check(&b, nullptr));
  CHECK_FALSE(k.check(nullptr, &c));
  CHECK(k.check(nullptr, &d));
}

TEST_CASE("excl head check") {
  auto k = excl_relation(pairs({{"a", "c"}}));
  CHECK_FALSE(head_check(k, E1, E2, at({ev("a")}, 2), at({ev("c")}, 2)));
  CHECK(head_check(k, E1, E2, at({ev("a")}, 1), at({ev("c")}, 2)));
  CHECK(head_check(k, E1, E2, at({ev("b")}, 2), at({ev("c")}, 2)));
  // containing a related pair is enough to exclude
  CHECK_FALSE(head_check(k, E1, E2, at({ev("a"), ev("b")}, 2), at({ev("c")}, 2)));
}

TEST_CASE("intl head check") {
  EventSet ea{ev("a")}, eb{ev("b")}, ec{ev("c")};
  auto k = intl_relation(pairs({{"a", "b"}}));
  CHECK(head_check(k, ea, eb, at({ev("a")}, 1), at({ev("b")}, 2)));
  CHECK_FALSE(head_check(k, ea, eb, at({ev("a")}, 2), at({ev("b")}, 2)));
  CHECK(head_check(k, ea, eb, at({ev("a")}, 3), at({ev("b")}, 2)));
  CHECK_FALSE(head_check(k, obs_union(ea, ec), eb, at({ev("c")}, 1), at({ev("b")}, 2)));
}

TEST_CASE("and/or combinators") {
  auto s = pairs({{"a", "c"}});
  std::vector<Observation> samples;
  for (std::int64_t t = 1; t <= 2; ++t)
    for (Observable o : {Observable{}, Observable{ev("a")}, Observable{ev("b")}, Observable{ev("a"), ev("b")},
                         Observable{ev("c")}, Observable{ev("d")}, Observable{ev("c"), ev("d")}})
      samples.push_back(at(o, t));
  auto sync = sync_relation(s);
  auto ex = excl_relation(s);
  for (const auto& x : samples)
    for (const auto& y : samples) {
      bool k = head_check(sync, E1, E2, x, y);
      CHECK(head_check(and_relation(free_relation(), sync), E1, E2, x, y) == k);
      CHECK(head_check(or_relation(free_relation(), sync), E1, E2, x, y));
      CHECK(head_check(and_relation(sync, ex), E1, E2, x, y) == (k && head_check(ex, E1, E2, x, y)));
      if (x.time != y.time) CHECK(head_check(ex, E1, E2, x, y));
    }
  CHECK_FALSE(head_check(and_relation(sync, ex), E1, E2, at({ev("a")}, 1), at({ev("c")}, 1)));
}

TEST_CASE("symmetric specs give symmetric head checks") {
  auto s = pairs({{"a", "c"}, {"c", "a"}, {"b", "d"}, {"d", "b"}});
  std::vector<Observation> samples;
  for (std::int64_t t = 1; t <= 2; ++t)
    for (Observable o : {Observable{}, Observable{ev("a")}, Observable{ev("b")}, Observable{ev("a"), ev("b")}})
      samples.push_back(at(o, t));
  std::vector<Observation> right;
  for (std::int64_t t = 1; t <= 2; ++t)
    for (Observable o : {Observable{}, Observable{ev("c")}, Observable{ev("d")}, Observable{ev("c"), ev("d")}})
      right.push_back(at(o, t));
  for (auto rel : {sync_relation(s), excl_relation(s)})
    for (const auto& x : samples)
      for (const auto& y : right) CHECK(head_check(rel, E1, E2, x, y) == head_check(rel, E2, E1, y, x));
}

TEST_CASE("extending a sync spec outside the interfaces changes nothing") {
  std::mt19937 rng(5);
  auto s = pairs({{"a", "c"}});
  auto extended = s.merged_with(pairs({{"x", "y"}, {"a", "y"}, {"x", "c"}}));
  for (int i = 0; i < 500; ++i) {
    Observable o1, o2;
    if (rng() % 2) o1.insert(ev("a"));
    if (rng() % 2) o1.insert(ev("b"));
    if (rng() % 2) o2.insert(ev("c"));
    if (rng() % 2) o2.insert(ev("d"));
    Observation x = at(o1, 1 + rng() % 2), y = at(o2, 1 + rng() % 2);
    CHECK(head_check(sync_relation(s), E1, E2, x, y) == head_check(sync_relation(extended), E1, E2, x, y));
  }
}

TEST_CASE("property 1 checks") {
  EventSet e3{ev("a"), ev("b"), ev("c")};
  auto id = identity_spec(e3);
  auto report = check_property1(id, e3, e3);
  CHECK(report.all());
  CHECK(is_symmetric(id, e3, e3));
  CHECK(is_coreflexive(id, e3, e3));

  auto ac = check_property1(pairs({{"a", "c"}}), {ev("a")}, {ev("c")});
  CHECK(ac.holds[0]);
  CHECK(ac.holds[1]);
  CHECK_FALSE(ac.holds[2]);  // {a}~{c} twice would need {c}~{c}
  CHECK(ac.holds[4]);

  auto chain = pairs({{"a", "b"}, {"b", "c"}});
  auto r = check_property1(chain, {ev("a"), ev("b")}, {ev("b"), ev("c")});
  CHECK_FALSE(r.holds[1]);
  CHECK(r.witness[1].find("a") != std::string::npos);

  CHECK_FALSE(is_symmetric(pairs({{"a", "c"}}), {ev("a")}, {ev("c")}));
  CHECK(is_symmetric(ObsRelationSpec{}, E1, E2));
  CHECK(is_coreflexive(ObsRelationSpec{}, E1, E2));
  CHECK(is_symmetric(pairs({{"a", "c"}}).symmetric_closure(), {ev("a")}, {ev("c")}));

  EventSet big{ev("a"), ev("b"), ev("c"), ev("d"), ev("e")};
  CHECK_THROWS_AS(check_property1(id, big, big), DomainTooLarge);
}

TEST_CASE("identity generators match the identity relation on nonempty observables") {
  EventSet e3{ev("a"), ev("b"), ev("c")};
  auto id = identity_spec(e3);
  std::vector<Observable> subs;
  for (int m = 0; m < 8; ++m) {
    Observable o;
    if (m & 1) o.insert(ev("a"));
    if (m & 2) o.insert(ev("b"));
    if (m & 4) o.insert(ev("c"));
    subs.push_back(o);
  }
  for (const auto& x : subs)
    for (const auto& y : subs) CHECK(related(id, x, y) == (!x.empty() && x == y));
}
