#include "tes/relations.hpp"

#include <algorithm>

namespace tes {

bool EventPattern::matches(const Event& e) const {
  if (name && !(*name == e.name)) return false;
  if (subject && !(*subject == e.subject)) return false;
  if (payload && !(*payload == e.payload)) return false;
  return true;
}

std::string EventPattern::str() const {
  std::string s = name ? name->str() : "_";
  if (subject) s += "@" + subject->str();
  if (payload) s += ";" + payload->str();
  return s;
}

bool GeneratorPair::matches(const Event& l, const Event& r) const {
  return left.matches(l) && right.matches(r) && (!link || link(l.payload, r.payload));
}

bool ObsRelationSpec::matches(const Event& l, const Event& r) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const GeneratorPair& g) { return g.matches(l, r); });
}

ObsRelationSpec ObsRelationSpec::symmetric_closure() const {
  ObsRelationSpec out = *this;
  for (const auto& g : gens_) {
    GeneratorPair m{g.right, g.left, {}, g.label.empty() ? "" : g.label + "~"};
    if (g.link) {
      auto link = g.link;
      m.link = [link](const Value& a, const Value& b) { return link(b, a); };
    }
    out.gens_.push_back(std::move(m));
  }
  return out;
}

ObsRelationSpec ObsRelationSpec::merged_with(const ObsRelationSpec& other) const {
  ObsRelationSpec out = *this;
  for (const auto& g : other.gens_) out.gens_.push_back(g);
  return out;
}

ObsRelationSpec identity_spec(const EventSet& e) {
  ObsRelationSpec s;
  for (const auto& ev : e) s.add({EventPattern::exact(ev), EventPattern::exact(ev), {}, "id"});
  return s;
}

bool related(const ObsRelationSpec& spec, const Observable& o1, const Observable& o2) {
  if (o1.empty() || o2.empty()) return false;
  for (const auto& a : o1)
    if (std::none_of(o2.begin(), o2.end(), [&](const Event& b) { return spec.matches(a, b); })) return false;
  for (const auto& b : o2)
    if (std::none_of(o1.begin(), o1.end(), [&](const Event& a) { return spec.matches(a, b); })) return false;
  return true;
}

bool overlaps(const ObsRelationSpec& spec, const Observable& o1, const Observable& o2) {
  for (const auto& a : o1)
    for (const auto& b : o2)
      if (spec.matches(a, b)) return true;
  return false;
}

bool is_independent(const ObsRelationSpec& spec, const Observable& o, const EventSet& e) {
  return !overlaps(spec, o, e);
}

Observable partnered_left(const ObsRelationSpec& spec, const Observable& o, const EventSet& e) {
  std::vector<Event> out;
  for (const auto& a : o)
    if (std::any_of(e.begin(), e.end(), [&](const Event& b) { return spec.matches(a, b); })) out.push_back(a);
  return Observable(std::move(out));
}

Observable partnered_right(const ObsRelationSpec& spec, const EventSet& e, const Observable& o) {
  std::vector<Event> out;
  for (const auto& b : o)
    if (std::any_of(e.begin(), e.end(), [&](const Event& a) { return spec.matches(a, b); })) out.push_back(b);
  return Observable(std::move(out));
}

CompatRelation CompatRelation::free() { return CompatRelation{}; }

CompatRelation CompatRelation::sync(ObsRelationSpec spec) {
  CompatRelation r;
  r.kind_ = Kind::Sync;
  r.spec_ = std::make_shared<const ObsRelationSpec>(std::move(spec));
  return r;
}

CompatRelation CompatRelation::excl(ObsRelationSpec spec) {
  CompatRelation r = sync(std::move(spec));
  r.kind_ = Kind::Excl;
  return r;
}

CompatRelation CompatRelation::intl(ObsRelationSpec spec) {
  CompatRelation r = sync(std::move(spec));
  r.kind_ = Kind::Intl;
  return r;
}

CompatRelation CompatRelation::conj(CompatRelation a, CompatRelation b) {
  CompatRelation r;
  r.kind_ = Kind::And;
  r.a_ = std::make_shared<const CompatRelation>(std::move(a));
  r.b_ = std::make_shared<const CompatRelation>(std::move(b));
  return r;
}

CompatRelation CompatRelation::disj(CompatRelation a, CompatRelation b) {
  CompatRelation r = conj(std::move(a), std::move(b));
  r.kind_ = Kind::Or;
  return r;
}

std::string CompatRelation::str() const {
  auto gens = [&] { return "[" + std::to_string(spec_->generators().size()) + " pairs]"; };
  switch (kind_) {
    case Kind::Free: return "free";
    case Kind::Sync: return "sync" + gens();
    case Kind::Excl: return "excl" + gens();
    case Kind::Intl: return "intl" + gens();
    case Kind::And: return "and(" + a_->str() + "," + b_->str() + ")";
    case Kind::Or: return "or(" + a_->str() + "," + b_->str() + ")";
  }
  return "?";
}

namespace {

std::shared_ptr<const std::unordered_set<Event>> as_set(const EventSet& e) {
  return std::make_shared<const std::unordered_set<Event>>(e.begin(), e.end());
}

Observable keep(const Observable& o, const std::unordered_set<Event>& s) {
  std::vector<Event> out;
  for (const auto& e : o)
    if (s.contains(e)) out.push_back(e);
  return Observable(std::move(out));
}

}  // namespace

BoundCompat::BoundCompat(const CompatRelation& rel, const EventSet& e1, const EventSet& e2) : kind_(rel.kind()) {
  switch (kind_) {
    case CompatRelation::Kind::Free: break;
    case CompatRelation::Kind::Sync:
    case CompatRelation::Kind::Excl:
    case CompatRelation::Kind::Intl:
      spec_ = std::make_shared<const ObsRelationSpec>(rel.spec());
      partnered1_ = as_set(partnered_left(*spec_, e1, e2));
      partnered2_ = as_set(partnered_right(*spec_, e1, e2));
      break;
    case CompatRelation::Kind::And:
    case CompatRelation::Kind::Or:
      parts_.emplace_back(rel.lhs(), e1, e2);
      parts_.emplace_back(rel.rhs(), e1, e2);
      break;
  }
}

bool BoundCompat::check(const Observation* h1, const Observation* h2) const {
  using K = CompatRelation::Kind;
  switch (kind_) {
    case K::Free: return true;
    case K::And: return parts_[0].check(h1, h2) && parts_[1].check(h1, h2);
    case K::Or: return parts_[0].check(h1, h2) || parts_[1].check(h1, h2);
    case K::Sync: {
      Observable s1 = h1 ? keep(h1->observable, *partnered1_) : Observable{};
      Observable s2 = h2 ? keep(h2->observable, *partnered2_) : Observable{};
      if (!h1) return s2.empty();
      if (!h2) return s1.empty();
      if (h1->time < h2->time) return s1.empty();
      if (h2->time < h1->time) return s2.empty();
      return (s1.empty() && s2.empty()) || related(*spec_, s1, s2);
    }
    case K::Excl:
      if (!h1 || !h2 || h1->time != h2->time) return true;
      return !overlaps(*spec_, h1->observable, h2->observable);
    case K::Intl:
      if (!h1) return true;
      if (!h2)
        return !h1->observable.empty() && std::all_of(h1->observable.begin(), h1->observable.end(),
                                                      [&](const Event& e) { return partnered1_->contains(e); });
      if (h2->time < h1->time) return true;
      if (h1->time < h2->time) return related(*spec_, h1->observable, h2->observable);
      return false;
  }
  return false;
}

BoundCompat::Alone BoundCompat::alone(bool first, const Observation& o) const {
  using K = CompatRelation::Kind;
  auto decided = [](bool ok) { return ok ? Alone::Holds : Alone::Fails; };
  switch (kind_) {
    case K::Free:
    case K::Sync:
    case K::Excl: return decided(first ? check(&o, nullptr) : check(nullptr, &o));
    case K::Intl:
      if (!first) return Alone::Holds;
      return check(&o, nullptr) ? Alone::Deferred : Alone::Fails;
    case K::And: {
      Alone a = parts_[0].alone(first, o), b = parts_[1].alone(first, o);
      if (a == Alone::Fails || b == Alone::Fails) return Alone::Fails;
      return a == Alone::Holds && b == Alone::Holds ? Alone::Holds : Alone::Deferred;
    }
    case K::Or: {
      Alone a = parts_[0].alone(first, o), b = parts_[1].alone(first, o);
      if (a == Alone::Holds || b == Alone::Holds) return Alone::Holds;
      return a == Alone::Fails && b == Alone::Fails ? Alone::Fails : Alone::Deferred;
    }
  }
  return Alone::Fails;
}

bool head_check(const CompatRelation& rel, const EventSet& e1, const EventSet& e2, const Observation& o1,
                const Observation& o2) {
  return BoundCompat(rel, e1, e2).check(&o1, &o2);
}

namespace {

std::vector<Observable> all_subsets(const EventSet& e1, const EventSet& e2, std::size_t max_events) {
  if (e1.size() > max_events || e2.size() > max_events)
    throw DomainTooLarge("exhaustive relation check limited to " + std::to_string(max_events) + " events per side");
  EventSet u = obs_union(e1, e2);
  const auto& ev = u.events();
  std::vector<Observable> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ev.size()); ++mask) {
    std::vector<Event> pick;
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (mask >> i & 1) pick.push_back(ev[i]);
    out.emplace_back(std::move(pick));
  }
  return out;
}

std::string pair_str(const Observable& a, const Observable& b) { return "(" + a.str() + ", " + b.str() + ")"; }

}  // namespace

Property1Report check_property1(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2,
                                std::size_t max_events) {
  auto subs = all_subsets(e1, e2, max_events);
  const std::size_t n = subs.size();
  std::vector<char> rel(n * n), ind(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rel[i * n + j] = related(spec, subs[i], subs[j]);
      ind[i * n + j] = !overlaps(spec, subs[i], subs[j]);
    }
  std::vector<std::size_t> uni(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) uni[i * n + j] = i | j;  // subsets are indexed by bitmask

  Property1Report r;
  auto fail = [&](int item, std::string w) {
    if (r.holds[item]) {
      r.holds[item] = false;
      r.witness[item] = std::move(w);
    }
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (ind[a * n + b] && ind[a * n + c] && !ind[a * n + uni[b * n + c]])
          fail(0, "ind" + pair_str(subs[a], subs[b]) + " and ind" + pair_str(subs[a], subs[c]));
        if (ind[b * n + c] && ind[a * n + c] && !ind[uni[a * n + b] * n + c])
          fail(0, "ind" + pair_str(subs[b], subs[c]) + " and ind" + pair_str(subs[a], subs[c]));
        if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c])
          fail(1, pair_str(subs[a], subs[b]) + " and " + pair_str(subs[b], subs[c]));
        if (rel[a * n + b] && rel[a * n + c] && !(rel[b * n + c] && rel[c * n + b]))
          fail(2, pair_str(subs[a], subs[b]) + " and " + pair_str(subs[a], subs[c]));
        if (rel[a * n + c] && rel[b * n + c] && !(rel[a * n + b] && rel[b * n + a]))
          fail(3, pair_str(subs[a], subs[c]) + " and " + pair_str(subs[b], subs[c]));
      }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rel[a * n + b]) pairs.emplace_back(a, b);
  for (auto [a, b] : pairs)
    for (auto [c, d] : pairs)
      if (!rel[uni[a * n + c] * n + uni[b * n + d]])
        fail(4, pair_str(subs[a], subs[b]) + " and " + pair_str(subs[c], subs[d]));
  return r;
}

bool is_symmetric(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2, std::size_t max_events) {
  auto subs = all_subsets(e1, e2, max_events);
  for (const auto& a : subs)
    for (const auto& b : subs)
      if (related(spec, a, b) != related(spec, b, a)) return false;
  return true;
}

bool is_coreflexive(const ObsRelationSpec& spec, const EventSet& e1, const EventSet& e2, std::size_t max_events) {
  auto subs = all_subsets(e1, e2, max_events);
  for (const auto& a : subs)
    for (const auto& b : subs)
      if (related(spec, a, b) && !(a == b)) return false;
  return true;
}

}  // namespace tes
