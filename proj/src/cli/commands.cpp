#include "tes/commands.hpp"

#include <sstream>

#include "tes/oracle.hpp"

namespace tes::cli {

namespace {

json trace_json(const TesPrefix& p) {
  json a = json::array();
  for (const auto& o : p) a.push_back(io::to_json(o));
  return a;
}

json diff_json(const std::optional<TreeDiff>& d) {
  if (!d) return nullptr;
  return {{"prefix", trace_json(d->prefix)}, {"in_first", d->in_first}, {"completion_only", d->completion_only}};
}

std::string tree_listing(const PrefixTree& t) {
  std::ostringstream out;
  io::write_tree(out, t);
  return out.str();
}

}  // namespace

Outcome cmd_check(const dsl::Env& env, const std::string& expr, const std::string& property) {
  TraceProperty p = property_by_name(property, env.scenario);
  Component c = dsl::build(dsl::parse_expr(expr), env);
  SatResult s = satisfies(c, p, env.horizon, env.grid, env.node_cap);
  Outcome o{s.verdict == Verdict::Violated ? kFail : kPass, io::verdict_record(p.name, s.verdict, s.witness), {}};
  if (s.witness) o.listing = io::trace_text(*s.witness);
  return o;
}

Outcome cmd_equiv(const dsl::Env& env, const std::string& e1, const std::string& e2) {
  Component c1 = dsl::build(dsl::parse_expr(e1), env);
  Component c2 = dsl::build(dsl::parse_expr(e2), env);
  EquivResult r = equiv_upto(c1, c2, env.horizon, env.grid, env.node_cap);
  Outcome o{r.equal ? kPass : kFail, {{"equal", r.equal}, {"witness", diff_json(r.witness)}}, {}};
  if (r.witness) o.listing = io::trace_text(r.witness->prefix);
  return o;
}

Outcome cmd_admits(const dsl::Env& env, const std::string& expr, const TesPrefix& trace) {
  Component c = dsl::build(dsl::parse_expr(expr), env);
  bool ok = admits(c, trace);
  return {ok ? kPass : kFail, {{"admits", ok}}, {}};
}

Outcome cmd_hyper(const dsl::Env& env, const std::string& expr, const HyperArgs& args) {
  Component c = dsl::build(dsl::parse_expr(expr), env);
  HyperCheckResult r;
  if (args.mode == "insert")
    r = check_insert_closure(c, args.insert, env.horizon, env.grid, args.budget);
  else if (args.mode == "shift")
    r = check_shift_closure(c, env.horizon, env.grid, args.steps, args.budget);
  else
    throw ConfigError("unknown mode '" + args.mode + "' (expected insert or shift)");
  static const char* names[] = {"pass", "counterexample", "inconclusive"};
  Outcome o{kPass, {{"mode", args.mode}, {"outcome", names[static_cast<int>(r.outcome)]}, {"tried", r.tried}}, {}};
  if (r.outcome == HyperCheckResult::Outcome::Counterexample) {
    o.code = kFail;
    o.record.update({{"base", trace_json(r.base)}, {"mutation", r.mutation}, {"rejected", trace_json(r.rejected)}});
    o.listing = io::trace_text(r.rejected);
  } else if (r.outcome == HyperCheckResult::Outcome::Inconclusive) {
    o.code = kInconclusive;
  }
  return o;
}

Outcome cmd_divide(const dsl::Env& env, const std::string& e1, const std::string& e2, const std::string& rel,
                   const std::string& fn) {
  Component c1 = dsl::build(dsl::parse_expr(e1), env);
  Component c2 = dsl::build(dsl::parse_expr(e2), env);
  CompatRelation r = dsl::build_relation(dsl::parse_relation(rel), env);
  CompositionFn f = dsl::build_function(dsl::parse_function(fn));
  PrefixTree q = divide_bounded(c1, c2, r, f, env.horizon, env.grid, env.node_cap);
  return {kPass, {{"nodes", q.size()}, {"completed", q.completed().size()}}, tree_listing(q)};
}

Outcome cmd_oracle(const dsl::Env& env, const std::string& e1, const std::string& e2, const std::string& rel,
                   const std::string& fn) {
  Component c1 = dsl::build(dsl::parse_expr(e1), env);
  Component c2 = dsl::build(dsl::parse_expr(e2), env);
  CompatRelation r = dsl::build_relation(dsl::parse_relation(rel), env);
  CompositionFn f = dsl::build_function(dsl::parse_function(fn));
  PrefixTree reference = oracle_language(c1, c2, r, f, env.horizon, env.grid);
  PrefixTree built = prefixes(product(c1, c2, r, f), env.horizon, env.grid, env.node_cap);
  auto d = tree_difference(built, reference);
  Outcome o{d ? kFail : kPass, {{"equal", !d}, {"nodes", reference.size()}, {"witness", diff_json(d)}}, tree_listing(reference)};
  return o;
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const EnumerationOverflow& e) {
    return {kInconclusive, {{"error", e.what()}, {"overflow", true}}, {}};
  } catch (const std::exception& e) {
    return {kInconclusive, {{"error", e.what()}}, {}};
  }
}

}  // namespace tes::cli
