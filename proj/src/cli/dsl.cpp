#include "tes/dsl.hpp"

#include <cctype>

#include "tes/properties.hpp"
#include "tes/reo.hpp"

namespace tes::dsl {

namespace {

enum class Sort { Comp, Rel, Fn, Name, Item };

struct Token {
  enum Kind { Ident, Punct, End } kind;
  std::string text;
  int line, column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) bump();
    if (i_ == s_.size()) return {Token::End, "", line_, col_};
    int line = line_, col = col_;
    char c = s_[i_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        id += s_[i_];
        bump();
      }
      return {Token::Ident, id, line, col};
    }
    if (std::string_view("(){},~*@").find(c) != std::string_view::npos) {
      bump();
      return {Token::Punct, std::string(1, c), line, col};
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  void bump() {
    if (s_[i_++] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : lex_(s) { tok_ = lex_.next(); }

  Expr whole() {
    Expr e = term();
    if (tok_.kind != Token::End) fail("unexpected '" + tok_.text + "' after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(tok_.line, tok_.column, what); }
  bool at(const char* p) const { return tok_.kind == Token::Punct && tok_.text == p; }
  void expect(const char* p) {
    if (!at(p)) fail(std::string("expected '") + p + "'" + (tok_.kind == Token::End ? " at end" : ", got '" + tok_.text + "'"));
    tok_ = lex_.next();
  }
  Expr ident() {
    if (tok_.kind != Token::Ident) fail(tok_.kind == Token::End ? "unexpected end of input" : "expected identifier, got '" + tok_.text + "'");
    Expr e{Expr::Kind::Ident, tok_.text, {}, tok_.line, tok_.column};
    tok_ = lex_.next();
    return e;
  }

  Expr term() {
    Expr e = ident();
    if (at("(")) {
      e.kind = Expr::Kind::Call;
      expect("(");
      if (!at(")")) {
        e.args.push_back(term());
        while (at(",")) {
          expect(",");
          e.args.push_back(term());
        }
      }
      expect(")");
    } else if (at("{")) {
      e.kind = Expr::Kind::Braced;
      expect("{");
      if (!at("}")) {
        e.args.push_back(item());
        while (at(",")) {
          expect(",");
          e.args.push_back(item());
        }
      }
      expect("}");
    }
    return e;
  }

  Expr item() {
    if (tok_.kind == Token::Ident) {
      Token start = tok_;
      Expr left = pattern();
      if (at("~") || at("*")) {
        Expr link{Expr::Kind::Link, tok_.text, {}, start.line, start.column};
        tok_ = lex_.next();
        link.args = {std::move(left), pattern()};
        return link;
      }
      if (at("(") && left.name.find('@') == std::string::npos) {
        Expr call{Expr::Kind::Call, left.name, {}, left.line, left.column};
        expect("(");
        if (!at(")")) {
          call.args.push_back(term());
          while (at(",")) {
            expect(",");
            call.args.push_back(term());
          }
        }
        expect(")");
        return call;
      }
      fail("expected '~' or '*' in relation item");
    }
    fail("expected relation item");
  }

  Expr pattern() {
    Expr e = ident();
    if (at("@")) {
      expect("@");
      e.name += "@" + ident().name;
    }
    return e;
  }

  Lexer lex_;
  Token tok_;
};

const std::map<std::string, std::vector<Sort>>& component_ctors() {
  static const std::map<std::string, std::vector<Sort>> m = {
      {"port", {Sort::Name}},
      {"sync", {Sort::Name, Sort::Name}},
      {"syncdrain", {Sort::Name, Sort::Name}},
      {"fifo", {Sort::Name, Sort::Name}},
      {"merger", {Sort::Name, Sort::Name, Sort::Name}},
      {"alternator", {Sort::Name, Sort::Name, Sort::Name}},
      {"fifo2", {Sort::Name, Sort::Name}},
      {"alternating", {Sort::Name, Sort::Name}},
      {"robot", {Sort::Name}},
      {"battery", {Sort::Name}},
      {"field", {Sort::Name}},
      {"subsystem", {Sort::Name}},
      {"product", {Sort::Rel, Sort::Fn, Sort::Comp, Sort::Comp}},
      {"join", {Sort::Comp, Sort::Comp}},
      {"intersect", {Sort::Comp, Sort::Comp}},
      {"divide", {Sort::Rel, Sort::Fn, Sort::Comp, Sort::Comp}},
      {"coordinate", {Sort::Rel, Sort::Fn, Sort::Comp, Sort::Comp}},
  };
  return m;
}

const std::map<std::string, std::vector<Sort>>& item_ctors() {
  static const std::map<std::string, std::vector<Sort>> m = {
      {"rb", {Sort::Name}}, {"fr", {Sort::Name}}, {"ff", {Sort::Name, Sort::Name}}};
  return m;
}

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Comp: return "component";
    case Sort::Rel: return "relation";
    case Sort::Fn: return "composition function";
    case Sort::Name: return "name";
    case Sort::Item: return "relation item";
  }
  return "";
}

[[noreturn]] void fail_at(const Expr& e, const std::string& what) { throw ParseError(e.line, e.column, what); }

void check(const Expr& e, Sort s);

void check_args(const Expr& e, const std::vector<Sort>& sig) {
  if (e.args.size() != sig.size())
    fail_at(e, e.name + " expects " + std::to_string(sig.size()) + " argument" + (sig.size() == 1 ? "" : "s") +
                   ", got " + std::to_string(e.args.size()));
  for (std::size_t i = 0; i < sig.size(); ++i) check(e.args[i], sig[i]);
}

[[noreturn]] void wrong_sort(const Expr& e, Sort s) {
  fail_at(e, "expected a " + std::string(sort_name(s)) + ", got '" + print(e) + "'");
}

void check(const Expr& e, Sort s) {
  switch (s) {
    case Sort::Comp:
      if (e.kind == Expr::Kind::Ident) return;
      if (e.kind != Expr::Kind::Call) wrong_sort(e, s);
      if (auto it = component_ctors().find(e.name); it != component_ctors().end()) return check_args(e, it->second);
      fail_at(e, "unknown constructor '" + e.name + "'");
    case Sort::Rel:
      if (e.kind == Expr::Kind::Ident && e.name == "free") return;
      if (e.kind == Expr::Kind::Braced && (e.name == "sync" || e.name == "excl" || e.name == "intl")) {
        for (const auto& a : e.args) check(a, Sort::Item);
        return;
      }
      if (e.kind == Expr::Kind::Call && (e.name == "and" || e.name == "or"))
        return check_args(e, {Sort::Rel, Sort::Rel});
      wrong_sort(e, s);
    case Sort::Fn:
      if (e.kind == Expr::Kind::Ident && (e.name == "union" || e.name == "inter")) return;
      wrong_sort(e, s);
    case Sort::Name:
      if (e.kind == Expr::Kind::Ident) return;
      wrong_sort(e, s);
    case Sort::Item:
      if (e.kind == Expr::Kind::Link) return;
      if (e.kind == Expr::Kind::Call)
        if (auto it = item_ctors().find(e.name); it != item_ctors().end()) return check_args(e, it->second);
      wrong_sort(e, s);
  }
}

Expr parse_as(const std::string& text, Sort s) {
  Expr e = Parser(text).whole();
  check(e, s);
  return e;
}

std::string joined(const std::vector<Expr>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + print(args[i]);
  return s;
}

const cps::RobotSetup& setup(const Expr& id, const Env& env) {
  for (const auto* r : {&env.scenario.r1, &env.scenario.r2})
    if (r->robot.str() == id.name) return *r;
  fail_at(id, "unknown robot '" + id.name + "'");
}

EventPattern pattern_of(const Expr& p) {
  auto at = p.name.find('@');
  if (at == std::string::npos) return {Atom(p.name), std::nullopt, std::nullopt};
  return {Atom(p.name.substr(0, at)), Atom(p.name.substr(at + 1)), std::nullopt};
}

ObsRelationSpec spec_of(const Expr& e, const Env& env) {
  ObsRelationSpec spec;
  for (const auto& item : e.args) {
    if (item.kind == Expr::Kind::Link) {
      PayloadLink link;
      if (item.name == "~") link = [](const Value& a, const Value& b) { return a == b; };
      spec.add({pattern_of(item.args[0]), pattern_of(item.args[1]), link, print(item)});
    } else if (item.name == "rb") {
      const auto& r = setup(item.args[0], env);
      spec = spec.merged_with(cps::rb_relation(r.robot, r.battery));
    } else if (item.name == "fr") {
      const auto& r = setup(item.args[0], env);
      spec = spec.merged_with(cps::fr_relation(r.object, r.robot, env.scenario.robot, env.scenario.field));
    } else {
      spec = spec.merged_with(cps::ff_relation(setup(item.args[0], env).object, setup(item.args[1], env).object));
    }
  }
  return spec;
}

}  // namespace

Expr parse_expr(const std::string& text) { return parse_as(text, Sort::Comp); }
Expr parse_relation(const std::string& text) { return parse_as(text, Sort::Rel); }
Expr parse_function(const std::string& text) { return parse_as(text, Sort::Fn); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Ident: return e.name;
    case Expr::Kind::Call: return e.name + "(" + joined(e.args) + ")";
    case Expr::Kind::Braced: return e.name + "{" + joined(e.args) + "}";
    case Expr::Kind::Link: return print(e.args.at(0)) + e.name + print(e.args.at(1));
  }
  return "";
}

CompatRelation build_relation(const Expr& e, const Env& env) {
  if (e.kind == Expr::Kind::Ident) return free_relation();
  if (e.name == "and") return and_relation(build_relation(e.args[0], env), build_relation(e.args[1], env));
  if (e.name == "or") return or_relation(build_relation(e.args[0], env), build_relation(e.args[1], env));
  ObsRelationSpec spec = spec_of(e, env);
  if (e.name == "sync") return sync_relation(std::move(spec));
  if (e.name == "excl") return excl_relation(std::move(spec));
  return intl_relation(std::move(spec));
}

CompositionFn build_function(const Expr& e) { return e.name == "inter" ? inter_fn() : union_fn(); }

Component build(const Expr& e, const Env& env) {
  const auto& sc = env.scenario;
  if (e.kind == Expr::Kind::Ident) {
    if (auto it = env.components.find(e.name); it != env.components.end()) return it->second;
    if (e.name == "system") return cps::system(sc);
    if (e.name == "system_alt") return cps::system_alt(sc);
    fail_at(e, "unknown identifier '" + e.name + "'");
  }
  auto atom = [&](std::size_t i) { return Atom(e.args[i].name); };
  auto sub = [&](std::size_t i) { return build(e.args[i], env); };
  const std::string& n = e.name;
  if (n == "port") return port({atom(0)});
  if (n == "sync") return sync_channel(atom(0), atom(1));
  if (n == "syncdrain") return syncdrain_channel(atom(0), atom(1));
  if (n == "fifo") return fifo_channel(atom(0), atom(1));
  if (n == "merger") return merger_channel(atom(0), atom(1), atom(2));
  if (n == "alternator") return alternator_circuit(atom(0), atom(1), atom(2));
  if (n == "fifo2") return fifo2_circuit(atom(0), atom(1));
  if (n == "alternating")
    return alternating_component("alternating", port_event(atom(0), Value(0)), port_event(atom(1), Value(0)));
  if (n == "robot") return cps::robot_of(setup(e.args[0], env), sc);
  if (n == "battery") return cps::battery_of(setup(e.args[0], env), sc);
  if (n == "field") return cps::field_of(setup(e.args[0], env), sc);
  if (n == "subsystem") return cps::robot_subsystem(setup(e.args[0], env), sc);
  if (n == "join" || n == "intersect") {
    Component a = sub(0), b = sub(1);
    return n == "join" ? join(a, b) : intersection(a, b);
  }
  CompatRelation rel = build_relation(e.args[0], env);
  CompositionFn f = build_function(e.args[1]);
  Component a = sub(2), b = sub(3);
  if (n == "product") return product(a, b, rel, f);
  if (n == "coordinate") return coordinate(a, b, rel, f);
  PrefixTree q = divide_bounded(a, b, rel, f, env.horizon, env.grid, env.node_cap);
  return tree_component("divide", std::move(q), a.interface);
}

}  // namespace tes::dsl
