#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tes/cps.hpp"

namespace tes::dsl {

// Grammar:
//   comp  := ident | ctor '(' args ')'
//   rel   := 'free' | ('sync'|'excl'|'intl') '{' [item {',' item}] '}' | ('and'|'or') '(' rel ',' rel ')'
//   item  := pat '~' pat | pat '*' pat | 'rb' '(' ident ')' | 'fr' '(' ident ')' | 'ff' '(' ident ',' ident ')'
//   pat   := ident ['@' ident]
//   fn    := 'union' | 'inter'
// `a~b` links equal payloads, `a*b` links any payloads.
struct Expr {
  enum class Kind { Ident, Call, Braced, Link };
  Kind kind = Kind::Ident;
  std::string name;  // for Link: "~" or "*"
  std::vector<Expr> args;
  int line = 0, column = 0;

  // Positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.name == b.name && a.args == b.args;
  }
};

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line, column;
};

// Parses a component expression and checks constructor arity and argument sorts.
Expr parse_expr(const std::string& text);
std::string print(const Expr& e);

// Identifiers a component expression may use besides the constructors.
struct Env {
  cps::Scenario scenario;
  std::map<std::string, Component> components;
  TimeStamp horizon{4};
  Rational grid{1};
  std::size_t node_cap = default_node_cap();
};

// Unknown identifiers raise ParseError at their position.
Component build(const Expr& e, const Env& env);
CompatRelation build_relation(const Expr& e, const Env& env);
CompositionFn build_function(const Expr& e);

// Relations and functions on their own, e.g. for the divide command.
Expr parse_relation(const std::string& text);
Expr parse_function(const std::string& text);

}  // namespace tes::dsl
