#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effdiag/diagram.hpp"

namespace effdiag::frontend {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Positions are carried for diagnostics and ignored by ==.
struct Var {
  std::string name;
  std::optional<SortId> sort;  // only parameters may be annotated
  Position pos;

  friend bool operator==(const Var& a, const Var& b) { return a.name == b.name && a.sort == b.sort; }
};

// `()`, `x`, or `(x, y, ...)`.
struct Tuple {
  std::vector<Var> vars;
  bool parenthesized = false;

  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.vars == b.vars && a.parenthesized == b.parenthesized;
  }
};

struct Stmt {
  enum class Kind {
    apply,      // p <- g(a, b)        pure generator
    effectful,  // p <- g -< e         effectful generator
    literal,    // p <- "text"         nullary pure generator named by the text
  };

  Kind kind;
  Tuple pattern;
  std::string target;  // generator id, or the literal text
  Tuple argument;      // apply: argument list; effectful: the fed expression
  Position pos;

  friend bool operator==(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.pattern == b.pattern && a.target == b.target && a.argument == b.argument;
  }
};

struct Program {
  std::optional<std::string> name;
  Tuple params;
  std::vector<Stmt> statements;
  Tuple result;
  bool braces = false;

  friend bool operator==(const Program& a, const Program& b) {
    return a.name == b.name && a.params == b.params && a.statements == b.statements && a.result == b.result &&
           a.braces == b.braces;
  }
};

// Throws SyntaxError with "line:col: message".
Program parse(std::string_view source);

std::string pretty_print(const Program& program);

// Variables occupy wires in a word; a bind consumes a contiguous run of them in
// argument order and leaves its outputs in their place. Nullary binds put
// their outputs at the left end. Each variable is used exactly once.
Diagram elaborate(const Program& program, const SigPtr& sig);

}  // namespace effdiag::frontend
