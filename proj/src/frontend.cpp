#include "effdiag/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "effdiag/error.hpp"

namespace effdiag::frontend {

namespace {

std::string where(const Position& p) { return std::to_string(p.line) + ":" + std::to_string(p.column); }

[[noreturn]] void fail(ErrorKind kind, const Position& p, const std::string& msg) {
  throw Error(kind, where(p) + ": " + msg);
}

enum class Tok { ident, string, lparen, rparen, lbrace, rbrace, comma, semi, colon, equals, bind, feed, arrow, end };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return "'" + t.text + "'";
    case Tok::string: return "string literal";
    case Tok::end: return "end of input";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Position p = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, "", p});
        return out;
      }
      char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' ||
                                    src_[i_] == '\''))
          id += advance();
        out.push_back({Tok::ident, std::move(id), p});
      } else if (c == '"') {
        out.push_back({Tok::string, string_literal(), p});
      } else if (starts("<-")) {
        advance(), advance();
        out.push_back({Tok::bind, "<-", p});
      } else if (starts("-<")) {
        advance(), advance();
        out.push_back({Tok::feed, "-<", p});
      } else if (starts("->")) {
        advance(), advance();
        out.push_back({Tok::arrow, "->", p});
      } else {
        Tok k;
        switch (c) {
          case '(': k = Tok::lparen; break;
          case ')': k = Tok::rparen; break;
          case '{': k = Tok::lbrace; break;
          case '}': k = Tok::rbrace; break;
          case ',': k = Tok::comma; break;
          case ';': k = Tok::semi; break;
          case ':': k = Tok::colon; break;
          case '=': k = Tok::equals; break;
          default: fail(ErrorKind::SyntaxError, p, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, advance()), p});
      }
    }
  }

 private:
  bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
        advance();
      } else if (starts("--") && !starts("-<") && !starts("->")) {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string string_literal() {
    Position start = pos_;
    advance();
    std::string text;
    while (true) {
      if (i_ >= src_.size() || src_[i_] == '\n') fail(ErrorKind::SyntaxError, start, "unterminated string literal");
      char c = advance();
      if (c == '"') return text;
      if (c == '\\') {
        if (i_ >= src_.size()) fail(ErrorKind::SyntaxError, start, "unterminated string literal");
        char e = advance();
        switch (e) {
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          default: fail(ErrorKind::SyntaxError, pos_, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        text += c;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Position pos_;
};

bool is_keyword(const std::string& s) { return s == "proc" || s == "do" || s == "return"; }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    if (peek().kind == Tok::ident && peek().text != "proc" && peek(1).kind == Tok::equals) {
      p.name = next().text;
      next();
    }
    keyword("proc");
    p.params = tuple(true);
    expect(Tok::arrow, "'->'");
    keyword("do");
    if (peek().kind == Tok::lbrace) {
      next();
      p.braces = true;
    }
    while (!(peek().kind == Tok::ident && peek().text == "return")) {
      if (peek().kind == Tok::semi) {
        next();
        continue;
      }
      if (peek().kind == Tok::end || peek().kind == Tok::rbrace)
        fail(ErrorKind::SyntaxError, peek().pos, "expected a statement or 'return', found " + describe(peek()));
      p.statements.push_back(statement());
    }
    next();
    p.result = tuple(false);
    while (peek().kind == Tok::semi) next();
    if (p.braces) expect(Tok::rbrace, "'}'");
    if (peek().kind != Tok::end) fail(ErrorKind::SyntaxError, peek().pos, "unexpected " + describe(peek()) + " after return");
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      fail(ErrorKind::SyntaxError, peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  void keyword(const char* kw) {
    if (peek().kind != Tok::ident || peek().text != kw)
      fail(ErrorKind::SyntaxError, peek().pos, std::string("expected '") + kw + "', found " + describe(peek()));
    next();
  }

  Var var(bool annotations) {
    Token t = expect(Tok::ident, "a variable");
    if (is_keyword(t.text)) fail(ErrorKind::SyntaxError, t.pos, "'" + t.text + "' is a keyword");
    Var v{t.text, std::nullopt, t.pos};
    if (annotations && peek().kind == Tok::colon) {
      next();
      v.sort = expect(Tok::ident, "a sort name").text;
    }
    return v;
  }

  Tuple tuple(bool annotations) {
    Tuple t;
    if (peek().kind != Tok::lparen) {
      t.vars.push_back(var(annotations));
      return t;
    }
    next();
    t.parenthesized = true;
    if (peek().kind == Tok::rparen) {
      next();
      return t;
    }
    t.vars.push_back(var(annotations));
    while (peek().kind == Tok::comma) {
      next();
      t.vars.push_back(var(annotations));
    }
    expect(Tok::rparen, "')'");
    return t;
  }

  Stmt statement() {
    Position pos = peek().pos;
    Tuple pattern = tuple(false);
    Token arrow = expect(Tok::bind, "'<-'");
    Stmt s{Stmt::Kind::literal, std::move(pattern), {}, {}, pos};
    if (peek().kind == Tok::string) {
      s.target = next().text;
      return s;
    }
    if (peek().kind != Tok::ident || is_keyword(peek().text))
      fail(ErrorKind::SyntaxError, peek().kind == Tok::end ? arrow.pos : peek().pos,
           "dangling bind: expected a generator or string literal after '<-', found " + describe(peek()));
    s.target = next().text;
    if (peek().kind == Tok::feed) {
      next();
      s.kind = Stmt::Kind::effectful;
      s.argument = tuple(false);
    } else if (peek().kind == Tok::lparen) {
      s.kind = Stmt::Kind::apply;
      s.argument = tuple(false);
      s.argument.parenthesized = true;
    } else {
      fail(ErrorKind::SyntaxError, peek().pos, "expected '(' or '-<' after '" + s.target + "', found " + describe(peek()));
    }
    return s;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string print_tuple(const Tuple& t) {
  if (!t.parenthesized && t.vars.size() == 1) {
    const Var& v = t.vars[0];
    return v.sort ? v.name + " : " + *v.sort : v.name;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < t.vars.size(); ++i) {
    if (i) out += ", ";
    out += t.vars[i].name;
    if (t.vars[i].sort) out += " : " + *t.vars[i].sort;
  }
  return out + ")";
}

}  // namespace

Program parse(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.program();
}

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  if (p.name) out << *p.name << " = ";
  out << "proc " << print_tuple(p.params) << " -> do" << (p.braces ? " {" : "") << "\n";
  for (const auto& s : p.statements) {
    out << "  " << print_tuple(s.pattern) << " <- ";
    switch (s.kind) {
      case Stmt::Kind::literal: out << quote(s.target); break;
      case Stmt::Kind::apply: {
        out << s.target << "(";
        for (std::size_t i = 0; i < s.argument.vars.size(); ++i) out << (i ? ", " : "") << s.argument.vars[i].name;
        out << ")";
        break;
      }
      case Stmt::Kind::effectful: out << s.target << " -< " << print_tuple(s.argument); break;
    }
    out << "\n";
  }
  out << "  return " << print_tuple(p.result) << "\n";
  if (p.braces) out << "}\n";
  return out.str();
}

Diagram elaborate(const Program& program, const SigPtr& sig) {
  struct Live {
    std::string name;
    std::optional<SortId> sort;
    int param = -1;
    Position pos;
  };
  std::vector<Live> word;
  std::vector<std::optional<SortId>> param_sorts;
  std::set<std::string> bound, consumed;
  std::vector<Slice> slices;

  auto bind_fresh = [&](const Var& v) {
    if (!bound.insert(v.name).second) fail(ErrorKind::ReusedVariable, v.pos, "variable '" + v.name + "' is bound twice");
  };

  for (const auto& v : program.params.vars) {
    bind_fresh(v);
    if (v.sort) sig->require_sorts({*v.sort});
    word.push_back({v.name, v.sort, static_cast<int>(param_sorts.size()), v.pos});
    param_sorts.push_back(v.sort);
  }

  // Locates a run of live variables; returns its start offset.
  auto locate = [&](const std::vector<Var>& args, const Position& pos) -> std::size_t {
    std::set<std::string> seen;
    std::vector<std::size_t> at;
    for (const auto& a : args) {
      if (!seen.insert(a.name).second || consumed.count(a.name))
        fail(ErrorKind::ReusedVariable, a.pos, "variable '" + a.name + "' is used more than once");
      auto it = std::find_if(word.begin(), word.end(), [&](const Live& l) { return l.name == a.name; });
      if (it == word.end()) fail(ErrorKind::UnboundVariable, a.pos, "variable '" + a.name + "' is not bound");
      at.push_back(static_cast<std::size_t>(it - word.begin()));
    }
    if (at.empty()) return 0;
    for (std::size_t k = 1; k < at.size(); ++k)
      if (at[k] != at[0] + k) {
        std::string names;
        for (const auto& l : word) names += (names.empty() ? "" : ", ") + l.name;
        fail(ErrorKind::UnalignedVariables, pos,
             "arguments must be adjacent wires in order; live wires are (" + names + ")");
      }
    return at[0];
  };

  for (const auto& s : program.statements) {
    const GeneratorDecl* g = sig->find(s.target);
    if (!g) {
      if (s.kind == Stmt::Kind::literal) fail(ErrorKind::UnknownGenerator, s.pos, "undeclared literal " + quote(s.target));
      fail(ErrorKind::UnknownGenerator, s.pos, "unknown generator '" + s.target + "'");
    }
    const bool pure = sig->is_pure(g->id);
    if (s.kind == Stmt::Kind::effectful && pure)
      fail(ErrorKind::PurityMismatch, s.pos, "'" + g->id + "' is pure; bind it with " + g->id + "(...)");
    if (s.kind != Stmt::Kind::effectful && !pure)
      fail(ErrorKind::PurityMismatch, s.pos, "'" + g->id + "' is effectful; bind it with '" + g->id + " -< ...'");
    if (s.kind == Stmt::Kind::literal && !g->dom.empty())
      fail(ErrorKind::ArityMismatch, s.pos, "literal " + quote(s.target) + " must name a nullary generator");

    const std::vector<Var>& args = s.argument.vars;
    if (args.size() != g->dom.size())
      fail(ErrorKind::ArityMismatch, s.pos, "'" + g->id + "' takes " + std::to_string(g->dom.size()) +
                                                " wires, given " + std::to_string(args.size()));
    if (s.pattern.vars.size() != g->cod.size())
      fail(ErrorKind::ArityMismatch, s.pos, "'" + g->id + "' yields " + std::to_string(g->cod.size()) +
                                                " wires, pattern binds " + std::to_string(s.pattern.vars.size()));
    const std::size_t offset = locate(args, s.pos);
    for (std::size_t k = 0; k < args.size(); ++k) {
      Live& l = word[offset + k];
      if (!l.sort) {
        l.sort = g->dom[k];
        param_sorts[static_cast<std::size_t>(l.param)] = g->dom[k];
      } else if (*l.sort != g->dom[k]) {
        fail(ErrorKind::SortMismatch, args[k].pos, "variable '" + l.name + "' has sort " + *l.sort + ", '" + g->id +
                                                       "' expects " + g->dom[k]);
      }
      consumed.insert(l.name);
    }
    std::vector<Live> outputs;
    for (std::size_t k = 0; k < s.pattern.vars.size(); ++k) {
      bind_fresh(s.pattern.vars[k]);
      outputs.push_back({s.pattern.vars[k].name, g->cod[k], -1, s.pattern.vars[k].pos});
    }
    auto at = word.erase(word.begin() + static_cast<std::ptrdiff_t>(offset),
                         word.begin() + static_cast<std::ptrdiff_t>(offset + args.size()));
    word.insert(at, outputs.begin(), outputs.end());
    slices.push_back({g->id, offset});
  }

  const auto& result = program.result.vars;
  std::set<std::string> returned;
  for (const auto& v : result) {
    if (!returned.insert(v.name).second || consumed.count(v.name))
      fail(ErrorKind::ReusedVariable, v.pos, "variable '" + v.name + "' is used more than once");
    if (std::none_of(word.begin(), word.end(), [&](const Live& l) { return l.name == v.name; }))
      fail(ErrorKind::UnboundVariable, v.pos, "variable '" + v.name + "' is not bound");
  }
  for (const auto& l : word)
    if (!returned.count(l.name)) fail(ErrorKind::UnusedVariable, l.pos, "variable '" + l.name + "' is never used");
  for (std::size_t k = 0; k < result.size(); ++k)
    if (word[k].name != result[k].name)
      fail(ErrorKind::UnalignedVariables, result[k].pos, "returned variables must follow the wire order");

  Interface dom, cod;
  for (std::size_t k = 0; k < param_sorts.size(); ++k) {
    if (!param_sorts[k]) {
      const Var& v = program.params.vars[k];
      fail(ErrorKind::SortMismatch, v.pos, "cannot infer the sort of '" + v.name + "'; annotate it as (" + v.name +
                                               " : Sort)");
    }
    dom.push_back(*param_sorts[k]);
  }
  for (const auto& l : word) {
    if (!l.sort) fail(ErrorKind::SortMismatch, l.pos, "cannot infer the sort of '" + l.name + "'");
    cod.push_back(*l.sort);
  }
  return Diagram(sig, std::move(dom), std::move(cod), std::move(slices));
}

}  // namespace effdiag::frontend
