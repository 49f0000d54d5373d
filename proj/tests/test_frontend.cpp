#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "effdiag/frontend.hpp"
#include "effdiag/json_io.hpp"
#include "support/errors.hpp"
#include "support/random.hpp"

using namespace effdiag;
using namespace effdiag::frontend;
using testing::kind_of;

namespace {

std::string data(const std::string& name) { return std::string(EFFDIAG_TEST_DATA) + "/" + name; }

SigPtr load_sig(const std::string& name) {
  return std::make_shared<const EffectfulSignature>(io::load_signature(data(name)));
}

Diagram compile(const std::string& file, const SigPtr& sig) { return elaborate(parse(io::read_text(data(file))), sig); }

// Error raised by compiling `src`; kind and "line:col: message" text.
std::pair<ErrorKind, std::string> failure(const std::string& src, const SigPtr& sig) {
  try {
    elaborate(parse(src), sig);
  } catch (const Error& e) {
    return {e.kind(), e.detail()};
  }
  FAIL("expected an error");
  return {};
}

std::vector<GenId> pure_ids(const Diagram& d) {
  std::vector<GenId> out;
  for (const auto& s : d.slices())
    if (d.signature().is_pure(s.gen)) out.push_back(s.gen);
  return out;
}

// Sort A; pure copy, discard, join, unit; effectful tick : A -> A, emit : A -> ε.
SigPtr toy() {
  static const SigPtr sig = std::make_shared<const EffectfulSignature>(
      std::vector<SortId>{"A", "B"},
      std::vector<GeneratorDecl>{{"copy", {"A"}, {"A", "A"}},
                                 {"discard", {"A"}, {}},
                                 {"join", {"A", "A"}, {"A"}},
                                 {"unit", {}, {"A"}},
                                 {"conv", {"A"}, {"B"}}},
      std::vector<GeneratorDecl>{{"tick", {"A"}, {"A"}}, {"emit", {"A"}, {}}, {"emitb", {"B"}, {}}});
  return sig;
}

}  // namespace

TEST_CASE("parsing the greeting program") {
  const Program p = parse(io::read_text(data("greeting.arrow")));
  CHECK_FALSE(p.name);
  CHECK(p.params.parenthesized);
  CHECK(p.params.vars.empty());
  REQUIRE(p.statements.size() == 6);
  CHECK(p.statements[0].kind == Stmt::Kind::literal);
  CHECK(p.statements[0].target == "What's your name?");
  CHECK(p.statements[0].pattern.vars.front().name == "question");
  CHECK(p.statements[1].kind == Stmt::Kind::effectful);
  CHECK(p.statements[1].target == "print");
  CHECK(p.statements[2].target == "get");
  CHECK(p.statements[2].argument.vars.empty());
  CHECK(p.statements[4].kind == Stmt::Kind::apply);
  CHECK(p.statements[4].argument.vars.size() == 2);
  CHECK(p.statements[4].pos.line == 6);
  CHECK(p.statements[4].pos.column == 3);
  CHECK(p.result.vars.empty());
}

TEST_CASE("small programs parse") {
  const Program empty = parse("proc () -> do { return () }");
  CHECK(empty.statements.empty());
  CHECK(empty.braces);
  const Program named = parse("f = proc (x : A, y) -> do { z <- join(x, y); return z }");
  REQUIRE(named.name);
  CHECK(*named.name == "f");
  CHECK(named.params.vars[0].sort == SortId("A"));
  CHECK_FALSE(named.params.vars[1].sort);
  CHECK(named.statements.size() == 1);
  CHECK(parse("-- comment only\nproc x -> do\n  return x\n").params.vars.size() == 1);
  CHECK(parse(R"(proc () -> do { s <- "a \"quoted\" word"; return s })").statements[0].target ==
        "a \"quoted\" word");
}

TEST_CASE("syntax errors carry a position") {
  auto syntax = [](const char* src) {
    try {
      parse(src);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SyntaxError);
      return e.detail();
    }
    FAIL("expected a syntax error");
    return std::string();
  };
  CHECK(syntax("proc () -> do { x <- }").starts_with("1:22: dangling bind"));
  CHECK(syntax("proc () -> do {\n  x <- f(\n}").starts_with("3:1:"));
  CHECK(syntax("proc () do { return () }").starts_with("1:9: expected '->'"));
  CHECK(syntax("proc () -> do { return () } extra").starts_with("1:29: unexpected"));
  CHECK(syntax("proc () -> do { s <- \"open").starts_with("1:22: unterminated string literal"));
  CHECK(syntax("proc () -> do { x <- f $ }").starts_with("1:24: unexpected character '$'"));
  CHECK(syntax("proc () -> do { x <- g }").starts_with("1:24: expected '(' or '-<'"));
}

TEST_CASE("pretty printing round-trips") {
  for (const char* file : {"greeting.arrow", "hello_world.arrow", "world_hello_pure.arrow"}) {
    CAPTURE(file);
    const Program p = parse(io::read_text(data(file)));
    const std::string printed = pretty_print(p);
    CHECK(parse(printed) == p);
    CHECK(pretty_print(parse(printed)) == printed);
  }
  const Program braces = parse(R"(f = proc (x : A) -> do { (a, b) <- copy(x); () <- emit -< a; return b })");
  CHECK(parse(pretty_print(braces)) == braces);
}

TEST_CASE("hello world and world hello") {
  const SigPtr sig = load_sig("hello.sig.json");
  const Diagram hw = compile("hello_world.arrow", sig);
  const Diagram wh = compile("world_hello.arrow", sig);
  CHECK(effectful_subsequence(hw) == std::vector<GenId>{"print", "print"});
  CHECK(pure_ids(hw) == std::vector<GenId>{"hello", "world"});
  CHECK_FALSE(equals(hw, wh));
  CHECK(equals(compile("hello_world_pure.arrow", sig), compile("world_hello_pure.arrow", sig)));
  CHECK(is_pure(compile("hello_world_pure.arrow", sig)));
}

TEST_CASE("the greeting program elaborates in program order") {
  const Diagram d = compile("greeting.arrow", load_sig("greeting.sig.json"));
  CHECK(effectful_subsequence(d) == std::vector<GenId>{"print", "get", "print"});
  auto pure = pure_ids(d);
  std::ranges::sort(pure);
  CHECK(pure == std::vector<GenId>{"Hello", "What's your name?", "concatenate"});
  CHECK(d.dom().empty());
  CHECK(d.cod().empty());
}

TEST_CASE("elaboration layout") {
  const Diagram d = elaborate(parse(R"(proc (x : A, y : A) -> do {
      (a, b) <- copy(y)
      z <- join(x, a)
      w <- tick -< z
      () <- emit -< w
      return b })"),
                              toy());
  CHECK(d.dom() == Interface{"A", "A"});
  CHECK(d.cod() == Interface{"A"});
  CHECK(d.slices() == std::vector<Slice>{{"copy", 1}, {"join", 0}, {"tick", 0}, {"emit", 0}});
  // Nullary binds go on the left.
  const Diagram u = elaborate(parse("proc (x : A) -> do { u <- unit(); v <- join(u, x); return v }"), toy());
  CHECK(u.slices() == std::vector<Slice>{{"unit", 0}, {"join", 0}});
  // Parameter sorts can come from their first use.
  const Diagram inferred = elaborate(parse("proc x -> do { () <- emit -< x; return () }"), toy());
  CHECK(inferred.dom() == Interface{"A"});
}

TEST_CASE("elaboration errors") {
  const SigPtr sig = toy();
  auto kind = [&](const char* src) { return failure(src, sig).first; };
  CHECK(kind("proc (x : A) -> do { (a, b) <- copy(x); c <- join(a, a); return (b, c) }") ==
        ErrorKind::ReusedVariable);
  CHECK(failure("proc (x : A) -> do { y <- tick -< q; return y }", sig).second == "1:35: variable 'q' is not bound");
  CHECK(kind("proc (x : A) -> do { y <- tick -< x; return x }") == ErrorKind::ReusedVariable);
  CHECK(kind("proc (x : A, y : A) -> do { () <- emit -< x; return () }") == ErrorKind::UnusedVariable);
  CHECK(kind("proc (x : A) -> do { y <- copy -< x; return y }") == ErrorKind::PurityMismatch);
  CHECK(kind("proc (x : A) -> do { y <- tick(x); return y }") == ErrorKind::PurityMismatch);
  CHECK(kind("proc (x : A, y : A, z : A) -> do { w <- join(x, z); return (y, w) }") ==
        ErrorKind::UnalignedVariables);
  CHECK(kind("proc (x : A, y : A) -> do { w <- join(y, x); return w }") == ErrorKind::UnalignedVariables);
  CHECK(kind("proc (x : A, y : A) -> do { return (y, x) }") == ErrorKind::UnalignedVariables);
  CHECK(kind("proc () -> do { s <- \"nope\"; return s }") == ErrorKind::UnknownGenerator);
  CHECK(kind("proc (x : A) -> do { y <- frob(x); return y }") == ErrorKind::UnknownGenerator);
  CHECK(kind("proc (x : A) -> do { y <- join(x); return y }") == ErrorKind::ArityMismatch);
  CHECK(kind("proc (x : A) -> do { (y, z) <- tick -< x; return (y, z) }") == ErrorKind::ArityMismatch);
  CHECK(kind("proc (x : B) -> do { y <- tick -< x; return y }") == ErrorKind::SortMismatch);
  CHECK(kind("proc x -> do { return x }") == ErrorKind::SortMismatch);
}

TEST_CASE("effectful order follows the source on random straight-line programs") {
  // Chains of tick/emit over fresh units, in random order.
  testing::Rng rng(19);
  for (int round = 0; round < 200; ++round) {
    std::string src = "proc () -> do {";
    std::vector<GenId> effects;
    int fresh = 0;
    std::vector<std::string> live;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      const int pick = static_cast<int>(rng() % 3);
      if (live.empty() || pick == 0) {
        const std::string v = "v" + std::to_string(fresh++);
        src += " " + v + " <- unit();";
        live.insert(live.begin(), v);
      } else if (pick == 1) {
        const std::string v = "v" + std::to_string(fresh++);
        src += " " + v + " <- tick -< " + live.front() + ";";
        live.front() = v;
        effects.push_back("tick");
      } else {
        src += " () <- emit -< " + live.front() + ";";
        live.erase(live.begin());
        effects.push_back("emit");
      }
    }
    src += " return (";
    for (std::size_t k = 0; k < live.size(); ++k) src += (k ? ", " : "") + live[k];
    src += ") }";
    CAPTURE(src);
    const Diagram d = elaborate(parse(src), toy());
    CHECK(effectful_subsequence(d) == effects);
    CHECK(is_pure(d) == effects.empty());
    CHECK(parse(pretty_print(parse(src))) == parse(src));
  }
}
