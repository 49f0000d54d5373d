#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "effdiag/error.hpp"
#include "effdiag/diagram.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

using namespace effdiag;

namespace {

SigPtr gs() {
  static const SigPtr sig = std::make_shared<const EffectfulSignature>(global_state_signature());
  return sig;
}

// Two unary generators of each kind on a single sort.
SigPtr unary() {
  static const SigPtr sig = std::make_shared<const EffectfulSignature>(
      std::vector<SortId>{"X"},
      std::vector<GeneratorDecl>{{"u", {"X"}, {"X"}}, {"v", {"X"}, {"X"}}, {"s", {}, {}}},
      std::vector<GeneratorDecl>{{"f", {"X"}, {"X"}}, {"g", {"X"}, {"X"}}, {"g1", {"X"}, {"X"}}, {"g2", {"X"}, {"X"}}});
  return sig;
}

Diagram gen(const std::string& id) { return Diagram::from_generator(gs(), id); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Format;
}

// (a ⊗ id) ; (id ⊗ b) and the other order, for unary generators.
std::pair<Diagram, Diagram> interchange_pair(const SigPtr& sig, const std::string& a, const std::string& b) {
  const Interface xx{"X", "X"};
  Diagram lhs(sig, xx, xx, {{a, 0}, {b, 1}});
  Diagram rhs(sig, xx, xx, {{b, 1}, {a, 0}});
  return {lhs, rhs};
}

}  // namespace

TEST_CASE("identities") {
  for (const Interface& w : {Interface{}, Interface{"X"}, Interface{"X", "X"}}) {
    const auto id = Diagram::identity(gs(), w);
    CHECK(id.empty());
    CHECK(id.dom() == w);
    CHECK(id.cod() == w);
  }
  CHECK(kind_of([] { Diagram::identity(gs(), {"Y"}); }) == ErrorKind::UndeclaredSort);
}

TEST_CASE("generators as diagrams") {
  CHECK(gen("get").dom().empty());
  CHECK(gen("get").cod() == Interface{"X"});
  CHECK(gen("get").size() == 1);
  CHECK(gen("copy").cod() == Interface{"X", "X"});
  CHECK(kind_of([] { gen("nope"); }) == ErrorKind::UnknownGenerator);
}

TEST_CASE("checked construction rejects ill-typed slices") {
  CHECK(kind_of([] { Diagram(gs(), {}, {}, {{"put", 0}}); }) == ErrorKind::IllTyped);
  CHECK(kind_of([] { Diagram(gs(), {"X"}, {"X"}, {{"copy", 1}}); }) == ErrorKind::IllTyped);
  CHECK(kind_of([] { Diagram(gs(), {"X"}, {"X", "X"}, {{"copy", 0}, {"copy", 0}}); }) == ErrorKind::IllTyped);
}

TEST_CASE("composition") {
  CHECK(compose(Diagram::identity(gs(), {}), gen("get")) == gen("get"));
  const auto gp = compose(gen("get"), gen("put"));
  CHECK(gp.size() == 2);
  CHECK(gp.dom().empty());
  CHECK(gp.cod().empty());
  const auto longer = compose(compose(gen("get"), gen("copy")), whisker_right(gen("put"), {"X"}));
  CHECK(longer.cod() == Interface{"X"});
  CHECK(longer.slices().back() == Slice{"put", 0});
  CHECK(kind_of([] { compose(gen("get"), gen("get")); }) == ErrorKind::BoundaryMismatch);
  CHECK(kind_of([] { compose(gen("get"), Diagram::from_generator(unary(), "f")); }) == ErrorKind::SignatureMismatch);
}

TEST_CASE("tensor") {
  const auto print = Diagram::from_generator(unary(), "f");
  CHECK(kind_of([&] { tensor(print, print); }) == ErrorKind::PremonoidalTensorUndefined);
  const auto x = Diagram::identity(gs(), {"X"});
  CHECK(tensor(x, x) == Diagram::identity(gs(), {"X", "X"}));
  const auto a = tensor(gen("copy"), gen("discard"));
  const auto b = compose(whisker_left({"X"}, gen("discard")), whisker_right(gen("copy"), {}));
  CHECK(a.dom() == Interface{"X", "X"});
  CHECK(equals(a, b));
  // One effectful side is fine.
  CHECK(tensor(gen("get"), gen("copy")).size() == 2);
}

TEST_CASE("whiskering") {
  const auto l = whisker_left({"X"}, gen("get"));
  CHECK(l.slices()[0].offset == 1);
  CHECK(l.dom() == Interface{"X"});
  CHECK(l.cod() == Interface{"X", "X"});
  const auto r = whisker_right(gen("get"), {"X"});
  CHECK(r.slices()[0].offset == 0);
  CHECK(r.cod() == Interface{"X", "X"});
  CHECK(whisker_left({}, gen("put")) == gen("put"));
}

TEST_CASE("purity") {
  CHECK(is_pure(Diagram::identity(gs(), {"X"})));
  CHECK_FALSE(is_pure(gen("get")));
  CHECK(is_pure(compose(gen("copy"), whisker_right(gen("discard"), {"X"}))));
}

TEST_CASE("normal form examples") {
  const Interface xxx{"X", "X", "X"};
  const Diagram pure_pair(unary(), xxx, xxx, {{"u", 2}, {"v", 0}});
  CHECK(normal_form(pure_pair).slices() == std::vector<Slice>{{"v", 0}, {"u", 2}});
  CHECK(normal_form(pure_pair).slices() == testing::least_in_class(pure_pair));

  const Diagram effectful_pair(unary(), xxx, xxx, {{"g1", 0}, {"g2", 2}});
  CHECK(normal_form(effectful_pair) == effectful_pair);
  const Diagram swapped(unary(), xxx, xxx, {{"g2", 2}, {"g1", 0}});
  CHECK(normal_form(swapped) == swapped);

  const auto id = Diagram::identity(unary(), {"X"});
  CHECK(normal_form(id) == id);
}

TEST_CASE("interchange fails for effectful generators only") {
  auto [l, r] = interchange_pair(unary(), "f", "g");
  CHECK_FALSE(equals(l, r));
  std::tie(l, r) = interchange_pair(unary(), "u", "g");
  CHECK(equals(l, r));
  CHECK(equals(l, l));
}

TEST_CASE("scalars exchange unless they sit at the same position") {
  const Diagram same(unary(), {}, {}, {{"s", 0}, {"s", 0}});
  CHECK_FALSE(can_exchange(same, 0));
  const Diagram apart(unary(), {"X"}, {"X"}, {{"s", 1}, {"s", 0}});
  CHECK(can_exchange(apart, 0));
  CHECK(normal_form(apart).slices() == std::vector<Slice>{{"s", 0}, {"s", 1}});
  // A scalar between two wires blocks a slice using both of them.
  const SigPtr sig = std::make_shared<const EffectfulSignature>(
      std::vector<SortId>{"X"}, std::vector<GeneratorDecl>{{"s", {}, {}}, {"m", {"X", "X"}, {"X"}}},
      std::vector<GeneratorDecl>{});
  const Diagram blocked(sig, {"X", "X"}, {"X"}, {{"s", 1}, {"m", 0}});
  CHECK_FALSE(can_exchange(blocked, 0));
}

TEST_CASE("a box with no outputs and a box with no inputs meeting at a point stay apart") {
  const Diagram d(gs(), {"X"}, {"X"}, {{"discard", 0}, {"get", 0}});
  CHECK_FALSE(can_exchange(d, 0));
  // get then discard beside it: the swap would produce the pair above, so it is refused.
  const Diagram l(gs(), {"X"}, {"X"}, {{"get", 1}, {"discard", 0}});
  CHECK_FALSE(can_exchange(l, 0));
  const Diagram r(gs(), {"X"}, {"X"}, {{"get", 0}, {"discard", 1}});
  CHECK_FALSE(can_exchange(r, 0));
  CHECK_FALSE(equals(d, l));
  CHECK_FALSE(equals(l, r));
}

TEST_CASE("exchange offsets follow footprints") {
  CHECK(exchange_offsets({0, 1, 2, true}, {2, 1, 1, true}) == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(exchange_offsets({2, 1, 1, true}, {0, 1, 2, true}) == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK_FALSE(exchange_offsets({0, 1, 1, false}, {1, 1, 1, false}));
  CHECK_FALSE(exchange_offsets({0, 1, 2, true}, {1, 1, 1, true}));
  CHECK(kind_of([] { exchange(Diagram(gs(), {}, {}, {{"get", 0}, {"put", 0}}), 0); }) == ErrorKind::IllTyped);
}

TEST_CASE("slice keys distinguish generator ids that contain separators") {
  const SigPtr sig = std::make_shared<const EffectfulSignature>(
      std::vector<SortId>{"X"}, std::vector<GeneratorDecl>{{"a@0;b", {}, {}}, {"a", {}, {}}, {"b", {}, {}}},
      std::vector<GeneratorDecl>{});
  const Diagram one(sig, {}, {}, {{"a@0;b", 0}});
  const Diagram two(sig, {}, {}, {{"a", 0}, {"b", 0}});
  CHECK(slice_key(one) != slice_key(two));
}

TEST_CASE("normal form properties on random diagrams") {
  testing::Rng rng(11);
  for (int round = 0; round < 400; ++round) {
    const SigPtr sig = testing::random_signature(rng);
    const Diagram d = testing::random_diagram(rng, sig, 7);
    const NormalForm nf = normal_form_with_witness(d);
    CAPTURE(slice_key(d));
    CHECK(normal_form(nf.diagram) == nf.diagram);                 // idempotent
    CHECK(apply_exchanges(d, nf.witness) == nf.diagram);          // witness replays
    CHECK(effectful_subsequence(nf.diagram) == effectful_subsequence(d));
    CHECK(nf.diagram.slices() == testing::least_in_class(d));     // matches brute force
    const Diagram shuffled = testing::random_exchanges(rng, d, 6);
    CHECK(equals(d, shuffled));
  }
}

TEST_CASE("equals is a congruence") {
  testing::Rng rng(5);
  int composed = 0;
  for (int round = 0; round < 300; ++round) {
    const SigPtr sig = testing::random_signature(rng);
    const Diagram a = testing::random_diagram(rng, sig, 5);
    const Diagram b = testing::random_exchanges(rng, a, 4);
    REQUIRE(equals(a, b));
    const Interface side = testing::random_word(rng, *sig, 2);
    CHECK(equals(whisker_left(side, a), whisker_left(side, b)));
    CHECK(equals(whisker_right(a, side), whisker_right(b, side)));
    // Extend by a random continuation from a's codomain.
    Diagram c = Diagram::identity(sig, a.cod());
    for (int tries = 0; tries < 20; ++tries) {
      Diagram cand = testing::random_diagram(rng, sig, 3);
      if (cand.dom() == a.cod()) {
        c = cand;
        ++composed;
        break;
      }
    }
    CHECK(equals(compose(a, c), compose(b, c)));
    CHECK(equals(compose(Diagram::identity(sig, a.dom()), a), b));
  }
  CHECK(composed > 0);
}

TEST_CASE("every legal exchange can be undone") {
  testing::Rng rng(23);
  for (int round = 0; round < 500; ++round) {
    const Diagram d = testing::random_diagram(rng, testing::random_signature(rng), 6);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (!can_exchange(d, i)) continue;
      const Diagram once = exchange(d, i);
      REQUIRE(can_exchange(once, i));
      CHECK(exchange(once, i) == d);
    }
  }
}

TEST_CASE("single exchanges agree with the brute-force swap rule") {
  testing::Rng rng(31);
  for (int round = 0; round < 300; ++round) {
    const Diagram d = testing::random_diagram(rng, testing::random_signature(rng), 6);
    std::set<std::vector<Slice>> mine;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (can_exchange(d, i)) mine.insert(exchange(d, i).slices());
    std::set<std::vector<Slice>> theirs;
    for (const auto& seq : testing::exchange_class(d))
      if (testing::exchange_distance(d, seq) == 1) theirs.insert(seq);
    CHECK(mine == theirs);
  }
}
