#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effdiag/json_io.hpp"
#include "effdiag/prover.hpp"
#include "support/errors.hpp"
#include "support/random.hpp"

using namespace effdiag;
using testing::kind_of;

namespace {

const Theory& gst() {
  static const Theory t = global_state_theory();
  return t;
}

Diagram gsd(Interface dom, Interface cod, std::vector<Slice> slices) {
  return Diagram(gst().sig, std::move(dom), std::move(cod), std::move(slices));
}

void check_proof(const Theory& t, const Diagram& from, const Diagram& to, const ProofResult& r) {
  REQUIRE(r.proven());
  CHECK(equals(replay(t, from, r.trace), to));
}

}  // namespace

TEST_CASE("get then put proves equal to nothing in one step") {
  const Diagram gp = gsd({}, {}, {{"get", 0}, {"put", 0}});
  const Diagram id = Diagram::identity(gst().sig, {});
  const ProofResult r = prove_equal(gst(), gp, id);
  REQUIRE(r.proven());
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps.front().rule == "get-put");
  CHECK(r.trace.steps.front().direction == Direction::forward);
  check_proof(gst(), gp, id, r);
  // And the other way round.
  const ProofResult back = prove_equal(gst(), id, gp);
  REQUIRE(back.trace.steps.size() == 1);
  CHECK(back.trace.steps.front().direction == Direction::backward);
  check_proof(gst(), id, gp, back);
}

TEST_CASE("every global state rule is a one-step proof") {
  for (const auto& rule : gst().rules) {
    CAPTURE(rule.name);
    const ProofResult r = prove_equal(gst(), rule.lhs, rule.rhs);
    REQUIRE(r.proven());
    CHECK(r.trace.steps.size() == 1);
    check_proof(gst(), rule.lhs, rule.rhs, r);
  }
}

TEST_CASE("exchange-equal diagrams need no rewrites") {
  const Diagram a = gsd({"X", "X"}, {}, {{"discard", 0}, {"discard", 0}});
  const Diagram b = gsd({"X", "X"}, {}, {{"discard", 1}, {"discard", 0}});
  const ProofResult r = prove_equal(gst(), a, b);
  REQUIRE(r.proven());
  CHECK(r.trace.steps.empty());
  CHECK(r.states_explored == 2);  // one start state per side
}

TEST_CASE("mismatched boundaries are rejected") {
  const Diagram gp = gsd({}, {}, {{"get", 0}, {"put", 0}});
  const Diagram gg = gsd({}, {"X", "X"}, {{"get", 0}, {"get", 0}});
  CHECK(kind_of([&] { prove_equal(gst(), gp, gg); }) == ErrorKind::BoundaryMismatch);
  testing::Rng rng(1);
  const SigPtr other = testing::random_signature(rng);
  CHECK(kind_of([&] { prove_equal(gst(), gp, Diagram::identity(other, {})); }) == ErrorKind::SignatureMismatch);
}

TEST_CASE("race condition outcomes") {
  const Theory race = race_condition_theory();
  for (const auto& goal : race_condition_goals(race)) {
    CAPTURE(goal.name);
    const ProofResult r = prove_equal(race, goal.interleaving, goal.outcome, {100000, 8, 1});
    check_proof(race, goal.interleaving, goal.outcome, r);
    CHECK(r.trace.steps.size() == 3);
  }
}

TEST_CASE("exhausted and limit-exceeded searches are told apart") {
  const Theory empty{gst().sig, {}};
  const Diagram a = gsd({}, {"X", "X"}, {{"get", 0}, {"get", 0}});
  const Diagram b = gsd({}, {"X", "X"}, {{"get", 0}, {"copy", 0}});
  const ProofResult none = prove_equal(empty, a, b);
  CHECK(none.status == ProofResult::Status::exhausted);
  CHECK(none.states_explored == 2);
  // get;get and get;put;get differ in the effects they perform twice over;
  // a tiny budget runs out first.
  const Diagram c = gsd({}, {}, {{"get", 0}, {"discard", 0}, {"get", 0}, {"put", 0}});
  const Diagram d = gsd({}, {}, {{"get", 0}, {"get", 0}, {"put", 0}, {"discard", 0}});
  const ProofResult capped = prove_equal(gst(), c, d, {3, 8, 1});
  CHECK(capped.status == ProofResult::Status::limit_exceeded);
  CHECK(capped.states_explored <= 3);
  CHECK(to_string(capped.status) == "limit-exceeded");
}

TEST_CASE("with no rules the prover agrees with equals") {
  testing::Rng rng(7);
  int positive = 0;
  for (int round = 0; round < 300; ++round) {
    const SigPtr sig = testing::random_signature(rng);
    const Theory empty{sig, {}};
    const Diagram a = testing::random_diagram(rng, sig, 5);
    const Diagram b = round % 2 ? testing::random_exchanges(rng, a, 5) : testing::random_diagram(rng, sig, 5);
    if (a.dom() != b.dom() || a.cod() != b.cod()) continue;
    const bool eq = equals(a, b);
    positive += eq;
    CHECK(prove_equal(empty, a, b).proven() == eq);
  }
  CHECK(positive > 50);
}

TEST_CASE("proofs are symmetric and replay") {
  testing::Rng rng(13);
  const ProverLimits small{400, 4, 1};
  int proven = 0;
  for (int round = 0; round < 120; ++round) {
    const Diagram a = testing::random_diagram(rng, gst().sig, 4, 2);
    // Partner: a rewritten once at a random occurrence, or an unrelated diagram.
    Diagram b = testing::random_diagram(rng, gst().sig, 4, 2);
    const auto& rule = gst().rules[rng() % gst().rules.size()];
    const Direction dir = rng() % 2 ? Direction::forward : Direction::backward;
    if (auto occ = find_matches(rule, a, 2, dir); !occ.empty()) b = rewrite(rule, a, occ.front(), dir);
    if (a.dom() != b.dom() || a.cod() != b.cod()) continue;
    const ProofResult ab = prove_equal(gst(), a, b, small);
    const ProofResult ba = prove_equal(gst(), b, a, small);
    CHECK(ab.proven() == ba.proven());
    if (ab.proven()) {
      ++proven;
      check_proof(gst(), a, b, ab);
      check_proof(gst(), b, a, ba);
      CHECK(ab.trace.steps.size() == ba.trace.steps.size());
    }
  }
  CHECK(proven > 30);
}

TEST_CASE("parallel expansion matches the serial reference") {
  const Theory race = race_condition_theory();
  std::vector<Diagram> states;
  for (const auto& goal : race_condition_goals(race)) {
    states.push_back(goal.interleaving);
    states.push_back(goal.outcome);
  }
  testing::Rng rng(3);
  for (int i = 0; i < 24; ++i) states.push_back(testing::random_diagram(rng, race.sig, 6, 2));
  const auto serial = expand_serial(race, states, 8);
  for (int workers : {2, 4, 8}) {
    const auto parallel = expand_parallel(race, states, 8, workers);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      REQUIRE(parallel[i].size() == serial[i].size());
      for (std::size_t k = 0; k < serial[i].size(); ++k) {
        CHECK(parallel[i][k].rule == serial[i][k].rule);
        CHECK(parallel[i][k].direction == serial[i][k].direction);
        CHECK(parallel[i][k].occurrence == serial[i][k].occurrence);
        CHECK(parallel[i][k].key == serial[i][k].key);
      }
    }
  }
  for (const auto& goal : race_condition_goals(race)) {
    const ProofResult one = prove_equal(race, goal.interleaving, goal.outcome, {100000, 8, 1});
    const ProofResult four = prove_equal(race, goal.interleaving, goal.outcome, {100000, 8, 4});
    CHECK(one.trace == four.trace);
    CHECK(one.states_explored == four.states_explored);
  }
}

TEST_CASE("trace printing and JSON") {
  const Diagram ctx = gsd({}, {}, {{"get", 0}, {"copy", 0}, {"put", 0}, {"put", 0}});
  const Diagram out = gsd({}, {}, {{"get", 0}, {"copy", 0}, {"discard", 0}, {"put", 0}});
  const ProofResult r = prove_equal(gst(), ctx, out);
  REQUIRE(r.proven());
  CHECK(format_trace(r.trace) == "  1. put-put -> at slice 2, shift 0\n");
  CHECK(format_trace(ProofTrace{}) == "  (equal up to exchange; no rewrites)\n");
  const ProofTrace t{{{"put-put", Direction::backward, {{2, 1}, 3, 1}}}};
  CHECK(format_trace(t) == "  1. put-put <- at slice 3, shift 1, after exchanges [2 1]\n");
  const io::Json j = io::to_json(t);
  CHECK(j.dump() ==
        R"({"steps":[{"rule":"put-put","direction":"backward","prelude":[2,1],"window":3,"shift":1}]})");
  CHECK(io::trace_from_json(j) == t);
  CHECK(kind_of([] { io::trace_from_json(io::Json::parse(R"({"steps":[{"rule":"x"}]})")); }) == ErrorKind::Format);
}
