#include "effdiag/prover.hpp"

#include <exception>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "effdiag/error.hpp"
#include "matching.hpp"

namespace effdiag {

std::string_view to_string(ProofResult::Status status) {
  switch (status) {
    case ProofResult::Status::proven: return "proven";
    case ProofResult::Status::limit_exceeded: return "limit-exceeded";
    case ProofResult::Status::exhausted: return "exhausted";
  }
  return "unknown";
}

namespace {

std::vector<Successor> successors(const Theory& theory, const Diagram& state, std::size_t max_prelude) {
  std::vector<Successor> out;
  std::unordered_set<std::string> seen;
  const auto arrs = detail::arrangements(state, max_prelude);
  for (std::size_t r = 0; r < theory.rules.size(); ++r) {
    const RewriteRule& rule = theory.rules[r];
    for (Direction dir : {Direction::forward, Direction::backward}) {
      const Diagram& pattern = dir == Direction::forward ? rule.lhs : rule.rhs;
      for (auto& occ : detail::match_in(state, arrs, pattern)) {
        Diagram result = rewrite(rule, state, occ, dir);
        Diagram nf = normal_form(result);
        std::string key = slice_key(nf);
        if (!seen.insert(std::to_string(r * 2 + (dir == Direction::backward)) + "|" + key).second) continue;
        out.push_back({r, dir, std::move(occ), std::move(result), std::move(key), std::move(nf)});
      }
    }
  }
  return out;
}

// Appends exchange moves, dropping a move that undoes the previous one.
void append_moves(std::vector<std::size_t>& moves, const std::vector<std::size_t>& more) {
  for (std::size_t m : more) {
    if (!moves.empty() && moves.back() == m) moves.pop_back();
    else moves.push_back(m);
  }
}

struct Node {
  Diagram state;  // normal form
  std::size_t parent;
  std::size_t depth;
  // Edge from parent: rule applied to the parent's state.
  std::size_t rule = 0;
  Direction direction = Direction::forward;
  Occurrence occurrence;
  std::optional<Diagram> result;
};

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

struct Side {
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::size_t> frontier;
};

struct Meeting {
  int side;                 // side whose level produced the meeting
  std::size_t parent;       // node on that side
  std::size_t succ_index;   // successor of parent
  std::size_t other;        // node on the other side with the same key
  std::size_t total;
  std::size_t frontier_slot = 0;
};

// Edges from the root of `side` down to `node`, root first.
std::vector<std::size_t> chain(const Side& side, std::size_t node) {
  std::vector<std::size_t> out;
  for (std::size_t n = node; side.nodes[n].parent != kRoot; n = side.nodes[n].parent) out.push_back(n);
  return {out.rbegin(), out.rend()};
}

}  // namespace

std::vector<std::vector<Successor>> expand_serial(const Theory& theory, const std::vector<Diagram>& states,
                                                  std::size_t max_prelude) {
  std::vector<std::vector<Successor>> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = successors(theory, states[i], max_prelude);
  return out;
}

std::vector<std::vector<Successor>> expand_parallel(const Theory& theory, const std::vector<Diagram>& states,
                                                    std::size_t max_prelude, int workers) {
  std::vector<std::vector<Successor>> out(states.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = successors(theory, states[static_cast<std::size_t>(i)], max_prelude);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

ProofResult prove_equal(const Theory& theory, const Diagram& from, const Diagram& to, const ProverLimits& limits) {
  if (!same_signature(from, to) || !(*from.sig() == *theory.sig))
    throw Error(ErrorKind::SignatureMismatch, "goal diagrams must be over the theory's signature");
  if (from.dom() != to.dom() || from.cod() != to.cod())
    throw Error(ErrorKind::BoundaryMismatch, to_string(from.dom()) + "->" + to_string(from.cod()) + " vs " +
                                                 to_string(to.dom()) + "->" + to_string(to.cod()));

  ProofResult result;
  Side sides[2];
  for (int s = 0; s < 2; ++s) {
    Diagram nf = normal_form(s == 0 ? from : to);
    sides[s].index.emplace(slice_key(nf), 0);
    sides[s].nodes.push_back({std::move(nf), kRoot, 0, 0, Direction::forward, {}, std::nullopt});
    sides[s].frontier.push_back(0);
  }

  std::optional<Meeting> meeting;
  if (sides[1].index.count(slice_key(sides[0].nodes[0].state)))
    meeting = Meeting{0, 0, 0, 0, 0};

  while (!meeting) {
    const std::size_t explored = sides[0].nodes.size() + sides[1].nodes.size();
    result.states_explored = explored;
    if (sides[0].frontier.empty() || sides[1].frontier.empty()) {
      result.status = ProofResult::Status::exhausted;
      return result;
    }
    if (explored >= limits.max_states) {
      result.status = ProofResult::Status::limit_exceeded;
      return result;
    }

    const int s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    Side& own = sides[s];
    const Side& other = sides[1 - s];

    std::vector<Diagram> states;
    states.reserve(own.frontier.size());
    for (std::size_t n : own.frontier) states.push_back(own.nodes[n].state);
    auto expanded = limits.workers > 1 ? expand_parallel(theory, states, limits.max_prelude, limits.workers)
                                       : expand_serial(theory, states, limits.max_prelude);

    // Shortest meeting anywhere in this level; first found wins ties.
    for (std::size_t f = 0; f < own.frontier.size(); ++f) {
      const std::size_t parent = own.frontier[f];
      for (std::size_t k = 0; k < expanded[f].size(); ++k) {
        auto hit = other.index.find(expanded[f][k].key);
        if (hit == other.index.end()) continue;
        const std::size_t total = own.nodes[parent].depth + 1 + other.nodes[hit->second].depth;
        if (!meeting || total < meeting->total) meeting = Meeting{s, parent, k, hit->second, total, f};
      }
    }
    if (meeting) {
      const Successor& m = expanded[meeting->frontier_slot][meeting->succ_index];
      own.nodes.push_back({m.normalized, meeting->parent, own.nodes[meeting->parent].depth + 1, m.rule, m.direction,
                           m.occurrence, m.result});
      meeting->parent = own.nodes.size() - 1;
      break;
    }

    std::vector<std::size_t> next;
    for (std::size_t f = 0; f < own.frontier.size(); ++f) {
      const std::size_t parent = own.frontier[f];
      for (auto& succ : expanded[f]) {
        if (own.index.count(succ.key)) continue;
        if (sides[0].nodes.size() + sides[1].nodes.size() >= limits.max_states) break;
        own.index.emplace(succ.key, own.nodes.size());
        next.push_back(own.nodes.size());
        own.nodes.push_back({std::move(succ.normalized), parent, own.nodes[parent].depth + 1, succ.rule,
                             succ.direction, std::move(succ.occurrence), std::move(succ.result)});
      }
    }
    own.frontier = std::move(next);
  }

  // Both ends now hold the same normal form.
  const std::size_t end0 = meeting->side == 0 ? meeting->parent : meeting->other;
  const std::size_t end1 = meeting->side == 0 ? meeting->other : meeting->parent;

  Diagram cur = from;
  auto step_to = [&](std::vector<std::size_t> prelude, const Node& node, Direction dir, std::size_t window) {
    const RewriteRule& rule = theory.rules[node.rule];
    ProofStep step{rule.name, dir, {std::move(prelude), window, node.occurrence.shift}};
    cur = rewrite(rule, cur, step.occurrence, dir);
    result.trace.steps.push_back(std::move(step));
  };

  for (std::size_t n : chain(sides[0], end0)) {
    const Node& node = sides[0].nodes[n];
    std::vector<std::size_t> prelude;
    append_moves(prelude, normal_form_with_witness(cur).witness);
    append_moves(prelude, node.occurrence.prelude);
    step_to(std::move(prelude), node, node.direction, node.occurrence.window);
  }
  auto back = chain(sides[1], end1);
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    const Node& node = sides[1].nodes[*it];
    // Undo the edge: reach the exact arrangement the rule produced, then apply
    // the rule the other way round at the same window.
    std::vector<std::size_t> prelude;
    append_moves(prelude, normal_form_with_witness(cur).witness);
    auto there = normal_form_with_witness(*node.result).witness;
    append_moves(prelude, std::vector<std::size_t>(there.rbegin(), there.rend()));
    step_to(std::move(prelude), node, flip(node.direction), node.occurrence.window);
  }

  result.status = ProofResult::Status::proven;
  result.states_explored = sides[0].nodes.size() + sides[1].nodes.size();
  return result;
}

Diagram replay(const Theory& theory, const Diagram& from, const ProofTrace& trace) {
  Diagram cur = from;
  for (const auto& step : trace.steps) {
    const RewriteRule* rule = theory.find(step.rule);
    if (!rule) throw Error(ErrorKind::StaleOccurrence, "unknown rule '" + step.rule + "'");
    cur = rewrite(*rule, cur, step.occurrence, step.direction);
  }
  return cur;
}

std::string format_trace(const ProofTrace& trace) {
  std::ostringstream out;
  if (trace.steps.empty()) out << "  (equal up to exchange; no rewrites)\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    out << "  " << (i + 1) << ". " << s.rule << (s.direction == Direction::forward ? " ->" : " <-") << " at slice "
        << s.occurrence.window << ", shift " << s.occurrence.shift;
    if (!s.occurrence.prelude.empty()) {
      out << ", after exchanges [";
      for (std::size_t k = 0; k < s.occurrence.prelude.size(); ++k) out << (k ? " " : "") << s.occurrence.prelude[k];
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace effdiag
