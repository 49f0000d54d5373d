#pragma once

#include <string>
#include <vector>

#include "effdiag/diagram.hpp"

namespace effdiag {

// An unoriented equation between two diagrams with the same boundary.
struct RewriteRule {
  std::string name;
  Diagram lhs;
  Diagram rhs;

  // Throws SignatureMismatch or BoundaryMismatch.
  RewriteRule(std::string name, Diagram lhs, Diagram rhs);
};

struct Theory {
  SigPtr sig;
  std::vector<RewriteRule> rules;

  const RewriteRule* find(std::string_view name) const;
};

enum class Direction { forward, backward };

std::string_view to_string(Direction dir);
Direction flip(Direction dir);

// Where a rule side sits in a diagram: after the exchange prelude, slices
// [window, window + |side|) equal the side's slices shifted right by `shift`.
struct Occurrence {
  std::vector<std::size_t> prelude;
  std::size_t window = 0;
  std::size_t shift = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Occurrences of the side selected by `dir` (lhs for forward), found in
// arrangements reachable with at most `budget` exchanges. Ordered by prelude
// length, then window start, then shift. Occurrences whose rewrites agree up
// to exchange are reported once.
std::vector<Occurrence> find_matches(const RewriteRule& rule, const Diagram& d, std::size_t budget,
                                     Direction dir = Direction::forward);

// Replaces the matched side by the other one. Throws StaleOccurrence.
Diagram rewrite(const RewriteRule& rule, const Diagram& d, const Occurrence& occ, Direction dir);

// Sort X; pure copy/discard with coassociativity and both counit laws; effectful
// get/put with get-get, get-discard, put-put, get-put and put-get.
Theory global_state_theory();

// Global state plus two pure processes f, g : X -> X that can be discarded.
Theory race_condition_theory();

struct RaceGoal {
  std::string name;         // which outcome survives
  Diagram interleaving;     // the two processes mixed through shared state
  Diagram outcome;
};

// The four race outcomes: f only, g only, f then g, g then f.
std::vector<RaceGoal> race_condition_goals(const Theory& race);

}  // namespace effdiag
