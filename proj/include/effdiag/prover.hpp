#pragma once

#include <string>
#include <vector>

#include "effdiag/theory.hpp"

namespace effdiag {

struct ProofStep {
  std::string rule;
  Direction direction;
  Occurrence occurrence;

  friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

struct ProofTrace {
  std::vector<ProofStep> steps;

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

struct ProverLimits {
  std::size_t max_states = 100000;
  std::size_t max_prelude = 8;
  // 0 or 1: serial expansion. More: OpenMP threads for frontier expansion.
  int workers = 1;
};

struct ProofResult {
  enum class Status { proven, limit_exceeded, exhausted };

  Status status = Status::exhausted;
  ProofTrace trace;
  std::size_t states_explored = 0;

  bool proven() const { return status == Status::proven; }
};

std::string_view to_string(ProofResult::Status status);

// Bidirectional breadth-first search over diagrams modulo exchange. Rules are
// used in both directions. Throws SignatureMismatch or BoundaryMismatch.
ProofResult prove_equal(const Theory& theory, const Diagram& from, const Diagram& to,
                        const ProverLimits& limits = {});

// Applies every step in order. Throws StaleOccurrence.
Diagram replay(const Theory& theory, const Diagram& from, const ProofTrace& trace);

// One rewrite reachable from a state, as found by frontier expansion.
struct Successor {
  std::size_t rule;
  Direction direction;
  Occurrence occurrence;
  Diagram result;      // the rewritten diagram
  std::string key;     // slice_key of its normal form
  Diagram normalized;
};

// Successors of each state, in a fixed order: rule index, forward before
// backward, then occurrence order. The serial loop is the reference; the
// OpenMP version must agree with it exactly.
std::vector<std::vector<Successor>> expand_serial(const Theory& theory, const std::vector<Diagram>& states,
                                                  std::size_t max_prelude);
std::vector<std::vector<Successor>> expand_parallel(const Theory& theory, const std::vector<Diagram>& states,
                                                    std::size_t max_prelude, int workers);

std::string format_trace(const ProofTrace& trace);

}  // namespace effdiag
