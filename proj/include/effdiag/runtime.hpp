#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "effdiag/diagram.hpp"

namespace effdiag {

inline constexpr std::string_view kLiftPrefix = "run:";
inline constexpr std::string_view kBraidOverPrefix = "sigma+:";   // [R,A] -> [A,R]
inline constexpr std::string_view kBraidUnderPrefix = "sigma-:";  // [A,R] -> [R,A]

// The monoidal signature Run(V,G): the base sorts plus the runtime sort R, the
// base pure generators unchanged, one lifted copy of each effectful generator
// threading R on its left, and a pair of braids per base sort. Every generator
// of the runtime signature is pure, so its diagrams obey full interchange.
class RuntimeSignature {
 public:
  enum class Kind { base_pure, lifted, braid_over, braid_under };

  struct Info {
    Kind kind;
    GenId base_id;  // lifted: the effectful generator; base_pure: itself
    SortId sort;    // braids: the crossed sort
  };

  const SigPtr& base() const { return base_; }
  const SigPtr& run() const { return run_; }

  // nullptr for ids that are not in the runtime signature.
  const Info* classify(std::string_view id) const;

  static std::string lifted_name(std::string_view gen);
  static std::string braid_over_name(std::string_view sort);
  static std::string braid_under_name(std::string_view sort);

 private:
  friend RuntimeSignature runtime_signature(const SigPtr& base);

  SigPtr base_;
  SigPtr run_;
  std::unordered_map<std::string, Info> info_;
};

// Throws ReservedSortClash when the base declares R or a generator id that
// collides with a derived name.
RuntimeSignature runtime_signature(const SigPtr& base);

// Inverse of runtime_signature on its image: strips R, braids and lifted
// generators. Throws MalformedRuntimeDiagram if `run` is not such an image.
RuntimeSignature recover_runtime_signature(const SigPtr& run);

bool is_runtime_signature(const EffectfulSignature& sig);

// Threads R through every effectful slice, routing it with braids from the
// leftmost position to the slice and back.
Diagram encode(const RuntimeSignature& rs, const Diagram& d);

// Follows the R wire level by level. Throws MalformedRuntimeDiagram.
Diagram decode(const RuntimeSignature& rs, const Diagram& rd);

Diagram braid_canonical(const RuntimeSignature& rs, const Diagram& rd);

bool equals_runtime(const RuntimeSignature& rs, const Diagram& a, const Diagram& b);

// One rewrite of a runtime diagram by an axiom of Run(V,G).
struct BraidStep {
  enum class Rule {
    exchange,          // interchange of slices index, index+1
    cancel_pair,       // drop an inverse braid pair at index, index+1
    insert_pair,       // insert `inserted` (an inverse braid pair) at index
    naturality,        // braids over dom(v) then v  ==>  v then braids over cod(v)
    naturality_inverse
  };
  Rule rule;
  std::size_t index = 0;
  // naturality: number of braids in the window before v (lhs side).
  std::size_t width = 0;
  std::vector<Slice> inserted;

  friend bool operator==(const BraidStep&, const BraidStep&) = default;
};

struct BraidCanonical {
  Diagram diagram;
  std::vector<BraidStep> witness;
};

// Same result as braid_canonical, plus the rewrite sequence reaching it.
BraidCanonical braid_canonical_with_witness(const RuntimeSignature& rs, const Diagram& rd);

// Replays steps, checking each is a legal axiom instance. Throws IllTyped.
Diagram apply_braid_steps(const RuntimeSignature& rs, const Diagram& rd, const std::vector<BraidStep>& steps);
Diagram apply_braid_step(const RuntimeSignature& rs, const Diagram& rd, const BraidStep& step);

}  // namespace effdiag
