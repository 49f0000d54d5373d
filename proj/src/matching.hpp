#pragma once

// Shared by the theory and prover modules.

#include <cstdint>
#include <vector>

#include "effdiag/diagram.hpp"
#include "effdiag/theory.hpp"

namespace effdiag::detail {

struct Arrangement {
  std::vector<Slice> slices;
  std::vector<std::uint32_t> origin;  // index of each slice in the source diagram
  std::vector<std::size_t> prelude;
  std::vector<Interface> levels;
};

// Breadth-first over exchange moves, at most `budget` deep. The source
// arrangement comes first; visiting order is deterministic.
std::vector<Arrangement> arrangements(const Diagram& d, std::size_t budget);

// Appends occurrences of `pattern` found in the arrangements of `d`, then
// sorts the whole list by (prelude length, window, shift).
std::vector<Occurrence> match_in(const Diagram& d, const std::vector<Arrangement>& arrs, const Diagram& pattern);

}  // namespace effdiag::detail
