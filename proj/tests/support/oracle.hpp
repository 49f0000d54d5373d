#pragma once

#include <set>
#include <vector>

#include "effdiag/diagram.hpp"

namespace effdiag::testing {

using SliceSeq = std::vector<Slice>;

// Every slice sequence reachable from `d` by legal swaps of adjacent slices,
// found by plain breadth-first search. Written without the library's
// exchange code so the two can be checked against each other.
std::set<SliceSeq> exchange_class(const Diagram& d);

// Least element of the class under left-to-right (offset, id) comparison.
SliceSeq least_in_class(const Diagram& d);

// Shortest exchange distance between two sequences of the same class, or -1.
int exchange_distance(const Diagram& from, const SliceSeq& to);

// Every sequence one axiom step away from runtime diagram `rd`: a swap of
// adjacent slices, removing or inserting an inverse braid pair, or sliding a
// pure base generator across the runtime wire (both directions). Without
// `base_swaps`, swaps of two slices that are not braids are left out.
std::vector<SliceSeq> runtime_neighbours(const Diagram& rd, bool base_swaps = true);

}  // namespace effdiag::testing
