#pragma once

#include <string>

namespace effdiag::testing {

std::size_t count_occurrences(const std::string& text, const std::string& what);

// True when the svg has exactly one runtime path, stroked in `color`, and it
// passes through the centre of every effectful box from top to bottom.
bool runtime_path_threads_effects(const std::string& svg, const std::string& color);

}  // namespace effdiag::testing
