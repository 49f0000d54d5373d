#pragma once

#include <random>

#include "effdiag/diagram.hpp"

namespace effdiag::testing {

using Rng = std::mt19937_64;

// Up to `max_sorts` sorts; a mix of pure and effectful generators of arity
// 0..2 on each side, including scalars.
SigPtr random_signature(Rng& rng, std::size_t max_sorts = 3);

Interface random_word(Rng& rng, const EffectfulSignature& sig, std::size_t max_len);

// A random well-typed diagram: starts from a random domain and stacks slices
// that fit the current word. May stop early if nothing fits.
Diagram random_diagram(Rng& rng, const SigPtr& sig, std::size_t max_slices, std::size_t max_dom = 3);

// Applies up to `steps` random legal exchanges.
Diagram random_exchanges(Rng& rng, const Diagram& d, std::size_t steps);

// Every (generator, offset) that can be stacked on `word`.
std::vector<Slice> fitting_slices(const EffectfulSignature& sig, const Interface& word);

}  // namespace effdiag::testing
