#pragma once

#include "wpress/measures.hpp"
#include "wpress/symbolic.hpp"

namespace wpress::fixtures {

// Full shift on {a,b,c,d} factoring onto the full shift on {0,1} by
// a,b -> 0 and c,d -> 1, weights (1, 1/2).
ChainSystem fs42();

// Golden-mean shift (no "11") onto the full shift on {0,1} by the identity
// symbol map, weights (1, 1).
ChainSystem gm_chain();

// Single-level golden-mean shift, weight (1).
ChainSystem gm1();

// Single-level full shift on {0,1}, weight (1).
ChainSystem fs2();

// Three-symbol shift (no "11") collapsing 1,2 onto one symbol; the
// pushforward of a generic Markov measure is genuinely hidden.
ChainSystem hidden3();

// Chain of full shifts 4 -> 2 -> 1, weights (1, 1/2, 1/4).
ChainSystem fs421();

Potential f_zero();
// (log 2) * indicator of x_0 = a, on the fs42 first level.
Potential f1();
// Range-2 potential on the golden-mean shift: 1 on "01", 0 elsewhere.
Potential g01();

MarkovMeasure bernoulli_half(const ChainSystem& fs42_system);  // (1/2,1/4,1/8,1/8)
MarkovMeasure uniform4(const ChainSystem& fs42_system);
MarkovMeasure gm_markov(const ChainSystem& gm_system);  // [[1/2,1/2],[1,0]]
MarkovMeasure hidden3_markov(const ChainSystem& hidden3_system);

// Seeded random Markov measure supported on all allowed transitions.
MarkovMeasure random_markov(const Subshift& shift, std::uint64_t seed);

}  // namespace wpress::fixtures
