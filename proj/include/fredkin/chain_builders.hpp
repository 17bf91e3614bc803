#pragma once

#include "fredkin/chain.hpp"

namespace fredkin {

/// Builds the lattice-path chains as explicit ChainSpecs.
///
/// fredkin          colored Dyck states; one of the 2n-2 exchange windows
///                  (plus, for s >= 2, the 2n-1 recoloring positions) is
///                  drawn uniformly and its move applied with probability
///                  move_prob, recoloring targets uniform over the other
///                  s-1 colors.
/// peak_displacing  colored Dyck states; cut a uniform position, reinsert
///                  the peak at a uniform slot with a uniform color.
/// lattice          uncolored paths free to go negative; a uniform adjacent
///                  pair is flipped peak<->valley with probability move_prob.
/// positive_lattice same moves on Dyck states, idling on moves that would
///                  go negative.
///
/// Throws std::length_error when the state count exceeds `state_cap`.
ChainSpec build_chain(ChainKind kind, int n, int s, double move_prob = 0.5,
                      std::size_t state_cap = 500000);

} // namespace fredkin
