#pragma once

#include "fredkin/paths.hpp"

#include <string>
#include <vector>

namespace fredkin {

/// One elementary Fredkin move: either the exchange of a peak with the
/// neighboring step inside a 3-step window, or the recoloring of a peak.
struct FredkinMove {
    enum class Type { ExchangeUp, ExchangeDown, Recolor };
    Type type;
    int position;        // window index (1-based) for exchanges, peak step index for recolors
    std::uint8_t color;  // new color for recolors, 0 otherwise
    PathWord result;
};

std::string describe(const FredkinMove& m);

/// All single Fredkin moves applicable to a colored Dyck word, one entry
/// per (window, pattern) or recoloring. Distinct moves may produce the
/// same neighbor; use fredkin_neighbor_set for the deduplicated view.
std::vector<FredkinMove> fredkin_moves(const PathWord& w, int s);

/// Deduplicated, canonically sorted neighbor words.
std::vector<PathWord> fredkin_neighbor_set(const PathWord& w, int s);

/// Exact one-step distribution of the peak-displacing chain from w:
/// cut position uniform over 1..2n-1, reinsertion uniform over the 2n-1
/// slots of the shortened word, color uniform over s. Positions holding
/// no peak idle. Probabilities sum to 1 with the idle mass folded into w.
std::vector<std::pair<PathWord, double>> peak_displace_targets(const PathWord& w, int s);

/// True when y is reachable from x by one peak-displacing step (x != y).
bool peak_displace_adjacent(const PathWord& x, const PathWord& y, int s);

/// Fredkin-move walk realizing one peak-displacing step: the cut peak is
/// walked stepwise to its reinsertion slot, then recolored if needed.
/// Returns the state sequence x = w_0, ..., w_k = y; consecutive entries
/// are Fredkin-adjacent and k <= 2n - 1. Throws std::invalid_argument
/// when x and y are not peak-displace adjacent.
std::vector<PathWord> canonical_path(const PathWord& x, const PathWord& y, int s);

} // namespace fredkin
