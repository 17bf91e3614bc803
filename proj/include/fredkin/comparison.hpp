#pragma once

#include "fredkin/chain.hpp"

#include <functional>

namespace fredkin {

/// Generator of state-space routes: paths(x, y) returns the state index
/// sequence x = i_0, ..., i_k = y. Used both for chain-comparison loads
/// (routes realizing reference edges through target edges) and for
/// congestion (routes between all state pairs).
using PathGenerator =
    std::function<std::vector<std::size_t>(std::size_t from, std::size_t to)>;

/// Deterministic BFS shortest paths on the chain's positive-probability
/// edges (lowest-index tie-break). Throws on disconnected pairs.
PathGenerator bfs_paths(const ChainSpec& chain);

/// Routes realizing peak-displacement edges by walking the cut peak one
/// exchange at a time (plus a final recoloring), expressed as indices into
/// a Dyck-state chain. from == to yields the single-state route.
PathGenerator walk_the_peak_paths(const ChainSpec& dyck_chain);

struct ComparisonResult {
    double A = 0;                    // comparison constant
    std::size_t argmax_from = 0, argmax_to = 0;
    double argmax_load = 0;          // the winning edge's summed load
    double A_approx = 0;             // same max with P~(x,y) replaced by 1/(s(2n)^2)
    std::size_t max_edge_path_count = 0; // routes through the busiest edge
};

/// Comparison constant between two reversible chains on the same state
/// space: max over directed target edges (z,w) of
///   [ sum_{paths through (z,w)} |gamma| pi~(x) P~(x,y) ] / (pi(z) P(z,w)).
/// `paths` must route every directed reference edge through target edges;
/// a route using a zero-probability target edge throws.
ComparisonResult comparison_constant(const ChainSpec& target, const ChainSpec& reference,
                                     const PathGenerator& paths);

struct CongestionResult {
    double rho = 0;      // max edge load
    std::size_t max_len = 0;
    double gap_lower_bound = 0; // 1 / (rho * max_len)
};

/// Canonical-path congestion on a single chain, over routes between all
/// ordered state pairs; loads accumulate on undirected edges. Throws on
/// chains with fewer than two states and on disconnected pairs.
CongestionResult congestion_rho(const ChainSpec& chain, const PathGenerator& paths);

} // namespace fredkin
