#include "fredkin/comparison.hpp"

#include "fredkin/moves.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>

namespace fredkin {

PathGenerator bfs_paths(const ChainSpec& chain) {
    // Predecessor trees from every source, built lazily and shared.
    auto trees = std::make_shared<std::map<std::size_t, std::vector<std::int64_t>>>();
    auto chain_ptr = std::make_shared<ChainSpec>(chain);

    return [trees, chain_ptr](std::size_t from, std::size_t to) {
        const ChainSpec& c = *chain_ptr;
        auto it = trees->find(from);
        if (it == trees->end()) {
            std::vector<std::int64_t> parent(c.num_states(), -1);
            parent[from] = std::int64_t(from);
            std::queue<std::size_t> frontier;
            frontier.push(from);
            while (!frontier.empty()) {
                const std::size_t v = frontier.front();
                frontier.pop();
                // neighbor order is the CSR column order: deterministic
                for (std::size_t p = c.row_ptr[v]; p < c.row_ptr[v + 1]; ++p) {
                    const std::size_t u = c.col[p];
                    if (u == v || c.val[p] <= 0.0 || parent[u] >= 0) continue;
                    parent[u] = std::int64_t(v);
                    frontier.push(u);
                }
            }
            it = trees->emplace(from, std::move(parent)).first;
        }
        const auto& parent = it->second;
        if (parent[to] < 0)
            throw std::runtime_error("bfs_paths: no route between states " +
                                     std::to_string(from) + " and " + std::to_string(to));
        std::vector<std::size_t> route{to};
        std::size_t v = to;
        while (v != from) {
            v = std::size_t(parent[v]);
            route.push_back(v);
        }
        std::reverse(route.begin(), route.end());
        return route;
    };
}

PathGenerator walk_the_peak_paths(const ChainSpec& dyck_chain) {
    auto chain_ptr = std::make_shared<ChainSpec>(dyck_chain);
    auto index = std::make_shared<std::map<std::string, std::size_t>>();
    for (std::size_t i = 0; i < chain_ptr->num_states(); ++i)
        (*index)[chain_ptr->labels[i]] = i;

    return [chain_ptr, index](std::size_t from, std::size_t to) {
        if (from == to) return std::vector<std::size_t>{from};
        const auto words =
            canonical_path(chain_ptr->states[from], chain_ptr->states[to], chain_ptr->s);
        std::vector<std::size_t> route;
        route.reserve(words.size());
        for (const PathWord& w : words) route.push_back(index->at(to_string(w)));
        return route;
    };
}

ComparisonResult comparison_constant(const ChainSpec& target, const ChainSpec& reference,
                                     const PathGenerator& paths) {
    if (target.labels != reference.labels)
        throw std::invalid_argument("comparison_constant: state spaces differ");
    const std::size_t n = target.num_states();

    // directed-edge loads: sum over reference edges routed through (z,w)
    std::map<std::pair<std::size_t, std::size_t>, double> load;
    std::map<std::pair<std::size_t, std::size_t>, double> load_approx;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> path_count;

    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t p = reference.row_ptr[x]; p < reference.row_ptr[x + 1]; ++p) {
            const std::size_t y = reference.col[p];
            if (y == x || reference.val[p] <= 0.0) continue;
            const std::vector<std::size_t> route = paths(x, y);
            if (route.front() != x || route.back() != y)
                throw std::runtime_error("comparison_constant: route endpoints mismatch");
            const double k = double(route.size() - 1);
            const double w_exact = k * reference.pi[x] * reference.val[p];
            const double w_approx =
                k * reference.pi[x] /
                (double(reference.s) * double(2 * reference.n) * double(2 * reference.n));
            for (std::size_t e = 0; e + 1 < route.size(); ++e) {
                const auto edge = std::make_pair(route[e], route[e + 1]);
                if (target.prob(edge.first, edge.second) <= 0.0)
                    throw std::runtime_error(
                        "comparison_constant: route uses a non-edge of the target chain");
                load[edge] += w_exact;
                load_approx[edge] += w_approx;
                ++path_count[edge];
            }
        }
    }

    ComparisonResult res;
    for (const auto& [edge, l] : load) {
        const double denom = target.pi[edge.first] * target.prob(edge.first, edge.second);
        const double a = l / denom;
        if (a > res.A) {
            res.A = a;
            res.argmax_from = edge.first;
            res.argmax_to = edge.second;
            res.argmax_load = l;
        }
        res.A_approx = std::max(res.A_approx, load_approx[edge] / denom);
    }
    for (const auto& [edge, count] : path_count)
        res.max_edge_path_count = std::max(res.max_edge_path_count, count);
    return res;
}

CongestionResult congestion_rho(const ChainSpec& chain, const PathGenerator& paths) {
    const std::size_t n = chain.num_states();
    if (n < 2)
        throw std::invalid_argument("congestion_rho: need at least two states");

    std::map<std::pair<std::size_t, std::size_t>, double> load; // undirected, key minmax
    CongestionResult res;

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const std::vector<std::size_t> route = paths(a, b);
            res.max_len = std::max(res.max_len, route.size() - 1);
            const double w = chain.pi[a] * chain.pi[b];
            for (std::size_t e = 0; e + 1 < route.size(); ++e) {
                auto edge = std::minmax(route[e], route[e + 1]);
                load[{edge.first, edge.second}] += w;
            }
        }
    }

    for (const auto& [edge, l] : load) {
        const double q = chain.pi[edge.first] * chain.prob(edge.first, edge.second);
        if (q <= 0.0)
            throw std::runtime_error("congestion_rho: route uses a non-edge");
        res.rho = std::max(res.rho, l / q);
    }
    res.gap_lower_bound = 1.0 / (res.rho * double(res.max_len));
    return res;
}

} // namespace fredkin
