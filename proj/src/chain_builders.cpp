#include "fredkin/chain_builders.hpp"

#include "fredkin/bigint.hpp"
#include "fredkin/enumerate.hpp"
#include "fredkin/moves.hpp"

#include <map>
#include <stdexcept>

namespace fredkin {

namespace {

void check_cap(const BigInt& count, std::size_t cap) {
    if (count > BigInt(cap))
        throw std::length_error("build_chain: state count " + count.str() + " exceeds cap " +
                                std::to_string(cap));
}

std::map<std::string, std::uint32_t> index_of(const std::vector<PathWord>& states) {
    std::map<std::string, std::uint32_t> idx;
    for (std::size_t i = 0; i < states.size(); ++i) idx[to_string(states[i])] = std::uint32_t(i);
    return idx;
}

ChainSpec finish(ChainKind kind, int n, int s, std::vector<PathWord> states,
                 const std::vector<std::map<std::uint32_t, double>>& rows) {
    std::vector<std::string> labels;
    labels.reserve(states.size());
    for (const PathWord& w : states) labels.push_back(to_string(w));
    std::vector<double> pi(states.size(), 1.0 / double(states.size()));
    ChainSpec c = ChainSpec::from_rows(kind, n, s, std::move(labels), rows, std::move(pi));
    c.states = std::move(states);
    return c;
}

ChainSpec build_fredkin_chain(int n, int s, double move_prob, std::size_t cap) {
    BigInt count = catalan(n);
    for (int i = 0; i < n; ++i) count *= s;
    check_cap(count, cap);

    auto states = enumerate_paths(2 * n, s, PathKind::Dyck, 2 * n);
    auto idx = index_of(states);

    const int exchange_slots = std::max(0, 2 * n - 2);
    const int recolor_slots = s >= 2 ? 2 * n - 1 : 0;
    const int menu = exchange_slots + recolor_slots;

    std::vector<std::map<std::uint32_t, double>> rows(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        double away = 0;
        if (menu > 0) {
            for (const FredkinMove& m : fredkin_moves(states[i], s)) {
                const double p = m.type == FredkinMove::Type::Recolor
                                     ? move_prob / (double(menu) * (s - 1))
                                     : move_prob / double(menu);
                rows[i][idx.at(to_string(m.result))] += p;
                away += p;
            }
        }
        rows[i][std::uint32_t(i)] += 1.0 - away;
    }
    return finish(ChainKind::Fredkin, n, s, std::move(states), rows);
}

ChainSpec build_peak_displacing_chain(int n, int s, std::size_t cap) {
    BigInt count = catalan(n);
    for (int i = 0; i < n; ++i) count *= s;
    check_cap(count, cap);

    auto states = enumerate_paths(2 * n, s, PathKind::Dyck, 2 * n);
    auto idx = index_of(states);
    std::vector<std::map<std::uint32_t, double>> rows(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        for (const auto& [w, p] : peak_displace_targets(states[i], s))
            rows[i][idx.at(to_string(w))] += p;
    return finish(ChainKind::PeakDisplacing, n, s, std::move(states), rows);
}

// peak<->valley flips of adjacent step pairs; `positive` restricts the
// state space to Dyck paths and idles on moves that would go negative
ChainSpec build_flip_chain(int n, bool positive, double move_prob, std::size_t cap) {
    check_cap(positive ? catalan(n) : binomial(2 * n, n), cap);

    auto states = enumerate_paths(2 * n, 1, positive ? PathKind::Dyck : PathKind::Lattice, 2 * n);
    auto idx = index_of(states);
    const int pairs = 2 * n - 1;

    std::vector<std::map<std::uint32_t, double>> rows(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        double away = 0;
        for (int p = 0; p + 1 < 2 * n; ++p) {
            const Step a = states[i].steps[p];
            const Step b = states[i].steps[p + 1];
            const bool peak = a.dir == StepDir::Up && b.dir == StepDir::Down;
            const bool valley = a.dir == StepDir::Down && b.dir == StepDir::Up;
            if (!peak && !valley) continue;
            PathWord flipped = states[i];
            std::swap(flipped.steps[p], flipped.steps[p + 1]);
            if (positive && !is_valid(flipped)) continue; // would cross the axis: sit idle
            const double pr = move_prob / double(pairs);
            rows[i][idx.at(to_string(flipped))] += pr;
            away += pr;
        }
        rows[i][std::uint32_t(i)] += 1.0 - away;
    }
    return finish(positive ? ChainKind::PositiveLattice : ChainKind::Lattice, n, 1,
                  std::move(states), rows);
}

} // namespace

ChainSpec build_chain(ChainKind kind, int n, int s, double move_prob, std::size_t state_cap) {
    if (n < 1) throw std::invalid_argument("build_chain: need n >= 1");
    if (s < 1) throw std::invalid_argument("build_chain: need s >= 1");
    if (move_prob <= 0.0 || move_prob > 1.0)
        throw std::invalid_argument("build_chain: move_prob must be in (0, 1]");
    switch (kind) {
        case ChainKind::Fredkin: return build_fredkin_chain(n, s, move_prob, state_cap);
        case ChainKind::PeakDisplacing: return build_peak_displacing_chain(n, s, state_cap);
        case ChainKind::Lattice: return build_flip_chain(n, false, move_prob, state_cap);
        case ChainKind::PositiveLattice: return build_flip_chain(n, true, move_prob, state_cap);
        case ChainKind::HamiltonianMapped:
        case ChainKind::HoppingWalk:
            throw std::invalid_argument(
                "build_chain: mapped chains are built from their source models");
    }
    throw std::invalid_argument("build_chain: unknown kind");
}

} // namespace fredkin
