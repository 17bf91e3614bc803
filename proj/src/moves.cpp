#include "fredkin/moves.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace fredkin {

namespace {

bool is_up(const Step& s) { return s.dir == StepDir::Up; }
bool is_down(const Step& s) { return s.dir == StepDir::Down; }

// Window exchange on steps (j, j+1, j+2), 0-based j. Returns false when the
// window holds none of the patterns uud, udu, udd, dud.
bool exchange_at_window(const PathWord& w, std::size_t j, PathWord& out, bool& is_up_type) {
    const Step a = w.steps[j], b = w.steps[j + 1], c = w.steps[j + 2];
    out = w;
    if (is_up(a) && is_up(b) && is_down(c)) {        // uud -> udu
        out.steps[j] = b; out.steps[j + 1] = c; out.steps[j + 2] = a;
        is_up_type = true;
        return true;
    }
    if (is_up(a) && is_down(b) && is_up(c)) {        // udu -> uud
        out.steps[j] = c; out.steps[j + 1] = a; out.steps[j + 2] = b;
        is_up_type = true;
        return true;
    }
    if (is_up(a) && is_down(b) && is_down(c)) {      // udd -> dud
        out.steps[j] = c; out.steps[j + 1] = a; out.steps[j + 2] = b;
        is_up_type = false;
        return true;
    }
    if (is_down(a) && is_up(b) && is_down(c)) {      // dud -> udd
        out.steps[j] = b; out.steps[j + 1] = c; out.steps[j + 2] = a;
        is_up_type = false;
        return true;
    }
    return false;
}

} // namespace

std::string describe(const FredkinMove& m) {
    switch (m.type) {
        case FredkinMove::Type::ExchangeUp:
            return "exchange-u@" + std::to_string(m.position);
        case FredkinMove::Type::ExchangeDown:
            return "exchange-d@" + std::to_string(m.position);
        case FredkinMove::Type::Recolor:
            return "recolor@" + std::to_string(m.position) + "->" + std::to_string(int(m.color));
    }
    return "?";
}

std::vector<FredkinMove> fredkin_moves(const PathWord& w, int s) {
    std::vector<FredkinMove> out;
    const std::size_t L = w.steps.size();
    for (std::size_t j = 0; j + 2 < L; ++j) {
        PathWord moved;
        bool up_type = false;
        if (exchange_at_window(w, j, moved, up_type)) {
            assert(is_valid(moved));
            out.push_back({up_type ? FredkinMove::Type::ExchangeUp : FredkinMove::Type::ExchangeDown,
                           static_cast<int>(j) + 1, 0, std::move(moved)});
        }
    }
    if (s >= 2) {
        for (int p : peaks(w)) {
            const std::uint8_t k = w.steps[p - 1].color;
            for (int c = 1; c <= s; ++c) {
                if (c == int(k)) continue;
                PathWord moved = w;
                moved.steps[p - 1].color = std::uint8_t(c);
                moved.steps[p].color = std::uint8_t(c);
                out.push_back({FredkinMove::Type::Recolor, p, std::uint8_t(c), std::move(moved)});
            }
        }
    }
    return out;
}

std::vector<PathWord> fredkin_neighbor_set(const PathWord& w, int s) {
    std::vector<PathWord> out;
    for (FredkinMove& m : fredkin_moves(w, s)) out.push_back(std::move(m.result));
    std::sort(out.begin(), out.end(), word_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<PathWord, double>> peak_displace_targets(const PathWord& w, int s) {
    const int L = static_cast<int>(w.steps.size());
    if (L < 2) return {{w, 1.0}};
    const int positions = L - 1;     // cut positions 1..2n-1
    const int slots = L - 1;         // insertion slots 0..2n-2
    std::map<std::string, std::pair<PathWord, double>> dist;
    auto add = [&dist](const PathWord& word, double p) {
        auto [it, inserted] = dist.try_emplace(to_string(word), word, 0.0);
        it->second.second += p;
        (void)inserted;
    };

    const double per_position = 1.0 / positions;
    for (int p = 1; p <= positions; ++p) {
        if (!(is_up(w.steps[p - 1]) && is_down(w.steps[p]))) {
            add(w, per_position); // no peak here: idle
            continue;
        }
        PathWord reduced = w;
        reduced.steps.erase(reduced.steps.begin() + (p - 1), reduced.steps.begin() + (p + 1));
        const double per_choice = per_position / (slots * s);
        for (int q = 0; q < slots; ++q) {
            for (int c = 1; c <= s; ++c) {
                PathWord cand = reduced;
                cand.steps.insert(cand.steps.begin() + q, {up(std::uint8_t(c)), down(std::uint8_t(c))});
                assert(is_valid(cand));
                add(cand, per_choice);
            }
        }
    }

    std::vector<std::pair<PathWord, double>> out;
    out.reserve(dist.size());
    for (auto& [key, entry] : dist) out.push_back(std::move(entry));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return word_less(a.first, b.first); });
    return out;
}

namespace {

struct DisplaceChoice {
    int walk_len = 0;
    int p = 0, q = 0, c = 0;
    bool found = false;
};

// Deterministic minimal (cut, slot, color) producing y from x.
DisplaceChoice find_displacement(const PathWord& x, const PathWord& y, int s) {
    DisplaceChoice best;
    const int L = static_cast<int>(x.steps.size());
    for (int p = 1; p <= L - 1; ++p) {
        if (!(is_up(x.steps[p - 1]) && is_down(x.steps[p]))) continue;
        const int orig_color = x.steps[p - 1].color;
        PathWord reduced = x;
        reduced.steps.erase(reduced.steps.begin() + (p - 1), reduced.steps.begin() + (p + 1));
        for (int q = 0; q <= L - 2; ++q) {
            for (int c = 1; c <= s; ++c) {
                PathWord cand = reduced;
                cand.steps.insert(cand.steps.begin() + q, {up(std::uint8_t(c)), down(std::uint8_t(c))});
                if (!(cand == y)) continue;
                const int len = std::abs((q + 1) - p) + (c != orig_color ? 1 : 0);
                if (!best.found || len < best.walk_len) best = {len, p, q, c, true};
            }
        }
    }
    return best;
}

} // namespace

bool peak_displace_adjacent(const PathWord& x, const PathWord& y, int s) {
    if (x == y) return false;
    return find_displacement(x, y, s).found;
}

std::vector<PathWord> canonical_path(const PathWord& x, const PathWord& y, int s) {
    if (x == y) return {x};
    const DisplaceChoice choice = find_displacement(x, y, s);
    if (!choice.found)
        throw std::invalid_argument("canonical_path: states are not peak-displace adjacent");

    std::vector<PathWord> path{x};
    PathWord cur = x;
    int pos = choice.p;              // 1-based peak position being walked
    const int target = choice.q + 1; // final peak position in y
    while (pos != target) {
        const int window = (target > pos) ? pos : pos - 1; // 1-based window start
        PathWord moved;
        bool up_type = false;
        const bool ok = exchange_at_window(cur, std::size_t(window - 1), moved, up_type);
        assert(ok);
        (void)ok;
        (void)up_type;
        cur = std::move(moved);
        path.push_back(cur);
        pos += (target > pos) ? 1 : -1;
    }
    if (cur.steps[pos - 1].color != std::uint8_t(choice.c)) {
        cur.steps[pos - 1].color = std::uint8_t(choice.c);
        cur.steps[pos].color = std::uint8_t(choice.c);
        path.push_back(cur);
    }
    assert(path.back() == y);
    return path;
}

} // namespace fredkin
