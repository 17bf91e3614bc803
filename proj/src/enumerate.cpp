#include "fredkin/enumerate.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fredkin {

namespace {

// DFS in canonical step order, so output is sorted without a final sort.
void extend(PathWord& w, int remaining, int h, std::vector<std::uint8_t>& stack, int s,
            std::vector<PathWord>& out) {
    if (remaining == 0) {
        if (h == 0) out.push_back(w);
        return;
    }
    const bool lattice = w.kind == PathKind::Lattice;
    // up steps: need enough room left to come back down
    if (std::abs(h + 1) <= remaining - 1) {
        const int colors = lattice ? 1 : s;
        for (int c = 1; c <= colors; ++c) {
            w.steps.push_back(up(std::uint8_t(c)));
            if (!lattice) stack.push_back(std::uint8_t(c));
            extend(w, remaining - 1, h + 1, stack, s, out);
            if (!lattice) stack.pop_back();
            w.steps.pop_back();
        }
    }
    if (w.kind == PathKind::Motzkin && std::abs(h) <= remaining - 1) {
        w.steps.push_back(flat());
        extend(w, remaining - 1, h, stack, s, out);
        w.steps.pop_back();
    }
    // down: color forced by the matching up step (or free for lattice)
    if (lattice) {
        if (std::abs(h - 1) <= remaining - 1) {
            w.steps.push_back(down(1));
            extend(w, remaining - 1, h - 1, stack, s, out);
            w.steps.pop_back();
        }
    } else if (h > 0) {
        const std::uint8_t c = stack.back();
        w.steps.push_back(down(c));
        stack.pop_back();
        extend(w, remaining - 1, h - 1, stack, s, out);
        stack.push_back(c);
        w.steps.pop_back();
    }
}

std::filesystem::path cache_file(int L, int s, PathKind kind) {
    const char* dir = std::getenv("FREDKIN_LAB_CACHE");
    if (dir == nullptr || *dir == '\0' || L == 0) return {};
    const char* kind_name = kind == PathKind::Dyck ? "dyck"
                          : kind == PathKind::Motzkin ? "motzkin" : "lattice";
    return std::filesystem::path(dir) /
           ("enum_" + std::string(kind_name) + "_L" + std::to_string(L) + "_s" + std::to_string(s) + ".txt");
}

} // namespace

std::vector<PathWord> enumerate_paths(int L, int s, PathKind kind, int cap) {
    if (L < 0 || L % 2 != 0)
        throw std::invalid_argument("enumerate_paths: length must be even and non-negative");
    if (s < 1) throw std::invalid_argument("enumerate_paths: need s >= 1");
    if (L > cap)
        throw std::length_error("enumerate_paths: length " + std::to_string(L) +
                                " exceeds cap " + std::to_string(cap));

    const std::filesystem::path cache = cache_file(L, s, kind);
    if (!cache.empty() && std::filesystem::exists(cache)) {
        std::vector<PathWord> out;
        std::ifstream in(cache);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto w = parse_word(line, kind);
            if (!w) { out.clear(); break; } // stale cache; fall through to regenerate
            out.push_back(*w);
        }
        if (!out.empty() || L == 0) return out;
    }

    std::vector<PathWord> out;
    PathWord w;
    w.kind = kind;
    w.steps.reserve(L);
    std::vector<std::uint8_t> stack;
    extend(w, L, 0, stack, s, out);

    if (!cache.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cache.parent_path(), ec);
        if (!ec) {
            std::ofstream f(cache);
            for (const PathWord& pw : out) f << to_string(pw) << '\n';
        }
    }
    return out;
}

} // namespace fredkin
