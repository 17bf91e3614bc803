#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredkin/bigint.hpp"
#include "fredkin/enumerate.hpp"
#include "fredkin/moves.hpp"
#include "fredkin/paths.hpp"
#include "fredkin/sampling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

using namespace fredkin;

namespace {

// Independent oracle: walk all 2^L up/down bitmasks and keep the Dyck ones.
// Deliberately does not share code with enumerate_paths.
std::vector<std::string> brute_force_dyck(int L) {
    std::vector<std::string> out;
    for (unsigned mask = 0; mask < (1u << L); ++mask) {
        int h = 0;
        bool ok = true;
        std::string word;
        for (int i = 0; i < L && ok; ++i) {
            const bool up_step = (mask >> i) & 1u;
            h += up_step ? 1 : -1;
            word += up_step ? 'u' : 'd';
            if (h < 0) ok = false;
        }
        if (ok && h == 0) out.push_back(word);
    }
    return out;
}

PathWord make(const std::string& text, PathKind kind = PathKind::Dyck) {
    auto w = parse_word(text, kind);
    REQUIRE(w.has_value());
    return *w;
}

} // namespace

TEST_CASE("catalan numbers: base cases and brute-force check") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(5) == BigInt(brute_force_dyck(10).size()));
    // exceeds 64 bits
    CHECK(catalan(40) > BigInt("18446744073709551615"));

    // convolution identity C_m = sum_j C_{j-1} C_{m-j}
    for (int m = 1; m <= 20; ++m) {
        BigInt sum = 0;
        for (int j = 1; j <= m; ++j) sum += catalan(j - 1) * catalan(m - j);
        CHECK(sum == catalan(m));
    }
}

TEST_CASE("enumerate_paths matches the brute-force oracle") {
    for (int n = 0; n <= 5; ++n) {
        auto oracle = brute_force_dyck(2 * n);
        std::sort(oracle.begin(), oracle.end(),
                  [](const std::string& a, const std::string& b) {
                      return word_less(*parse_word(a, PathKind::Dyck), *parse_word(b, PathKind::Dyck));
                  });
        auto words = enumerate_paths(2 * n, 1, PathKind::Dyck);
        REQUIRE(words.size() == oracle.size());
        for (std::size_t i = 0; i < words.size(); ++i) CHECK(to_string(words[i]) == oracle[i]);
        CHECK(BigInt(words.size()) == catalan(n));
    }

    auto dyck4 = enumerate_paths(4, 1, PathKind::Dyck);
    REQUIRE(dyck4.size() == 2);
    CHECK(to_string(dyck4[0]) == "uudd");
    CHECK(to_string(dyck4[1]) == "udud");

    CHECK(enumerate_paths(4, 2, PathKind::Dyck).size() == 8);    // s^n C_n = 4*2
    CHECK(enumerate_paths(4, 1, PathKind::Lattice).size() == 6); // binom(4,2)

    // colored counts s^n C_n for s <= 3, n <= 5
    for (int s = 1; s <= 3; ++s)
        for (int n = 0; n <= 5; ++n) {
            BigInt expected = catalan(n);
            for (int i = 0; i < n; ++i) expected *= s;
            CHECK(BigInt(enumerate_paths(2 * n, s, PathKind::Dyck).size()) == expected);
        }

    // every enumerated word valid, duplicate-free, sorted
    auto motzkin = enumerate_paths(6, 2, PathKind::Motzkin);
    for (const auto& w : motzkin) CHECK(is_valid(w));
    for (std::size_t i = 0; i + 1 < motzkin.size(); ++i) CHECK(word_less(motzkin[i], motzkin[i + 1]));

    CHECK_THROWS_AS(enumerate_paths(26, 1, PathKind::Dyck), std::length_error);
}

TEST_CASE("area is the lattice-point height sum") {
    CHECK(area(make("ud")) == 1);
    CHECK(area(make("uudd")) == 4);
    CHECK(area(make("udud")) == 2);

    // total area over Dyck(2n) equals 4^n - binom(2n+2, n+1)/2
    for (int n = 1; n <= 8; ++n) {
        BigInt total = 0;
        for (const auto& w : enumerate_paths(2 * n, 1, PathKind::Dyck)) total += area(w);
        BigInt closed = 1;
        for (int i = 0; i < n; ++i) closed *= 4;
        closed -= binomial(2 * n + 2, n + 1) / 2;
        CHECK(total == closed);
    }
}

TEST_CASE("peak positions") {
    CHECK(peaks(make("uudd")) == std::vector<int>{2});
    CHECK(peaks(make("udud")) == std::vector<int>{1, 3});
    PathWord all_down;
    all_down.kind = PathKind::Lattice;
    for (int i = 0; i < 4; ++i) all_down.steps.push_back(down());
    CHECK(peaks(all_down).empty());
}

TEST_CASE("fredkin moves: named examples") {
    auto n1 = fredkin_neighbor_set(make("uudd"), 1);
    REQUIRE(n1.size() == 1);
    CHECK(to_string(n1[0]) == "udud");

    auto n2 = fredkin_neighbor_set(make("udud"), 1);
    REQUIRE(n2.size() == 1);
    CHECK(to_string(n2[0]) == "uudd");

    auto n3 = fredkin_neighbor_set(make("u1 d1"), 2);
    REQUIRE(n3.size() == 1);
    CHECK(to_string(n3[0]) == "u2 d2");
}

TEST_CASE("fredkin moves: symmetry, validity, area steps, connectivity") {
    for (int s = 1; s <= 2; ++s) {
        for (int n = 1; n <= (s == 1 ? 6 : 4); ++n) {
            auto words = enumerate_paths(2 * n, s, PathKind::Dyck);
            std::map<std::string, std::size_t> index;
            for (std::size_t i = 0; i < words.size(); ++i) index[to_string(words[i])] = i;

            std::vector<std::set<std::size_t>> adj(words.size());
            for (std::size_t i = 0; i < words.size(); ++i) {
                for (const auto& m : fredkin_moves(words[i], s)) {
                    CHECK(is_valid(m.result));
                    auto it = index.find(to_string(m.result));
                    REQUIRE(it != index.end());
                    adj[i].insert(it->second);
                    const long long diff = std::abs(area(m.result) - area(words[i]));
                    if (m.type == FredkinMove::Type::Recolor) CHECK(diff == 0);
                    else CHECK(diff == 2);
                }
            }
            // symmetry of the neighbor relation
            for (std::size_t i = 0; i < words.size(); ++i)
                for (std::size_t j : adj[i]) CHECK(adj[j].count(i) == 1);
            // connectivity (BFS)
            if (!words.empty()) {
                std::vector<bool> seen(words.size(), false);
                std::vector<std::size_t> queue{0};
                seen[0] = true;
                while (!queue.empty()) {
                    const std::size_t v = queue.back();
                    queue.pop_back();
                    for (std::size_t u : adj[v])
                        if (!seen[u]) { seen[u] = true; queue.push_back(u); }
                }
                CHECK(std::count(seen.begin(), seen.end(), true) == std::ptrdiff_t(words.size()));
            }
        }
    }
}

TEST_CASE("peak-displacing distribution at n=2") {
    auto from_uudd = peak_displace_targets(make("uudd"), 1);
    REQUIRE(from_uudd.size() == 2);
    std::map<std::string, double> p;
    for (const auto& [w, prob] : from_uudd) p[to_string(w)] = prob;
    CHECK(p["udud"] == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(p["uudd"] == doctest::Approx(7.0 / 9).epsilon(1e-14));

    auto from_udud = peak_displace_targets(make("udud"), 1);
    std::map<std::string, double> q;
    for (const auto& [w, prob] : from_udud) q[to_string(w)] = prob;
    CHECK(q["uudd"] == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(q["udud"] == doctest::Approx(7.0 / 9).epsilon(1e-14));
}

TEST_CASE("peak-displacing distribution: stochastic and symmetric") {
    for (int s = 1; s <= 2; ++s) {
        for (int n = 1; n <= 3; ++n) {
            auto words = enumerate_paths(2 * n, s, PathKind::Dyck);
            std::map<std::string, std::map<std::string, double>> P;
            for (const auto& w : words) {
                double total = 0;
                for (const auto& [v, prob] : peak_displace_targets(w, s)) {
                    CHECK(prob >= 0);
                    total += prob;
                    P[to_string(w)][to_string(v)] = prob;
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
            }
            // uniform stationary distribution: detailed balance = symmetry
            for (const auto& [x, row] : P)
                for (const auto& [y, prob] : row)
                    if (x != y) CHECK(prob == doctest::Approx(P[y][x]).epsilon(1e-13));
        }
    }
}

TEST_CASE("canonical paths walk the displaced peak") {
    auto path = canonical_path(make("uudd"), make("udud"), 1);
    REQUIRE(path.size() == 2);
    CHECK(to_string(path[0]) == "uudd");
    CHECK(to_string(path[1]) == "udud");

    auto self_path = canonical_path(make("uudd"), make("uudd"), 1);
    CHECK(self_path.size() == 1);

    // two displacements apart: not adjacent
    CHECK_THROWS_AS(canonical_path(make("uuuddd"), make("ududud"), 1), std::invalid_argument);
}

TEST_CASE("canonical paths: every adjacent pair, length and step validity") {
    for (int s = 1; s <= 2; ++s) {
        const int n = (s == 1) ? 4 : 3;
        auto words = enumerate_paths(2 * n, s, PathKind::Dyck);
        for (const auto& x : words) {
            for (const auto& [y, prob] : peak_displace_targets(x, s)) {
                if (x == y || prob == 0) continue;
                auto path = canonical_path(x, y, s);
                REQUIRE(path.size() >= 2);
                CHECK(path.front() == x);
                CHECK(path.back() == y);
                CHECK(path.size() - 1 <= std::size_t(2 * n));
                for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                    auto nbrs = fredkin_neighbor_set(path[i], s);
                    CHECK(std::count(nbrs.begin(), nbrs.end(), path[i + 1]) == 1);
                }
            }
        }
    }
}

TEST_CASE("uniform Dyck sampling") {
    CHECK(to_string(sample_dyck_uniform(1, 1, 7)) == "ud");

    Rng rng(20240817);
    int count_uudd = 0;
    double area_sum = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        PathWord w = sample_dyck_uniform(2, 1, rng);
        REQUIRE(is_valid(w));
        if (to_string(w) == "uudd") ++count_uudd;
        area_sum += double(area(w));
    }
    CHECK(std::abs(count_uudd / double(samples) - 0.5) < 0.01);
    CHECK(std::abs(area_sum / samples - 3.0) < 0.02);

    // colored sampling stays valid and hits all colors
    std::set<int> colors_seen;
    for (int i = 0; i < 200; ++i) {
        PathWord w = sample_dyck_uniform(4, 3, rng);
        REQUIRE(is_valid(w));
        for (const auto& st : w.steps) colors_seen.insert(st.color);
    }
    CHECK(colors_seen == std::set<int>{1, 2, 3});
}

TEST_CASE("serialization round-trips") {
    for (const auto& w : enumerate_paths(8, 1, PathKind::Dyck))
        CHECK(*parse_word(to_string(w), PathKind::Dyck) == w);
    for (const auto& w : enumerate_paths(6, 3, PathKind::Dyck))
        CHECK(*parse_word(to_string(w), PathKind::Dyck) == w);
    for (const auto& w : enumerate_paths(6, 2, PathKind::Motzkin))
        CHECK(*parse_word(to_string(w), PathKind::Motzkin) == w);

    CHECK(!parse_word("uuddx", PathKind::Dyck).has_value());
    CHECK(parse_word("uudd", PathKind::Lattice).has_value()); // dyck words are lattice words too
    CHECK(!parse_word("ud0", PathKind::Dyck).has_value());    // flats only in motzkin
    CHECK(!parse_word("du", PathKind::Dyck).has_value());
    CHECK(parse_word("du", PathKind::Lattice).has_value());
}
