#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredkin/chain.hpp"
#include "fredkin/chain_builders.hpp"
#include "fredkin/comparison.hpp"

#include <cmath>

using namespace fredkin;

namespace {

ChainSpec two_state_symmetric(double p) {
    std::vector<std::map<std::uint32_t, double>> rows(2);
    rows[0] = {{0, 1 - p}, {1, p}};
    rows[1] = {{0, p}, {1, 1 - p}};
    return ChainSpec::from_rows(ChainKind::HoppingWalk, 1, 1, {"a", "b"}, rows, {0.5, 0.5});
}

} // namespace

TEST_CASE("chains satisfy the reversible-chain axioms") {
    for (int s = 1; s <= 2; ++s) {
        for (int n = 2; n <= (s == 1 ? 6 : 4); ++n) {
            for (ChainKind kind : {ChainKind::Fredkin, ChainKind::PeakDisplacing}) {
                auto c = build_chain(kind, n, s);
                auto check = validate_chain(c);
                INFO(chain_kind_name(kind), " n=", n, " s=", s, " ", check.detail);
                CHECK(check.ok);
            }
        }
    }
    for (int n = 2; n <= 5; ++n) {
        for (ChainKind kind : {ChainKind::Lattice, ChainKind::PositiveLattice}) {
            auto c = build_chain(kind, n, 1);
            auto check = validate_chain(c);
            INFO(chain_kind_name(kind), " n=", n, " ", check.detail);
            CHECK(check.ok);
        }
    }
}

TEST_CASE("fredkin chain at n=2: both windows carry the single legal move") {
    auto c = build_chain(ChainKind::Fredkin, 2, 1);
    REQUIRE(c.num_states() == 2);
    CHECK(c.labels[0] == "uudd");
    CHECK(c.labels[1] == "udud");
    // two exchange windows, each applied with probability 1/2 * 1/2
    CHECK(c.prob(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.prob(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.prob(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("peak-displacing chain at n=2 and its gap") {
    auto c = build_chain(ChainKind::PeakDisplacing, 2, 1);
    REQUIRE(c.num_states() == 2);
    CHECK(c.prob(0, 1) == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(c.prob(0, 0) == doctest::Approx(7.0 / 9).epsilon(1e-14));
    CHECK(spectral_gap(c) == doctest::Approx(4.0 / 9).epsilon(1e-12));
}

TEST_CASE("lattice chain at n=2 has binom(4,2) states") {
    auto c = build_chain(ChainKind::Lattice, 2, 1);
    CHECK(c.num_states() == 6);
    CHECK(validate_chain(c).ok);
}

TEST_CASE("spectral gaps stay within [0, 2]") {
    for (ChainKind kind :
         {ChainKind::Fredkin, ChainKind::PeakDisplacing, ChainKind::Lattice,
          ChainKind::PositiveLattice}) {
        auto c = build_chain(kind, 3, 1);
        const double gap = spectral_gap(c);
        CHECK(gap >= 0.0);
        CHECK(gap <= 2.0);
    }
}

TEST_CASE("peak-displacing gap beats s/(sqrt(pi) n^{11/2})") {
    for (int s = 1; s <= 2; ++s)
        for (int n = 2; n <= (s == 1 ? 6 : 4); ++n) {
            auto c = build_chain(ChainKind::PeakDisplacing, n, s);
            const double proved = s / (std::sqrt(M_PI) * std::pow(double(n), 5.5));
            CHECK(spectral_gap(c) >= proved);
        }
}

TEST_CASE("TV mixing curves") {
    auto c = build_chain(ChainKind::PeakDisplacing, 3, 1);
    for (std::size_t x0 : {std::size_t(0), c.num_states() - 1}) {
        auto curve = tv_mixing_curve(c, x0);
        CHECK(curve.tv[0] == doctest::Approx(1.0 - c.pi[x0]).epsilon(1e-13));
        for (std::size_t t = 0; t + 1 < curve.tv.size(); ++t)
            CHECK(curve.tv[t + 1] <= curve.tv[t] + 1e-13);
        REQUIRE(curve.tau_quarter >= 0);

        // eigenvalue bound on the mixing time
        const double gap = spectral_gap(c);
        const double bound = mixing_time_bound(gap, c.pi[x0], 0.25);
        CHECK(double(curve.tau_quarter) <= bound);
    }

    // uniform-row chain mixes in one step
    std::vector<std::map<std::uint32_t, double>> rows(2);
    rows[0] = {{0, 0.5}, {1, 0.5}};
    rows[1] = {{0, 0.5}, {1, 0.5}};
    auto u = ChainSpec::from_rows(ChainKind::HamiltonianMapped, 2, 1, {"x", "y"}, rows, {0.5, 0.5});
    CHECK(tv_mixing_curve(u, 0).tau_quarter == 1);
    CHECK(mixing_time_from(u, 0, 0.25) == 1);
    CHECK_THROWS_AS(mixing_time_from(u, 0, 0.0), std::invalid_argument);
}

TEST_CASE("comparison constant: self-comparison with identity paths gives A = 1") {
    auto c = build_chain(ChainKind::PeakDisplacing, 3, 1);
    PathGenerator identity = [](std::size_t x, std::size_t y) {
        return std::vector<std::size_t>{x, y};
    };
    auto res = comparison_constant(c, c, identity);
    CHECK(res.A == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("comparison theorem bound holds: fredkin vs peak-displacing") {
    for (int s = 1; s <= 2; ++s) {
        for (int n = 2; n <= (s == 1 ? 5 : 3); ++n) {
            auto target = build_chain(ChainKind::Fredkin, n, s);
            auto reference = build_chain(ChainKind::PeakDisplacing, n, s);
            auto res = comparison_constant(target, reference, walk_the_peak_paths(target));
            REQUIRE(res.A > 0);
            const double gap_target = spectral_gap(target);
            const double gap_ref = spectral_gap(reference);
            INFO("n=", n, " s=", s, " A=", res.A);
            CHECK(gap_target >= gap_ref / res.A - 1e-12);
        }
    }
}

TEST_CASE("congestion: two-state closed form and error paths") {
    auto c = two_state_symmetric(0.5);
    auto res = congestion_rho(c, bfs_paths(c));
    CHECK(res.rho == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(res.max_len == 1);
    CHECK(res.gap_lower_bound == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spectral_gap(c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_gap(c) >= res.gap_lower_bound);

    std::vector<std::map<std::uint32_t, double>> single(1);
    single[0] = {{0, 1.0}};
    auto lonely = ChainSpec::from_rows(ChainKind::HoppingWalk, 1, 1, {"z"}, single, {1.0});
    CHECK_THROWS_AS(congestion_rho(lonely, bfs_paths(lonely)), std::invalid_argument);
}

TEST_CASE("congestion bound certifies the gap on built chains") {
    for (ChainKind kind : {ChainKind::PeakDisplacing, ChainKind::PositiveLattice}) {
        auto c = build_chain(kind, 3, 1);
        auto res = congestion_rho(c, bfs_paths(c));
        CHECK(spectral_gap(c) >= res.gap_lower_bound - 1e-12);
    }
}

TEST_CASE("induced chain: watched restriction") {
    for (int n = 2; n <= 5; ++n) {
        auto lattice = build_chain(ChainKind::Lattice, n, 1);
        auto positive = build_chain(ChainKind::PositiveLattice, n, 1);

        // indices of Dyck states inside the lattice chain
        std::vector<std::size_t> dyck_subset;
        for (std::size_t i = 0; i < lattice.num_states(); ++i) {
            PathWord w = lattice.states[i];
            w.kind = PathKind::Dyck;
            if (is_valid(w)) dyck_subset.push_back(i);
        }
        auto induced = induced_chain(lattice, dyck_subset);
        REQUIRE(induced.num_states() == positive.num_states());
        CHECK(validate_chain(induced).ok);

        // the induced chain IS the positive-lattice chain
        for (std::size_t i = 0; i < induced.num_states(); ++i) {
            CHECK(induced.labels[i] == positive.labels[i]);
            for (std::size_t j = 0; j < induced.num_states(); ++j)
                CHECK(induced.prob(i, j) == doctest::Approx(positive.prob(i, j)).epsilon(1e-14));
        }

        CHECK(spectral_gap(induced) >= spectral_gap(lattice) - 1e-12);
    }

    // subset = everything reproduces the chain
    auto c = build_chain(ChainKind::PeakDisplacing, 2, 1);
    std::vector<std::size_t> all{0, 1};
    auto same = induced_chain(c, all);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(same.prob(i, j) == doctest::Approx(c.prob(i, j)).epsilon(1e-15));

    // singleton: absorbing, infinite gap sentinel
    auto one = induced_chain(c, {0});
    CHECK(std::isinf(spectral_gap(one)));

    CHECK_THROWS_AS(induced_chain(c, {}), std::invalid_argument);
}

TEST_CASE("state cap raises length_error") {
    CHECK_THROWS_AS(build_chain(ChainKind::Fredkin, 10, 2, 0.5, 100), std::length_error);
}
