#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredkin/airy.hpp"
#include "fredkin/enumerate.hpp"
#include "fredkin/excursion.hpp"
#include "fredkin/hamiltonian.hpp"

#include <cmath>
#include <complex>

using namespace fredkin;

TEST_CASE("airy function and its zeros") {
    CHECK(std::abs(airy_ai(0.0) - 0.35502805388781723926) < 1e-14);

    const auto zeros = airy_zeros(40);
    CHECK(std::abs(zeros[0] - (-2.33810741045976703849)) < 1e-10);
    CHECK(std::abs(zeros[1] - (-4.08794944413097061664)) < 1e-10);

    // every zero annihilates the evaluator and they interlace sign changes
    for (int j = 0; j < 40; ++j) {
        CHECK(std::abs(airy_ai(zeros[std::size_t(j)])) < 1e-10);
        if (j > 0) CHECK(zeros[std::size_t(j)] < zeros[std::size_t(j) - 1]);
    }

    // scan oracle: sign changes of Ai on a fine grid match the zero list
    int changes = 0;
    double prev = airy_ai(-33.0);
    for (double x = -33.0 + 1e-3; x <= 0.0; x += 1e-3) {
        const double cur = airy_ai(x);
        if (prev * cur < 0) ++changes;
        prev = cur;
    }
    int zeros_in_range = 0;
    for (double z : zeros)
        if (z > -33.0) ++zeros_in_range;
    CHECK(changes == zeros_in_range);
}

TEST_CASE("excursion moments and density normalization") {
    const auto [mean, stddev] = excursion_moments();
    CHECK(std::abs(mean - 0.6267) < 1e-4);
    CHECK(std::abs(stddev - 0.1548) < 1e-4);

    // density is nonnegative on the working grid (numerical zero in the
    // far tail, where alternating terms cancel to ~1e-13)
    for (double x = 0.05; x <= 3.0; x += 0.05) CHECK(density_f_A(x) >= -1e-12);
    CHECK_THROWS_AS(density_f_A(0.0), std::invalid_argument);
    CHECK_THROWS_AS(density_f_A(-1.0), std::invalid_argument);

    // quadrature: normalization and both closed-form moments
    const auto mass = char_function(0.0);
    CHECK(std::abs(mass.real() - 1.0) < 1e-6);
    CHECK(std::abs(mass.imag()) < 1e-12);

    auto moment = [](int k) {
        double acc = 0;
        const int steps = 8192;
        const double lo = 1e-4, hi = 4.0;
        const double h = (hi - lo) / steps;
        for (int i = 0; i <= steps; ++i) {
            const double x = lo + i * h;
            const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * std::pow(x, k) * density_f_A(x);
        }
        return acc * h / 3.0;
    };
    CHECK(std::abs(moment(1) - mean) < 1e-3);
    CHECK(std::abs(moment(2) - mean * mean - (5.0 / 12.0 - M_PI / 8.0)) < 1e-4);
}

TEST_CASE("characteristic function basics") {
    const auto [mean, stddev] = excursion_moments();
    const auto at_sigma = char_function(1.0 / stddev);
    CHECK(std::abs(at_sigma) < 1.0);
    CHECK(std::abs(at_sigma) > 0.0);
}

TEST_CASE("dyck area closed form and distribution") {
    CHECK(dyck_area_closed_form(1) == 1);
    CHECK(dyck_area_closed_form(2) == 6);

    for (int n = 1; n <= 10; ++n) {
        const auto dist = dyck_area_distribution(n);
        BigInt total = 0, weighted = 0;
        for (std::size_t a = 0; a < dist.size(); ++a) {
            total += dist[a];
            weighted += dist[a] * BigInt(a);
        }
        CHECK(total == catalan(n));
        CHECK(weighted == dyck_area_closed_form(n));
    }
    // direct enumeration cross-check
    for (int n = 1; n <= 8; ++n) {
        BigInt sum = 0;
        for (const auto& w : enumerate_paths(2 * n, 1, PathKind::Dyck)) sum += area(w);
        CHECK(sum == dyck_area_closed_form(n));
    }

    // asymptotic mean area: E[A]/ (sqrt(pi) n^{3/2}) -> 1
    const int n = 2000;
    const double ratio = ratio_as_double(dyck_area_closed_form(n), catalan(n)) /
                         (std::sqrt(M_PI) * std::pow(double(n), 1.5));
    CHECK(std::abs(ratio - 1.0) < 0.05);
}

TEST_CASE("window pair counts at n=2") {
    const auto counts = window_pair_counts(2);
    REQUIRE(counts.a.size() == 2);
    CHECK(counts.a[0] == 1.0);
    CHECK(counts.a[1] == 0.0);
    CHECK(counts.b[0] == 0.0);
    CHECK(counts.b[1] == 1.0);
}

TEST_CASE("twisted energy: closed case and dual evaluation") {
    // n=2: both routes give 1 - cos(4 pi theta) for any theta
    for (double theta : {0.0, 0.01, 0.1, 0.3}) {
        const auto e = twisted_energy(2, 1, theta);
        const double expected = 1.0 - std::cos(4.0 * M_PI * theta);
        CHECK(std::abs(e.direct - expected) < 1e-12);
        CHECK(std::abs(e.pair_count - expected) < 1e-12);
    }

    // ground state at theta = 0
    CHECK(twisted_energy(5, 1, 0.0).direct == doctest::Approx(0.0).epsilon(1e-12));

    for (int s = 1; s <= 2; ++s) {
        for (int n = 2; n <= (s == 1 ? 8 : 6); ++n) {
            for (double theta : {0.0, 0.01, 0.1, twist_scale(n)}) {
                const auto e = twisted_energy(n, s, theta);
                INFO("n=", n, " s=", s, " theta=", theta);
                CHECK(std::abs(e.direct - e.pair_count) < 1e-10);
            }
        }
    }

    // the streaming route (n > 12) against the pair formula
    const auto big = twisted_energy(13, 1, twist_scale(13));
    CHECK(std::abs(big.direct - big.pair_count) < 1e-10);
}

TEST_CASE("overlap with the ground state") {
    CHECK(std::abs(overlap_with_ground(4, 0.0) - 1.0) < 1e-12);

    // n=2, theta=1/8: areas 4 and 2 give (e^{i pi} + e^{i pi/2})/2
    const auto ov = overlap_with_ground(2, 0.125);
    CHECK(std::abs(std::norm(ov) - 0.5) < 1e-12);
    CHECK(ov.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ov.imag() == doctest::Approx(0.5).epsilon(1e-12));

    // variational bound: <phi|H|phi> >= gap * (1 - |<D|phi>|^2)
    for (int n = 2; n <= 6; ++n) {
        auto sector = build_balanced_sector(n, 1);
        const double gap = hamiltonian_gap(sector.matrix).gap;
        for (double theta : {0.02, twist_scale(n)}) {
            const double energy = twisted_energy(n, 1, theta).direct;
            const double rest = 1.0 - std::norm(overlap_with_ground(n, theta));
            CHECK(energy >= gap * rest - 1e-9);
        }
    }
}

TEST_CASE("monte carlo scaled areas at a desk-size n") {
    const int n = 50;
    const std::size_t samples = 20000;
    const auto mc = mc_scaled_area(n, samples, 20240817);

    // exact finite-n mean of the scaled area from the closed form
    const double exact_mean = ratio_as_double(dyck_area_closed_form(n), catalan(n)) /
                              (2.0 * std::sqrt(2.0) * std::pow(double(n), 1.5));
    CHECK(std::abs(mc.mean - exact_mean) < 0.01);
    CHECK(mc.stddev > 0.1);
    CHECK(mc.stddev < 0.25);

    double count_sum = 0;
    for (double c : mc.counts) count_sum += c;
    CHECK(count_sum <= double(samples));
    CHECK(count_sum > 0.9 * double(samples)); // nearly all mass inside [0.2, 1.5]
}
