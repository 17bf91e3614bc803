#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredkin/comparison.hpp"
#include "fredkin/defect.hpp"
#include "fredkin/eigensolve.hpp"

#include <cmath>

using namespace fredkin;

TEST_CASE("hopping model at m=5 matches the closed-form matrix") {
    auto spec = build_heff(5, 1);
    // Catalan inputs C_0..C_4 = 1, 1, 2, 5, 14
    const double c = 1.0 / (2.0 * std::sqrt(14.0));
    CHECK(spec.h_move.entry(0, 0) == doctest::Approx(1.0 / 14).epsilon(1e-15));
    CHECK(spec.h_move.entry(1, 1) == doctest::Approx(1.0 / 10).epsilon(1e-15));
    CHECK(spec.h_move.entry(2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(spec.h_move.entry(3, 3) == doctest::Approx(1.0 / 10).epsilon(1e-15));
    CHECK(spec.h_move.entry(4, 4) == doctest::Approx(1.0 / 14).epsilon(1e-15));
    CHECK(spec.h_move.entry(0, 2) == doctest::Approx(-c).epsilon(1e-15));
    CHECK(spec.h_move.entry(1, 3) == doctest::Approx(-1.0 / 10).epsilon(1e-15));
    CHECK(spec.h_move.entry(2, 4) == doctest::Approx(-c).epsilon(1e-15));
    CHECK(spec.h_move.entry(0, 1) == 0.0);
    CHECK(spec.h_move.entry(0, 3) == 0.0);
    CHECK(spec.h_move.entry(0, 4) == 0.0);
    CHECK(spec.h_eff.entry(0, 0) == doctest::Approx(1.0 + 1.0 / 14).epsilon(1e-15));

    // m=3: alpha_1^2 = beta_1^2 = C_0/(2 C_2) = 1/4
    CHECK(alpha2_exact(3, 1, 1) == BigRat(1, 4));
    CHECK(beta2_exact(3, 1, 1) == BigRat(1, 4));

    CHECK_THROWS_AS(build_heff(4, 1), std::invalid_argument);
}

TEST_CASE("hop terms are PSD rank-1 and the model matrices are PSD") {
    for (int m : {5, 9, 15}) {
        auto spec = build_heff(m, 1);
        for (std::size_t j = 0; j < spec.alpha.size(); ++j) {
            // rank-1 block [[a^2, -ab], [-ab, b^2]]: eigenvalues {0, a^2+b^2}
            const double a = spec.alpha[j], b = spec.beta[j];
            const double det = a * a * b * b - a * b * a * b;
            CHECK(std::abs(det) < 1e-18);
            CHECK(a > 0);
            CHECK(b > 0);
        }
        auto low = extreme_eigs(spec.h_move, 1, Which::Smallest);
        CHECK(low.eigenvalues[0] > -1e-12);
        auto low_eff = extreme_eigs(spec.h_eff, 1, Which::Smallest);
        CHECK(low_eff.eigenvalues[0] > -1e-12);
    }
}

TEST_CASE("analytic ground state") {
    auto g3 = analytic_ground_state(3, 1);
    CHECK(g3[0] == doctest::Approx(std::sqrt(2.0 / 5)).epsilon(1e-14));
    CHECK(g3[1] == doctest::Approx(std::sqrt(1.0 / 5)).epsilon(1e-14));
    CHECK(g3[2] == doctest::Approx(std::sqrt(2.0 / 5)).epsilon(1e-14));

    auto g5 = analytic_ground_state(5, 1);
    const double n5 = std::sqrt(42.0);
    CHECK(g5[0] == doctest::Approx(std::sqrt(14.0) / n5).epsilon(1e-14));
    CHECK(g5[1] == doctest::Approx(std::sqrt(5.0) / n5).epsilon(1e-14));
    CHECK(g5[2] == doctest::Approx(2.0 / n5).epsilon(1e-14));

    // zero mode in floating point for m up to 201
    for (int m = 3; m <= 201; m += 2) {
        auto spec = build_heff(m, 1);
        auto g = analytic_ground_state(m, 1);
        double norm = 0;
        for (double x : spec.h_move.matvec(g)) norm += x * x;
        CHECK(std::sqrt(norm) < 1e-12);
    }

    // and exactly, in rational arithmetic, for m up to 51
    for (int m = 3; m <= 51; m += 2)
        for (int s = 1; s <= 2; ++s) CHECK(kernel_identity_exact(m, s));
}

TEST_CASE("mapped walk") {
    auto walk = mapped_walk(5, 1);
    REQUIRE(walk.num_states() == 3); // odd positions 1, 3, 5
    CHECK(walk.prob(0, 1) == doctest::Approx(2.0 / 28).epsilon(1e-14)); // C_2/(2 C_4) = 1/14
    CHECK(validate_chain(walk).ok);

    for (int m = 3; m <= 201; m += 2) {
        auto w = mapped_walk(m, 1);
        auto check = validate_chain(w);
        INFO("m=", m, " ", check.detail);
        CHECK(check.ok);
    }

    // entry bounds 1/(32 s) <= P(j, j+-2) <= 1/(2 s)
    for (int s = 1; s <= 2; ++s) {
        for (int m = 5; m <= 101; m += 2) {
            auto w = mapped_walk(m, s);
            for (std::size_t i = 0; i < w.num_states(); ++i)
                for (std::size_t p = w.row_ptr[i]; p < w.row_ptr[i + 1]; ++p) {
                    if (w.col[p] == i) continue;
                    CHECK(w.val[p] >= 1.0 / (32.0 * s) - 1e-15);
                    CHECK(w.val[p] <= 1.0 / (2.0 * s) + 1e-15);
                }
        }
    }

    // congestion certificate on the walk
    for (int m : {5, 21, 51}) {
        auto w = mapped_walk(m, 1);
        auto res = congestion_rho(w, bfs_paths(w));
        CHECK(spectral_gap(w) >= res.gap_lower_bound - 1e-12);
    }
}

TEST_CASE("pinned amplitude: both Catalan ratios") {
    auto p5 = pinned_amplitude(5, 1);
    CHECK(p5.from_ground_state == doctest::Approx(14.0 / 42).epsilon(1e-14));
    CHECK(p5.catalan_ratio_next == doctest::Approx(42.0 / 132).epsilon(1e-14));

    auto p3 = pinned_amplitude(3, 1);
    CHECK(p3.from_ground_state == doctest::Approx(2.0 / 5).epsilon(1e-14));

    // both ratios approach 1/4
    auto p101 = pinned_amplitude(101, 1);
    CHECK(std::abs(p101.from_ground_state - 0.25) < 0.01);
    CHECK(std::abs(p101.catalan_ratio_next - 0.25) < 0.01);
}

TEST_CASE("defect basis dimensions") {
    for (int s = 1; s <= 2; ++s) {
        for (int m : {3, 5, 7}) {
            auto basis = build_defect_basis(m, s);
            BigInt expected = 0;
            for (int j = 1; j <= m; j += 2)
                expected += catalan((j - 1) / 2) * catalan((m - j) / 2);
            BigInt colors = 1;
            for (int i = 0; i < (m - 1) / 2; ++i) colors *= s;
            CHECK(BigInt(basis.words.size()) == expected * colors);
            for (int j : basis.x_position) CHECK(j % 2 == 1);
        }
    }
}

TEST_CASE("single-defect sector: kernel at eps=0, gap at eps=1") {
    {
        auto spec = build_single_defect(3, 1, 0.0);
        REQUIRE(spec.matrix.dim() == 2); // dud, udd wait: x at 1 or 3
        auto eigs = extreme_eigs(spec.matrix, 2, Which::Smallest);
        CHECK(std::abs(eigs.eigenvalues[0]) < 1e-12);
        CHECK(std::abs(eigs.eigenvalues[1]) < 1e-12); // kernel dimension 2
    }
    for (int m : {5, 7}) {
        auto at_zero = build_single_defect(m, 1, 0.0);
        const std::size_t kernel_dim = std::size_t((m + 1) / 2);
        auto eigs =
            extreme_eigs(at_zero.matrix, kernel_dim + 1, Which::Smallest);
        for (std::size_t i = 0; i < kernel_dim; ++i)
            CHECK(std::abs(eigs.eigenvalues[i]) < 1e-12);
        CHECK(eigs.eigenvalues[kernel_dim] > 1e-6);

        auto at_one = build_single_defect(m, 1, 1.0);
        auto low = extreme_eigs(at_one.matrix, 1, Which::Smallest);
        CHECK(low.eigenvalues[0] > 1e-6);
    }
}

TEST_CASE("first-order perturbation matches the on-kernel hop matrix") {
    for (int m : {5, 7}) {
        auto F = first_order_matrix(m, 1);
        const double target = extreme_eigs(F, 1, Which::Smallest).eigenvalues[0];
        CHECK(target > 0);
        double prev_err = -1;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            auto spec = build_single_defect(m, 1, eps);
            auto low = extreme_eigs(spec.matrix, 1, Which::Smallest);
            const double err = std::abs(low.eigenvalues[0] / eps - target);
            if (prev_err > 0) CHECK(err < prev_err / 5.0); // linear-in-eps decay
            prev_err = err;
        }
        CHECK(prev_err < 1e-3);

        // the pinned hopping model built from the closed-form display has
        // the same arrowhead structure but two-apart Catalan ratios; its
        // ground energy is reported alongside, not equated
        CHECK(heff_ground_energy(m, 1) > 0);
    }

    // at m=5 the on-kernel matrix entries are consecutive Catalan ratios:
    // alpha_1~^2 = C_1/(2 C_2) = 1/4 and the pinning sits at position 1
    auto F5 = first_order_matrix(5, 1);
    REQUIRE(F5.dim() == 3);
    CHECK(F5.entry(0, 0) == doctest::Approx(1.0 + 0.25).epsilon(1e-13));
    CHECK(F5.entry(2, 2) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(F5.entry(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(F5.entry(0, 1) == doctest::Approx(-std::sqrt(0.125)).epsilon(1e-13));
}

TEST_CASE("ground energy of the pinned hopping model decays polynomially") {
    double prev = 1e9;
    std::vector<double> xs, ys;
    for (int m = 5; m <= 201; m += 14) {
        const double e = heff_ground_energy(m, 1);
        CHECK(e > 0);
        CHECK(e < prev);
        prev = e;
        xs.push_back(std::log(double(m)));
        ys.push_back(std::log(e));
    }
    // least-squares slope of log(e) vs log(m): polynomial decay, |slope| <= 4
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope =
        (double(xs.size()) * sxy - sx * sy) / (double(xs.size()) * sxx - sx * sx);
    CHECK(slope < 0);
    CHECK(std::abs(slope) <= 4.0);
}
