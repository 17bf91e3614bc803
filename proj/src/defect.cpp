#include "fredkin/defect.hpp"

#include "fredkin/eigensolve.hpp"
#include "fredkin/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fredkin {

namespace {

void require_odd(int m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("hopping model: m must be odd and >= 3");
}

} // namespace

BigRat alpha2_exact(int m, int s, int j) {
    require_odd(m);
    if (j < 1 || j > m - 2) throw std::out_of_range("alpha2_exact: j out of range");
    return BigRat(catalan(m - j - 2), 2 * s * catalan(m - j));
}

BigRat beta2_exact(int m, int s, int j) {
    require_odd(m);
    if (j < 1 || j > m - 2) throw std::out_of_range("beta2_exact: j out of range");
    return BigRat(catalan(j - 1), 2 * s * catalan(j + 1));
}

HoppingSpec build_heff(int m, int s) {
    require_odd(m);
    if (s < 1) throw std::invalid_argument("build_heff: need s >= 1");
    HoppingSpec spec;
    spec.m = m;
    spec.s = s;
    SparseSymMatrix move(static_cast<std::size_t>(m));
    SparseSymMatrix eff(static_cast<std::size_t>(m));
    for (int j = 1; j <= m - 2; ++j) {
        const double a = std::sqrt(alpha2_exact(m, s, j).convert_to<double>());
        const double b = std::sqrt(beta2_exact(m, s, j).convert_to<double>());
        spec.alpha.push_back(a);
        spec.beta.push_back(b);
        const std::size_t lo = std::size_t(j - 1), hi = std::size_t(j + 1);
        move.add(lo, lo, a * a);
        move.add(hi, hi, b * b);
        move.add(lo, hi, -a * b);
        eff.add(lo, lo, a * a);
        eff.add(hi, hi, b * b);
        eff.add(lo, hi, -a * b);
    }
    eff.add(0, 0, 1.0); // pinning potential at site 1
    move.assemble();
    eff.assemble();
    spec.h_move = std::move(move);
    spec.h_eff = std::move(eff);
    return spec;
}

std::vector<double> analytic_ground_state(int m, int s) {
    require_odd(m);
    (void)s; // colors scale every coefficient alike and normalize away
    const BigInt norm2 = catalan(m);
    std::vector<double> g(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j)
        g[std::size_t(j - 1)] =
            std::sqrt(ratio_as_double(catalan(j - 1) * catalan(m - j), norm2));
    return g;
}

bool kernel_identity_exact(int m, int s) {
    require_odd(m);
    const BigInt cm = catalan(m);
    for (int j = 1; j <= m - 2; ++j) {
        const BigRat g2_j(catalan(j - 1) * catalan(m - j), cm);
        const BigRat g2_j2(catalan(j + 1) * catalan(m - j - 2), cm);
        if (alpha2_exact(m, s, j) * g2_j != beta2_exact(m, s, j) * g2_j2) return false;
    }
    return true;
}

ChainSpec mapped_walk(int m, int s) {
    require_odd(m);
    const int count = (m + 1) / 2; // odd positions 1, 3, ..., m
    std::vector<std::string> labels;
    std::vector<double> pi(static_cast<std::size_t>(count));
    BigInt norm = 0;
    for (int k = 0; k < count; ++k) {
        const int j = 2 * k + 1;
        labels.push_back(std::to_string(j));
        norm += catalan(j - 1) * catalan(m - j);
    }
    for (int k = 0; k < count; ++k) {
        const int j = 2 * k + 1;
        pi[std::size_t(k)] = ratio_as_double(catalan(j - 1) * catalan(m - j), norm);
    }

    std::vector<std::map<std::uint32_t, double>> rows(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const int j = 2 * k + 1;
        double away = 0;
        if (j + 2 <= m) {
            const double p = ratio_as_double(catalan(m - j - 2), 2 * s * catalan(m - j));
            rows[std::size_t(k)][std::uint32_t(k + 1)] = p;
            away += p;
        }
        if (j - 2 >= 1) {
            const double p = ratio_as_double(catalan(j - 3), 2 * s * catalan(j - 1));
            rows[std::size_t(k)][std::uint32_t(k - 1)] = p;
            away += p;
        }
        rows[std::size_t(k)][std::uint32_t(k)] = 1.0 - away;
    }
    return ChainSpec::from_rows(ChainKind::HoppingWalk, m, s, std::move(labels), rows,
                                std::move(pi));
}

PinnedAmplitude pinned_amplitude(int m, int s) {
    require_odd(m);
    (void)s;
    return {ratio_as_double(catalan(m - 1), catalan(m)),
            ratio_as_double(catalan(m), catalan(m + 1))};
}

DefectBasis build_defect_basis(int m, int s, std::size_t dim_cap) {
    require_odd(m);
    if (s < 1) throw std::invalid_argument("build_defect_basis: need s >= 1");

    BigInt expected = 0;
    for (int j = 1; j <= m; j += 2)
        expected += catalan((j - 1) / 2) * catalan((m - j) / 2);
    BigInt colors = 1;
    for (int i = 0; i < (m - 1) / 2; ++i) colors *= s;
    if (expected * colors > BigInt(dim_cap))
        throw std::length_error("build_defect_basis: dimension exceeds cap");

    DefectBasis basis;
    basis.m = m;
    basis.s = s;
    for (int j = 1; j <= m; j += 2) {
        const auto lefts = enumerate_paths(j - 1, s, PathKind::Dyck, j - 1);
        const auto rights = enumerate_paths(m - j, s, PathKind::Dyck, m - j);
        for (const PathWord& l : lefts) {
            for (const PathWord& r : rights) {
                PathWord w;
                w.kind = PathKind::Lattice; // not a Dyck word: one unmatched down
                w.steps = l.steps;
                w.steps.push_back(down(1));
                w.steps.insert(w.steps.end(), r.steps.begin(), r.steps.end());
                basis.words.push_back(std::move(w));
                basis.x_position.push_back(j);
            }
        }
    }
    return basis;
}

DefectSpec build_single_defect(int m, int s, double eps, std::size_t dim_cap) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("build_single_defect: eps must be in [0, 1]");
    DefectSpec spec{build_defect_basis(m, s, dim_cap), eps, SparseSymMatrix(0)};
    const auto& words = spec.basis.words;
    const std::size_t D = words.size();

    std::map<std::string, std::uint32_t> index;
    for (std::size_t i = 0; i < D; ++i) index[to_string(words[i])] = std::uint32_t(i);

    std::vector<double> diag(D, 0.0);
    SparseSymMatrix H(D);
    for (std::size_t i = 0; i < D; ++i) {
        const PathWord& w = words[i];
        const int px = spec.basis.x_position[i] - 1; // 0-based index of the defect step
        for (int j = 0; j + 2 < m; ++j) {
            const StepDir a = w.steps[j].dir, b = w.steps[j + 1].dir, c = w.steps[j + 2].dir;
            const bool uud = a == StepDir::Up && b == StepDir::Up && c == StepDir::Down;
            const bool udu = a == StepDir::Up && b == StepDir::Down && c == StepDir::Up;
            const bool udd = a == StepDir::Up && b == StepDir::Down && c == StepDir::Down;
            const bool dud = a == StepDir::Down && b == StepDir::Up && c == StepDir::Down;
            if (!(uud || udu || udd || dud)) continue;
            // windows whose bystander down step is the defect are the
            // eps-weighted hop terms; everything else is a unit move term
            double weight = 1.0;
            if (udd && px == j + 2) weight = eps;
            if (dud && px == j) weight = eps;
            if (weight == 0.0) continue;
            diag[i] += 0.5 * weight;
            if (uud || dud) {
                PathWord moved = w;
                moved.steps[std::size_t(j)] = w.steps[std::size_t(j) + 1];
                moved.steps[std::size_t(j) + 1] = w.steps[std::size_t(j) + 2];
                moved.steps[std::size_t(j) + 2] = w.steps[std::size_t(j)];
                H.add(i, index.at(to_string(moved)), -0.5 * weight);
            }
        }
        if (s >= 2) {
            for (int p = 0; p + 1 < m; ++p) {
                if (w.steps[p].dir != StepDir::Up || w.steps[p + 1].dir != StepDir::Down) continue;
                if (px == p + 1) continue; // the defect pairs with nothing
                const int k = w.steps[std::size_t(p)].color;
                diag[i] += 0.5 * double(s - 1);
                for (int c = k + 1; c <= s; ++c) {
                    PathWord recolored = w;
                    recolored.steps[std::size_t(p)].color = std::uint8_t(c);
                    recolored.steps[std::size_t(p) + 1].color = std::uint8_t(c);
                    H.add(i, index.at(to_string(recolored)), -0.5);
                }
            }
        }
        if (px == 0) diag[i] += eps; // pinning at site 1
    }
    for (std::size_t i = 0; i < D; ++i)
        if (diag[i] != 0.0) H.add(i, i, diag[i]);
    H.assemble();
    spec.matrix = std::move(H);
    return spec;
}

SparseSymMatrix first_order_matrix(int m, int s, std::size_t dim_cap) {
    // K = defect hops + pinning, as a sparse matrix over the defect basis
    DefectSpec zero = build_single_defect(m, s, 0.0, dim_cap);
    DefectSpec one = build_single_defect(m, s, 1.0, dim_cap);
    const std::size_t D = zero.basis.words.size();
    SparseSymMatrix K(D);
    {
        // H_1 - H_0 isolates the eps-weighted terms
        std::map<std::pair<std::uint32_t, std::uint32_t>, double> diff;
        for (const auto& e : one.matrix.entries()) diff[{e.i, e.j}] += e.v;
        for (const auto& e : zero.matrix.entries()) diff[{e.i, e.j}] -= e.v;
        for (const auto& [key, v] : diff)
            if (v != 0.0) K.add(key.first, key.second, v);
        K.assemble();
    }

    const int count = (m + 1) / 2;
    std::vector<std::vector<double>> omega(static_cast<std::size_t>(count),
                                           std::vector<double>(D, 0.0));
    std::vector<std::size_t> support(static_cast<std::size_t>(count), 0);
    for (std::size_t i = 0; i < D; ++i) ++support[std::size_t((zero.basis.x_position[i] - 1) / 2)];
    for (std::size_t i = 0; i < D; ++i) {
        const auto a = std::size_t((zero.basis.x_position[i] - 1) / 2);
        omega[a][i] = 1.0 / std::sqrt(double(support[a]));
    }

    SparseSymMatrix F(static_cast<std::size_t>(count));
    for (int a = 0; a < count; ++a) {
        const auto Kw = K.matvec(omega[std::size_t(a)]);
        for (int b = a; b < count; ++b) {
            double v = 0;
            for (std::size_t i = 0; i < D; ++i) v += omega[std::size_t(b)][i] * Kw[i];
            if (std::abs(v) > 1e-15) F.add(std::size_t(a), std::size_t(b), v);
        }
    }
    F.assemble();
    return F;
}

SparseSymMatrix odd_block(const SparseSymMatrix& H) {
    const std::size_t m = H.dim();
    const std::size_t count = (m + 1) / 2;
    SparseSymMatrix B(count);
    for (const auto& e : H.entries()) {
        if (e.i % 2 != 0 || e.j % 2 != 0) continue;
        B.add(e.i / 2, e.j / 2, e.v);
    }
    B.assemble();
    return B;
}

double heff_ground_energy(int m, int s) {
    auto spec = build_heff(m, s);
    auto block = odd_block(spec.h_eff);
    EigOptions opts;
    opts.method = EigMethod::Dense;
    return extreme_eigs(block, 1, Which::Smallest, opts).eigenvalues[0];
}

} // namespace fredkin
