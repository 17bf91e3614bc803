#include "fredkin/hamiltonian.hpp"

#include "fredkin/enumerate.hpp"
#include "fredkin/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fredkin {

namespace {

void record_window_terms(std::vector<ProjectorTerm>& terms, int window, int s, bool fredkin) {
    for (int k1 = 1; k1 <= s; ++k1)
        for (int k2 = 1; k2 <= s; ++k2) {
            terms.push_back({ProjectorTerm::Kind::MoveUp, window, k1, k2});
            terms.push_back({ProjectorTerm::Kind::MoveDown, window, k1, k2});
            if (!fredkin && k1 == k2)
                break; // Motzkin windows carry one color index per move
        }
}

void record_pair_terms(std::vector<ProjectorTerm>& terms, int pair, int s, bool fredkin) {
    if (fredkin) {
        for (int k1 = 1; k1 <= s; ++k1)
            for (int k2 = k1 + 1; k2 <= s; ++k2)
                terms.push_back({ProjectorTerm::Kind::Recolor, pair, k1, k2});
    } else {
        for (int k = 1; k <= s; ++k)
            terms.push_back({ProjectorTerm::Kind::Recolor, pair, k, k});
    }
    for (int k1 = 1; k1 <= s; ++k1)
        for (int k2 = 1; k2 <= s; ++k2)
            if (k1 != k2) terms.push_back({ProjectorTerm::Kind::Cross, pair, k1, k2});
}

} // namespace

HamiltonianSpec build_fredkin(int n, int s, std::size_t dim_cap) {
    SpinBasis basis(ChainModel::Fredkin, n, s);
    if (basis.dim() > dim_cap)
        throw std::length_error("build_fredkin: dimension " + std::to_string(basis.dim()) +
                                " exceeds cap " + std::to_string(dim_cap));
    const std::size_t D = basis.dim();
    const int L = basis.sites();

    std::vector<double> diag(D, 0.0);
    SparseSymMatrix H(D);

    // 3-site exchange windows
    for (int j = 0; j + 2 < L; ++j) {
        const std::size_t pj = basis.place_value(j);
        const std::size_t pj1 = basis.place_value(j + 1);
        const std::size_t pj2 = basis.place_value(j + 2);
        for (std::size_t i = 0; i < D; ++i) {
            const int a = basis.code_at(i, j), b = basis.code_at(i, j + 1),
                      c = basis.code_at(i, j + 2);
            const bool au = basis.code_is_up(a), bu = basis.code_is_up(b),
                       cu = basis.code_is_up(c);
            if (au && bu && !cu) { // u u d, peak on the right two sites
                if (basis.color_of(c) != basis.color_of(b)) continue;
                diag[i] += 0.5;
                // partner: u^{k2} d^{k2} u^{k1}
                const std::size_t partner = i + std::size_t(b - a) * pj +
                                            (std::size_t(c) - std::size_t(b)) * pj1 -
                                            (std::size_t(c) - std::size_t(a)) * pj2;
                H.add(i, partner, -0.5);
            } else if (au && !bu && cu) { // u d u
                if (basis.color_of(b) != basis.color_of(a)) continue;
                diag[i] += 0.5;
            } else if (au && !bu && !cu) { // u d d
                if (basis.color_of(b) != basis.color_of(a)) continue;
                diag[i] += 0.5;
            } else if (!au && bu && !cu) { // d u d, peak on the right two sites
                if (basis.color_of(c) != basis.color_of(b)) continue;
                diag[i] += 0.5;
                // partner: u^{k2} d^{k2} d^{k1}
                const std::size_t partner = i + std::size_t(b - a) * pj +
                                            (std::size_t(c) - std::size_t(b)) * pj1 -
                                            (std::size_t(c) - std::size_t(a)) * pj2;
                H.add(i, partner, -0.5);
            }
        }
    }

    // 2-site recoloring and mismatch penalties, boundary penalties
    for (int p = 0; p + 1 < L; ++p) {
        const std::size_t pp = basis.place_value(p);
        const std::size_t pp1 = basis.place_value(p + 1);
        for (std::size_t i = 0; i < D; ++i) {
            const int a = basis.code_at(i, p), b = basis.code_at(i, p + 1);
            if (!basis.code_is_up(a) || !basis.code_is_down(b)) continue;
            const int ka = basis.color_of(a), kb = basis.color_of(b);
            if (ka != kb) {
                diag[i] += 1.0; // mismatched pair
                continue;
            }
            if (s >= 2) {
                diag[i] += 0.5 * double(s - 1);
                for (int c = ka + 1; c <= s; ++c) {
                    const std::size_t partner = i + std::size_t(c - ka) * pp +
                                                std::size_t(c - ka) * pp1;
                    H.add(i, partner, -0.5);
                }
            }
        }
    }
    for (std::size_t i = 0; i < D; ++i) {
        if (basis.code_is_down(basis.code_at(i, 0))) diag[i] += 1.0;
        if (basis.code_is_up(basis.code_at(i, L - 1))) diag[i] += 1.0;
    }

    for (std::size_t i = 0; i < D; ++i)
        if (diag[i] != 0.0) H.add(i, i, diag[i]);
    H.assemble();

    HamiltonianSpec spec{std::move(basis), std::move(H), {}, {}};
    for (int j = 0; j + 2 < L; ++j) record_window_terms(spec.terms, j, s, true);
    for (int p = 0; p + 1 < L; ++p) record_pair_terms(spec.terms, p, s, true);
    spec.terms.push_back({ProjectorTerm::Kind::Boundary, 0, 0, 0});
    spec.terms.push_back({ProjectorTerm::Kind::Boundary, L - 1, 0, 0});
    return spec;
}

HamiltonianSpec build_motzkin(int n, int s, std::size_t dim_cap) {
    SpinBasis basis(ChainModel::Motzkin, n, s);
    if (basis.dim() > dim_cap)
        throw std::length_error("build_motzkin: dimension " + std::to_string(basis.dim()) +
                                " exceeds cap " + std::to_string(dim_cap));
    const std::size_t D = basis.dim();
    const int L = basis.sites();

    std::vector<double> diag(D, 0.0);
    SparseSymMatrix H(D);

    for (int j = 0; j + 1 < L; ++j) {
        const std::size_t pj = basis.place_value(j);
        const std::size_t pj1 = basis.place_value(j + 1);
        for (std::size_t i = 0; i < D; ++i) {
            const int a = basis.code_at(i, j), b = basis.code_at(i, j + 1);
            const bool af = basis.code_is_flat(a), bf = basis.code_is_flat(b);
            if (af && bf) {
                // pair creation |00> -> |u^k d^k>
                diag[i] += 0.5 * double(s);
                for (int k = 1; k <= s; ++k) {
                    const std::size_t partner =
                        i + (std::size_t(basis.up_code(k)) - std::size_t(a)) * pj +
                        (std::size_t(basis.down_code(k)) - std::size_t(b)) * pj1;
                    H.add(i, partner, -0.5);
                }
            } else if (af && basis.code_is_up(b)) { // 0 u^k <-> u^k 0
                diag[i] += 0.5;
                const std::size_t partner =
                    i + (std::size_t(b) - std::size_t(a)) * pj - (std::size_t(b) - std::size_t(a)) * pj1;
                H.add(i, partner, -0.5);
            } else if (basis.code_is_up(a) && bf) {
                diag[i] += 0.5;
            } else if (af && basis.code_is_down(b)) { // 0 d^k <-> d^k 0
                diag[i] += 0.5;
                const std::size_t partner =
                    i + (std::size_t(b) - std::size_t(a)) * pj - (std::size_t(b) - std::size_t(a)) * pj1;
                H.add(i, partner, -0.5);
            } else if (basis.code_is_down(a) && bf) {
                diag[i] += 0.5;
            } else if (basis.code_is_up(a) && basis.code_is_down(b)) {
                if (basis.color_of(a) == basis.color_of(b)) diag[i] += 0.5; // pair-creation image
                else diag[i] += 1.0;                                        // mismatch
            }
        }
    }
    for (std::size_t i = 0; i < D; ++i) {
        if (basis.code_is_down(basis.code_at(i, 0))) diag[i] += 1.0;
        if (basis.code_is_up(basis.code_at(i, L - 1))) diag[i] += 1.0;
    }

    for (std::size_t i = 0; i < D; ++i)
        if (diag[i] != 0.0) H.add(i, i, diag[i]);
    H.assemble();

    HamiltonianSpec spec{std::move(basis), std::move(H), {}, {}};
    for (int j = 0; j + 1 < L; ++j) {
        record_window_terms(spec.terms, j, s, false);
        record_pair_terms(spec.terms, j, s, false);
    }
    spec.terms.push_back({ProjectorTerm::Kind::Boundary, 0, 0, 0});
    spec.terms.push_back({ProjectorTerm::Kind::Boundary, L - 1, 0, 0});
    return spec;
}

HamiltonianSpec build_balanced_sector(int n, int s, std::size_t dim_cap) {
    BigInt count = catalan(n);
    for (int i = 0; i < n; ++i) count *= s;
    if (count > BigInt(dim_cap))
        throw std::length_error("build_balanced_sector: dimension " + count.str() +
                                " exceeds cap " + std::to_string(dim_cap));

    auto states = enumerate_paths(2 * n, s, PathKind::Dyck, 2 * n);
    const std::size_t D = states.size();
    auto index_of = [&states](const PathWord& w) {
        const auto it = std::lower_bound(states.begin(), states.end(), w, word_less);
        return std::size_t(it - states.begin());
    };

    std::vector<double> diag(D, 0.0);
    SparseSymMatrix H(D);
    for (std::size_t i = 0; i < D; ++i) {
        const PathWord& w = states[i];
        // exchange windows: every matched pattern contributes 1/2 on the
        // diagonal; the peak-on-the-right forms carry the off-diagonal
        for (int j = 0; j + 2 < 2 * n; ++j) {
            const StepDir a = w.steps[j].dir, b = w.steps[j + 1].dir, c = w.steps[j + 2].dir;
            const bool uud = a == StepDir::Up && b == StepDir::Up && c == StepDir::Down;
            const bool udu = a == StepDir::Up && b == StepDir::Down && c == StepDir::Up;
            const bool udd = a == StepDir::Up && b == StepDir::Down && c == StepDir::Down;
            const bool dud = a == StepDir::Down && b == StepDir::Up && c == StepDir::Down;
            if (!(uud || udu || udd || dud)) continue;
            diag[i] += 0.5;
            if (uud || dud) {
                PathWord moved = w;
                moved.steps[j] = w.steps[j + 1];
                moved.steps[j + 1] = w.steps[j + 2];
                moved.steps[j + 2] = w.steps[j];
                H.add(i, index_of(moved), -0.5);
            }
        }
        if (s >= 2) {
            for (int p : peaks(w)) {
                const int k = w.steps[p - 1].color;
                diag[i] += 0.5 * double(s - 1);
                for (int c = k + 1; c <= s; ++c) {
                    PathWord recolored = w;
                    recolored.steps[p - 1].color = std::uint8_t(c);
                    recolored.steps[p].color = std::uint8_t(c);
                    H.add(i, index_of(recolored), -0.5);
                }
            }
        }
    }
    for (std::size_t i = 0; i < D; ++i)
        if (diag[i] != 0.0) H.add(i, i, diag[i]);
    H.assemble();

    HamiltonianSpec spec{SpinBasis(ChainModel::Fredkin, n, s), std::move(H), {}, std::move(states)};
    for (int j = 0; j + 2 < 2 * n; ++j) record_window_terms(spec.terms, j, s, true);
    if (s >= 2)
        for (int p = 0; p + 1 < 2 * n; ++p) record_pair_terms(spec.terms, p, s, true);
    return spec;
}

std::vector<double> uniform_ground_vector(const HamiltonianSpec& spec) {
    std::vector<double> v(spec.dim(), 0.0);
    if (!spec.sector_states.empty()) {
        const double a = 1.0 / std::sqrt(double(spec.sector_states.size()));
        std::fill(v.begin(), v.end(), a);
        return v;
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < spec.dim(); ++i)
        if (is_valid(spec.basis.word_at(i))) support.push_back(i);
    const double a = 1.0 / std::sqrt(double(support.size()));
    for (std::size_t i : support) v[i] = a;
    return v;
}

SectorLabel classify_word(const PathWord& w) {
    SectorLabel label;
    std::vector<std::uint8_t> stack;
    for (const Step& st : w.steps) {
        if (st.dir == StepDir::Up) {
            stack.push_back(st.color);
        } else if (st.dir == StepDir::Down) {
            if (stack.empty()) {
                ++label.p;
            } else {
                if (stack.back() != st.color) label.mismatch = true;
                stack.pop_back();
            }
        }
    }
    label.q = int(stack.size());
    return label;
}

std::string to_string(const SectorLabel& label) {
    return "p" + std::to_string(label.p) + "_q" + std::to_string(label.q) +
           (label.mismatch ? "_mismatch" : "");
}

std::vector<SectorBlock> sector_decompose(const HamiltonianSpec& full, double tol) {
    const std::size_t D = full.dim();
    if (!full.sector_states.empty())
        throw std::invalid_argument("sector_decompose: expects a full-basis Hamiltonian");

    std::vector<SectorLabel> labels(D);
    std::map<SectorLabel, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < D; ++i) {
        labels[i] = classify_word(full.basis.word_at(i));
        groups[labels[i]].push_back(i);
    }

    std::map<SectorLabel, std::size_t> block_of;
    std::vector<SectorBlock> blocks;
    std::vector<std::uint32_t> pos_in_block(D);
    for (auto& [label, indices] : groups) {
        block_of[label] = blocks.size();
        for (std::size_t k = 0; k < indices.size(); ++k)
            pos_in_block[indices[k]] = std::uint32_t(k);
        blocks.push_back({label, indices, SparseSymMatrix(indices.size()), 0.0, 0.0});
    }

    for (const auto& e : full.matrix.entries()) {
        if (labels[e.i] != labels[e.j]) {
            if (e.v != 0.0)
                throw std::runtime_error("sector_decompose: nonzero entry between sectors " +
                                         to_string(labels[e.i]) + " and " + to_string(labels[e.j]));
            continue;
        }
        blocks[block_of[labels[e.i]]].matrix.add(pos_in_block[e.i], pos_in_block[e.j], e.v);
    }

    for (SectorBlock& block : blocks) {
        block.matrix.assemble();
        EigOptions opts;
        opts.tol = tol;
        auto spec = extreme_eigs(block.matrix, 1, Which::Smallest, opts);
        block.lambda_min = spec.eigenvalues[0];
        block.residual = spec.residuals.empty() ? 0.0 : spec.residuals[0];
    }
    return blocks;
}

ChainSpec to_markov(const HamiltonianSpec& balanced, int n, int s) {
    if (n < 2) throw std::invalid_argument("to_markov: need n >= 2");
    if (balanced.sector_states.empty())
        throw std::invalid_argument("to_markov: expects a balanced-sector Hamiltonian");
    const std::size_t D = balanced.dim();
    const double beta = 1.0 / (2.0 * double(s) * double(n - 1));

    std::vector<std::map<std::uint32_t, double>> rows(D);
    for (std::size_t i = 0; i < D; ++i) rows[i][std::uint32_t(i)] = 1.0;
    for (const auto& e : balanced.matrix.entries()) {
        const double t = -beta * e.v;
        rows[e.i][e.j] += t;
        if (e.i != e.j) rows[e.j][e.i] += t;
    }
    for (std::size_t i = 0; i < D; ++i)
        for (const auto& [j, v] : rows[i])
            if (v < 0.0)
                throw std::runtime_error("to_markov: negative transition entry at (" +
                                         std::to_string(i) + "," + std::to_string(j) +
                                         "): " + std::to_string(v));

    std::vector<std::string> labels;
    labels.reserve(D);
    for (const PathWord& w : balanced.sector_states) labels.push_back(to_string(w));
    std::vector<double> pi(D, 1.0 / double(D));
    ChainSpec chain =
        ChainSpec::from_rows(ChainKind::HamiltonianMapped, n, s, std::move(labels), rows, std::move(pi));
    chain.states = balanced.sector_states;
    return chain;
}

double max_term_violation(const HamiltonianSpec& spec, const std::vector<double>& state) {
    if (!spec.sector_states.empty())
        throw std::invalid_argument("max_term_violation: expects a full-basis Hamiltonian");
    const SpinBasis& basis = spec.basis;
    const std::size_t D = basis.dim();
    if (state.size() != D) throw std::invalid_argument("max_term_violation: state size mismatch");
    const int L = basis.sites();
    const bool motzkin = basis.model() == ChainModel::Motzkin;
    double worst2 = 0.0;

    auto scan_pattern = [&](auto&& classify) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < D; ++i) {
            double amp = 0.0;
            if (classify(i, amp)) norm2 += amp * amp;
        }
        worst2 = std::max(worst2, norm2);
    };

    if (!motzkin) {
        for (int j = 0; j + 2 < L; ++j) {
            for (int k1 = 1; k1 <= basis.s(); ++k1)
                for (int k2 = 1; k2 <= basis.s(); ++k2) {
                    // |u^{k1} u^{k2} d^{k2}> - |u^{k2} d^{k2} u^{k1}>
                    scan_pattern([&](std::size_t i, double& amp) {
                        if (basis.code_at(i, j) != basis.up_code(k1) ||
                            basis.code_at(i, j + 1) != basis.up_code(k2) ||
                            basis.code_at(i, j + 2) != basis.down_code(k2))
                            return false;
                        const std::size_t partner =
                            i +
                            std::size_t(basis.up_code(k2) - basis.up_code(k1)) * basis.place_value(j) +
                            (std::size_t(basis.down_code(k2)) - std::size_t(basis.up_code(k2))) *
                                basis.place_value(j + 1) -
                            (std::size_t(basis.down_code(k2)) - std::size_t(basis.up_code(k1))) *
                                basis.place_value(j + 2);
                        amp = (state[i] - state[partner]) / std::sqrt(2.0);
                        return true;
                    });
                    // |d^{k1} u^{k2} d^{k2}> - |u^{k2} d^{k2} d^{k1}>
                    scan_pattern([&](std::size_t i, double& amp) {
                        if (basis.code_at(i, j) != basis.down_code(k1) ||
                            basis.code_at(i, j + 1) != basis.up_code(k2) ||
                            basis.code_at(i, j + 2) != basis.down_code(k2))
                            return false;
                        const std::size_t partner =
                            i +
                            std::size_t(basis.up_code(k2) - basis.down_code(k1)) * basis.place_value(j) +
                            (std::size_t(basis.down_code(k2)) - std::size_t(basis.up_code(k2))) *
                                basis.place_value(j + 1) -
                            (std::size_t(basis.down_code(k2)) - std::size_t(basis.down_code(k1))) *
                                basis.place_value(j + 2);
                        amp = (state[i] - state[partner]) / std::sqrt(2.0);
                        return true;
                    });
                }
        }
        for (int p = 0; p + 1 < L; ++p) {
            for (int k1 = 1; k1 <= basis.s(); ++k1) {
                for (int k2 = k1 + 1; k2 <= basis.s(); ++k2) {
                    // recoloring |u^{k1} d^{k1}> - |u^{k2} d^{k2}>
                    scan_pattern([&](std::size_t i, double& amp) {
                        if (basis.code_at(i, p) != basis.up_code(k1) ||
                            basis.code_at(i, p + 1) != basis.down_code(k1))
                            return false;
                        const std::size_t partner =
                            i + std::size_t(k2 - k1) * basis.place_value(p) +
                            std::size_t(k2 - k1) * basis.place_value(p + 1);
                        amp = (state[i] - state[partner]) / std::sqrt(2.0);
                        return true;
                    });
                }
                for (int k2 = 1; k2 <= basis.s(); ++k2) {
                    if (k1 == k2) continue;
                    scan_pattern([&](std::size_t i, double& amp) {
                        if (basis.code_at(i, p) != basis.up_code(k1) ||
                            basis.code_at(i, p + 1) != basis.down_code(k2))
                            return false;
                        amp = state[i];
                        return true;
                    });
                }
            }
        }
    } else {
        const int flat_code = basis.s();
        for (int j = 0; j + 1 < L; ++j) {
            for (int k = 1; k <= basis.s(); ++k) {
                // |0 u^k> - |u^k 0>
                scan_pattern([&](std::size_t i, double& amp) {
                    if (basis.code_at(i, j) != flat_code ||
                        basis.code_at(i, j + 1) != basis.up_code(k))
                        return false;
                    const std::size_t partner =
                        i + std::size_t(basis.up_code(k) - flat_code) * basis.place_value(j) +
                        std::size_t(flat_code - basis.up_code(k)) * basis.place_value(j + 1);
                    amp = (state[i] - state[partner]) / std::sqrt(2.0);
                    return true;
                });
                // |0 d^k> - |d^k 0>
                scan_pattern([&](std::size_t i, double& amp) {
                    if (basis.code_at(i, j) != flat_code ||
                        basis.code_at(i, j + 1) != basis.down_code(k))
                        return false;
                    const std::size_t partner =
                        i + (std::size_t(basis.down_code(k)) - std::size_t(flat_code)) * basis.place_value(j) -
                        (std::size_t(basis.down_code(k)) - std::size_t(flat_code)) * basis.place_value(j + 1);
                    amp = (state[i] - state[partner]) / std::sqrt(2.0);
                    return true;
                });
                // |0 0> - |u^k d^k>
                scan_pattern([&](std::size_t i, double& amp) {
                    if (basis.code_at(i, j) != flat_code || basis.code_at(i, j + 1) != flat_code)
                        return false;
                    const std::size_t partner =
                        i + std::size_t(basis.up_code(k) - flat_code) * basis.place_value(j) +
                        (std::size_t(basis.down_code(k)) - std::size_t(flat_code)) * basis.place_value(j + 1);
                    amp = (state[i] - state[partner]) / std::sqrt(2.0);
                    return true;
                });
            }
            for (int k1 = 1; k1 <= basis.s(); ++k1)
                for (int k2 = 1; k2 <= basis.s(); ++k2) {
                    if (k1 == k2) continue;
                    scan_pattern([&](std::size_t i, double& amp) {
                        if (basis.code_at(i, j) != basis.up_code(k1) ||
                            basis.code_at(i, j + 1) != basis.down_code(k2))
                            return false;
                        amp = state[i];
                        return true;
                    });
                }
        }
    }

    // boundary penalties
    scan_pattern([&](std::size_t i, double& amp) {
        if (!basis.code_is_down(basis.code_at(i, 0))) return false;
        amp = state[i];
        return true;
    });
    scan_pattern([&](std::size_t i, double& amp) {
        if (!basis.code_is_up(basis.code_at(i, L - 1))) return false;
        amp = state[i];
        return true;
    });

    return std::sqrt(worst2);
}

GapResult hamiltonian_gap(const SparseSymMatrix& H,
                          const std::optional<std::vector<double>>& known_kernel, double tol) {
    if (H.dim() < 2) throw std::invalid_argument("hamiltonian_gap: need dimension >= 2");
    GapResult res;
    EigOptions opts;
    opts.tol = tol;
    if (H.dim() < opts.dense_threshold || !known_kernel) {
        auto spec = extreme_eigs(H, 2, Which::Smallest, opts);
        res.lambda0 = spec.eigenvalues[0];
        res.lambda1 = spec.eigenvalues[1];
        res.max_residual = std::max(spec.residuals[0], spec.residuals[1]);
    } else {
        opts.method = EigMethod::Lanczos;
        opts.deflate = {*known_kernel};
        auto spec = extreme_eigs(H, 1, Which::Smallest, opts);
        res.lambda0 = 0.0;
        res.lambda1 = spec.eigenvalues[0];
        res.max_residual = spec.residuals[0];
    }
    res.gap = res.lambda1 - res.lambda0;
    return res;
}

} // namespace fredkin
