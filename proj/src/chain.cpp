#include "fredkin/chain.hpp"

#include "fredkin/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace fredkin {

std::string chain_kind_name(ChainKind kind) {
    switch (kind) {
        case ChainKind::Fredkin: return "fredkin";
        case ChainKind::PeakDisplacing: return "peak_displacing";
        case ChainKind::Lattice: return "lattice";
        case ChainKind::PositiveLattice: return "positive_lattice";
        case ChainKind::HamiltonianMapped: return "hamiltonian_mapped";
        case ChainKind::HoppingWalk: return "hopping_walk";
    }
    return "?";
}

double ChainSpec::prob(std::size_t i, std::size_t j) const {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
        if (col[p] == j) return val[p];
    return 0.0;
}

std::vector<double> ChainSpec::distribute(const std::vector<double>& mu) const {
    std::vector<double> out(num_states(), 0.0);
    for (std::size_t i = 0; i < num_states(); ++i) {
        const double m = mu[i];
        if (m == 0.0) continue;
        for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) out[col[p]] += m * val[p];
    }
    return out;
}

ChainSpec ChainSpec::from_rows(ChainKind kind, int n, int s, std::vector<std::string> labels,
                               const std::vector<std::map<std::uint32_t, double>>& rows,
                               std::vector<double> pi) {
    if (labels.size() != rows.size() || labels.size() != pi.size())
        throw std::invalid_argument("ChainSpec::from_rows: size mismatch");
    ChainSpec c;
    c.kind = kind;
    c.n = n;
    c.s = s;
    c.labels = std::move(labels);
    c.pi = std::move(pi);
    c.row_ptr.assign(rows.size() + 1, 0);
    std::size_t nnz = 0;
    for (const auto& row : rows) nnz += row.size();
    c.col.reserve(nnz);
    c.val.reserve(nnz);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [j, v] : rows[i]) {
            if (v == 0.0) continue;
            c.col.push_back(j);
            c.val.push_back(v);
        }
        c.row_ptr[i + 1] = c.col.size();
    }
    return c;
}

ChainCheck validate_chain(const ChainSpec& chain, double row_tol, double stat_tol,
                          double rev_tol) {
    ChainCheck res;
    const std::size_t n = chain.num_states();
    if (n == 0) {
        res.detail = "empty chain";
        return res;
    }

    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (std::size_t p = chain.row_ptr[i]; p < chain.row_ptr[i + 1]; ++p) {
            sum += chain.val[p];
            res.min_entry = std::min(res.min_entry, chain.val[p]);
        }
        res.row_sum_err = std::max(res.row_sum_err, std::abs(sum - 1.0));
    }

    const std::vector<double> pi_next = chain.distribute(chain.pi);
    for (std::size_t i = 0; i < n; ++i) res.stationarity_err += std::abs(pi_next[i] - chain.pi[i]);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = chain.row_ptr[i]; p < chain.row_ptr[i + 1]; ++p) {
            const std::size_t j = chain.col[p];
            if (j < i) continue; // check each unordered pair once
            const double fwd = chain.pi[i] * chain.val[p];
            const double bwd = chain.pi[j] * chain.prob(j, i);
            res.reversibility_err = std::max(res.reversibility_err, std::abs(fwd - bwd));
        }

    res.ok = res.row_sum_err <= row_tol && res.min_entry >= -1e-15 &&
             res.stationarity_err <= stat_tol && res.reversibility_err <= rev_tol;
    if (!res.ok) {
        res.detail = "row_sum_err=" + std::to_string(res.row_sum_err) +
                     " min_entry=" + std::to_string(res.min_entry) +
                     " stationarity_err=" + std::to_string(res.stationarity_err) +
                     " reversibility_err=" + std::to_string(res.reversibility_err);
    }
    return res;
}

SparseSymMatrix symmetrized_transition(const ChainSpec& chain) {
    const std::size_t n = chain.num_states();
    SparseSymMatrix S(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = chain.row_ptr[i]; p < chain.row_ptr[i + 1]; ++p) {
            const std::size_t j = chain.col[p];
            if (j < i) continue;
            if (j == i) {
                S.add(i, i, chain.val[p]);
            } else {
                // sqrt(pi_i/pi_j) P(i,j) == sqrt(pi_j/pi_i) P(j,i) for
                // reversible chains; average the two float routes.
                const double a = std::sqrt(chain.pi[i] / chain.pi[j]) * chain.val[p];
                const double b = std::sqrt(chain.pi[j] / chain.pi[i]) * chain.prob(j, i);
                S.add(i, j, 0.5 * (a + b));
            }
        }
    }
    S.assemble();
    return S;
}

double spectral_gap(const ChainSpec& chain) {
    const std::size_t n = chain.num_states();
    if (n == 0) throw std::invalid_argument("spectral_gap: empty chain");
    if (n == 1) return std::numeric_limits<double>::infinity();
    SparseSymMatrix S = symmetrized_transition(chain);
    auto spec = extreme_eigs(S, 2, Which::Largest);
    return 1.0 - spec.eigenvalues[0]; // eigenvalues ascending: [lambda_1, lambda_0]
}

MixingCurve tv_mixing_curve(const ChainSpec& chain, std::size_t start, double floor_eps,
                            std::size_t max_steps) {
    const std::size_t n = chain.num_states();
    if (start >= n) throw std::out_of_range("tv_mixing_curve: bad start state");
    std::vector<double> mu(n, 0.0);
    mu[start] = 1.0;
    MixingCurve curve;
    for (std::size_t t = 0; t <= max_steps; ++t) {
        double tv = 0;
        for (std::size_t i = 0; i < n; ++i) tv += std::abs(mu[i] - chain.pi[i]);
        tv *= 0.5;
        curve.tv.push_back(tv);
        if (curve.tau_quarter < 0 && tv <= 0.25) curve.tau_quarter = static_cast<int>(t);
        if (tv <= floor_eps) break;
        mu = chain.distribute(mu);
    }
    return curve;
}

int mixing_time_from(const ChainSpec& chain, std::size_t start, double eps,
                     std::size_t max_steps) {
    if (eps <= 0) throw std::invalid_argument("mixing_time_from: eps must be positive");
    MixingCurve curve = tv_mixing_curve(chain, start, eps, max_steps);
    for (std::size_t t = 0; t < curve.tv.size(); ++t)
        if (curve.tv[t] <= eps) return static_cast<int>(t);
    return -1;
}

double mixing_time_bound(double gap, double pi_x, double eps) {
    return std::log(1.0 / (pi_x * eps)) / gap;
}

ChainSpec induced_chain(const ChainSpec& chain, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw std::invalid_argument("induced_chain: empty subset");
    std::vector<std::size_t> sel(subset);
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    if (sel.back() >= chain.num_states())
        throw std::out_of_range("induced_chain: subset index out of range");

    std::vector<std::int64_t> inv(chain.num_states(), -1);
    for (std::size_t k = 0; k < sel.size(); ++k) inv[sel[k]] = std::int64_t(k);

    std::vector<std::string> labels;
    std::vector<PathWord> states;
    std::vector<double> pi;
    double pi_total = 0;
    for (std::size_t idx : sel) {
        labels.push_back(chain.labels[idx]);
        if (!chain.states.empty()) states.push_back(chain.states[idx]);
        pi.push_back(chain.pi[idx]);
        pi_total += chain.pi[idx];
    }
    for (double& p : pi) p /= pi_total;

    std::vector<std::map<std::uint32_t, double>> rows(sel.size());
    for (std::size_t k = 0; k < sel.size(); ++k) {
        const std::size_t i = sel[k];
        double inside = 0;
        for (std::size_t p = chain.row_ptr[i]; p < chain.row_ptr[i + 1]; ++p) {
            const std::int64_t j = inv[chain.col[p]];
            if (j >= 0 && std::size_t(j) != k) {
                rows[k][std::uint32_t(j)] = chain.val[p];
                inside += chain.val[p];
            }
        }
        rows[k][std::uint32_t(k)] = 1.0 - inside; // off-subset moves idle
    }

    ChainSpec out =
        ChainSpec::from_rows(chain.kind, chain.n, chain.s, std::move(labels), rows, std::move(pi));
    out.states = std::move(states);
    return out;
}

} // namespace fredkin
