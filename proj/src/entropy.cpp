#include "fredkin/entropy.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fredkin {

namespace {

double entropy_bits_of(const std::vector<double>& p) {
    double S = 0;
    for (double pi : p)
        if (pi > 1e-300) S -= pi * std::log2(pi);
    return S;
}

} // namespace

EntropyResult half_chain_entropy(const std::vector<double>& state, const SpinBasis& basis,
                                 double rank_tol) {
    if (state.size() != basis.dim())
        throw std::invalid_argument("half_chain_entropy: state size mismatch");
    const int n = basis.n();
    std::size_t half = 1;
    for (int i = 0; i < n; ++i) half *= std::size_t(basis.local_dim());

    // big-endian site order: index = left * d^n + right
    const auto hh = Eigen::Index(half);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(hh, hh);
    for (std::size_t l = 0; l < half; ++l)
        for (std::size_t r = 0; r < half; ++r)
            M(Eigen::Index(l), Eigen::Index(r)) = state[l * half + r];

    Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();

    EntropyResult res;
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double sq = sv(i) * sv(i);
        if (sv(i) > rank_tol * top) ++res.schmidt_rank;
        if (sq > 1e-300) res.schmidt_squares.push_back(sq);
    }
    std::sort(res.schmidt_squares.rbegin(), res.schmidt_squares.rend());
    res.entropy_bits = entropy_bits_of(res.schmidt_squares);
    return res;
}

EntropyResult uniform_state_entropy(int n, int s, ChainModel model) {
    if (n < 1 || s < 1) throw std::invalid_argument("uniform_state_entropy: bad arguments");
    // W[h] = number of nonnegative length-n prefixes ending at height h,
    // weighted s per pair matched inside the prefix; the h colors held open
    // at the cut are fixed by the interface signature. Suffix counts match
    // by mirror symmetry.
    std::vector<double> W(std::size_t(n) + 1, 0.0);
    W[0] = 1.0;
    for (int step = 0; step < n; ++step) {
        std::vector<double> next(std::size_t(n) + 1, 0.0);
        for (int h = 0; h <= n; ++h) {
            if (W[h] == 0.0) continue;
            if (h + 1 <= n) next[h + 1] += W[h];
            if (h >= 1) next[h - 1] += W[h] * double(s);
            if (model == ChainModel::Motzkin) next[h] += W[h];
        }
        W = std::move(next);
    }

    double norm = 0;
    double s_pow = 1;
    for (int h = 0; h <= n; ++h) {
        norm += W[h] * W[h] * s_pow;
        s_pow *= double(s);
    }

    EntropyResult res;
    s_pow = 1;
    for (int h = 0; h <= n; ++h) {
        if (W[h] > 0.0) {
            res.schmidt_rank += (long long)std::llround(s_pow);
            const double p = W[h] * W[h] / norm; // each of the s^h stacks
            for (long long c = 0; c < (long long)std::llround(s_pow); ++c)
                res.schmidt_squares.push_back(p);
        }
        s_pow *= double(s);
    }
    std::sort(res.schmidt_squares.rbegin(), res.schmidt_squares.rend());
    res.entropy_bits = entropy_bits_of(res.schmidt_squares);
    return res;
}

double motzkin_entropy_asymptotic(int n, int s) {
    const double sigma = std::sqrt(double(s)) / (2.0 * std::sqrt(double(s)) + 1.0);
    const double gamma = 0.5772156649015328606;
    return 2.0 * std::log2(double(s)) * std::sqrt(2.0 * sigma / M_PI) * std::sqrt(double(n)) +
           0.5 * std::log2(2.0 * M_PI * sigma * double(n)) + (gamma - 0.5) * std::log2(M_E);
}

} // namespace fredkin
