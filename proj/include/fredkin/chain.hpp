#pragma once

#include "fredkin/paths.hpp"
#include "fredkin/sparse_matrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fredkin {

enum class ChainKind {
    Fredkin,
    PeakDisplacing,
    Lattice,
    PositiveLattice,
    HamiltonianMapped,
    HoppingWalk,
};

std::string chain_kind_name(ChainKind kind);

/// Finite reversible Markov chain: explicit state list, row-stochastic
/// sparse transition matrix (CSR, not symmetrized) and stationary
/// distribution. Immutable once built.
struct ChainSpec {
    ChainKind kind = ChainKind::Fredkin;
    int n = 0;
    int s = 1;
    std::vector<PathWord> states;     // empty for position-labelled chains
    std::vector<std::string> labels;  // one per state, unique
    std::vector<std::size_t> row_ptr; // CSR over rows
    std::vector<std::uint32_t> col;
    std::vector<double> val;
    std::vector<double> pi;

    std::size_t num_states() const { return labels.size(); }
    double prob(std::size_t i, std::size_t j) const;

    /// mu^T P in one sweep over the stored entries.
    std::vector<double> distribute(const std::vector<double>& mu) const;

    static ChainSpec from_rows(ChainKind kind, int n, int s, std::vector<std::string> labels,
                               const std::vector<std::map<std::uint32_t, double>>& rows,
                               std::vector<double> pi);
};

struct ChainCheck {
    bool ok = false;
    double row_sum_err = 0;       // max |row sum - 1|
    double min_entry = 0;         // most negative entry
    double stationarity_err = 0;  // ||pi P - pi||_1
    double reversibility_err = 0; // max |pi_i P_ij - pi_j P_ji|
    std::string detail;
};

/// Row sums, non-negativity, stationarity and detailed balance.
ChainCheck validate_chain(const ChainSpec& chain, double row_tol = 1e-12,
                          double stat_tol = 1e-10, double rev_tol = 1e-12);

/// D^{1/2} P D^{-1/2} with D = diag(pi); symmetric for reversible chains.
SparseSymMatrix symmetrized_transition(const ChainSpec& chain);

/// 1 - lambda_1 (second largest eigenvalue) via the symmetrized solve.
/// Single-state chains return +infinity.
double spectral_gap(const ChainSpec& chain);

struct MixingCurve {
    std::vector<double> tv;  // tv[t] for t = 0, 1, ...
    int tau_quarter = -1;    // first t with tv <= 1/4 (-1 if never reached)
};

/// Exact distribution evolution from a point mass; stops once the TV
/// distance drops below `floor_eps` or `max_steps` is hit.
MixingCurve tv_mixing_curve(const ChainSpec& chain, std::size_t start, double floor_eps = 1e-4,
                            std::size_t max_steps = 100000);

/// tau_x(eps): first t with Delta_x(t) <= eps (TV distance is monotone).
int mixing_time_from(const ChainSpec& chain, std::size_t start, double eps,
                     std::size_t max_steps = 100000);

/// Eigenvalue upper bound on tau_x(eps): log(1/(pi_x eps)) / gap.
double mixing_time_bound(double gap, double pi_x, double eps);

/// Watched restriction to a subset: transitions leaving the subset become
/// idling. Reversible w.r.t. the restricted stationary distribution.
ChainSpec induced_chain(const ChainSpec& chain, const std::vector<std::size_t>& subset);

} // namespace fredkin
