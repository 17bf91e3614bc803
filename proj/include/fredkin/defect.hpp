#pragma once

#include "fredkin/bigint.hpp"
#include "fredkin/chain.hpp"
#include "fredkin/sparse_matrix.hpp"

#include <utility>
#include <vector>

namespace fredkin {

/// Next-nearest-neighbor hopping model for a single defect on m sites:
/// H_eff = |1><1| + sum_j Gamma_{j,j+1,j+2}, with the rank-1 hop terms
/// parameterized by alpha_j^2 = C_{m-j-2}/(2s C_{m-j}) and
/// beta_j^2 = C_{j-1}/(2s C_{j+1}).
struct HoppingSpec {
    int m = 0;
    int s = 1;
    std::vector<double> alpha; // alpha_j for j = 1..m-2 (index j-1)
    std::vector<double> beta;  // beta_j likewise
    SparseSymMatrix h_move;    // sum of the hop terms, m x m
    SparseSymMatrix h_eff;     // h_move plus the pinning potential at site 1
};

/// Throws std::invalid_argument unless m is odd and >= 3.
HoppingSpec build_heff(int m, int s);

BigRat alpha2_exact(int m, int s, int j);
BigRat beta2_exact(int m, int s, int j);

/// g_j proportional to sqrt(C_{j-1} C_{m-j}), normalized; the zero mode of
/// h_move (norm uses sum_j C_{j-1} C_{m-j} = C_m).
std::vector<double> analytic_ground_state(int m, int s);

/// alpha_j^2 g_j^2 == beta_j^2 g_{j+2}^2 for every j, checked in exact
/// rational arithmetic; together with positivity this certifies
/// h_move g = 0 exactly.
bool kernel_identity_exact(int m, int s);

/// Random walk mapped from the hop terms, on the odd sublattice the defect
/// actually populates (hops are +-2, so the even sublattice is decoupled):
/// P(j, j+2) = C_{m-j-2}/(2s C_{m-j}), P(j, j-2) = C_{j-3}/(2s C_{j-1}),
/// reversible w.r.t. pi(j) proportional to C_{j-1} C_{m-j}.
ChainSpec mapped_walk(int m, int s);

struct PinnedAmplitude {
    double from_ground_state; // g_1^2 = C_{m-1}/C_m
    double catalan_ratio_next; // C_m/C_{m+1}, reported for comparison
};
PinnedAmplitude pinned_amplitude(int m, int s);

/// Basis of length-m words holding exactly one unmatched down step ("x",
/// color 1) with colored Dyck factors on both sides.
struct DefectBasis {
    int m = 0;
    int s = 1;
    std::vector<PathWord> words;
    std::vector<int> x_position; // 1-based, odd
};

DefectBasis build_defect_basis(int m, int s, std::size_t dim_cap = std::size_t(1) << 20);

/// H_eps on the defect basis: move terms among matched steps at weight 1,
/// defect hops and the site-1 pinning at weight eps. At eps = 0 the defect
/// position is conserved and the kernel has one state per odd position.
struct DefectSpec {
    DefectBasis basis;
    double eps = 0;
    SparseSymMatrix matrix;
};

DefectSpec build_single_defect(int m, int s, double eps,
                               std::size_t dim_cap = std::size_t(1) << 20);

/// Degenerate-perturbation matrix of the defect hops and the pinning term
/// on the eps = 0 kernel states (one per odd position), computed directly
/// from the microscopic model: F_ab = <omega_a| K |omega_b>. This is the
/// matrix lambda_min(H_eps)/eps converges to; its entries are consecutive
/// Catalan ratios, where build_heff carries the two-apart ratios of the
/// closed-form display.
SparseSymMatrix first_order_matrix(int m, int s, std::size_t dim_cap = std::size_t(1) << 20);

/// Smallest eigenvalue of h_eff restricted to the odd sublattice (the even
/// block keeps an exact zero mode and never couples to the defect).
double heff_ground_energy(int m, int s);

/// Odd-sublattice restriction of an m x m hopping matrix.
SparseSymMatrix odd_block(const SparseSymMatrix& H);

} // namespace fredkin
