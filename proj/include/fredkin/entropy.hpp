#pragma once

#include "fredkin/spin_basis.hpp"

#include <vector>

namespace fredkin {

struct EntropyResult {
    double entropy_bits = 0;
    long long schmidt_rank = 0;
    std::vector<double> schmidt_squares; // descending, sums to 1
};

/// Schmidt decomposition of a normalized state across the middle cut,
/// by dense SVD of the d^n x d^n coefficient matrix.
EntropyResult half_chain_entropy(const std::vector<double>& state, const SpinBasis& basis,
                                 double rank_tol = 1e-10);

/// Same quantities for the uniform Dyck/Motzkin superposition state,
/// computed from interface signatures (height + open-color stack) without
/// materializing the state. Exact for any n.
EntropyResult uniform_state_entropy(int n, int s, ChainModel model);

/// Closed-form large-n half-chain entropy of the colored Motzkin state,
/// in bits; reported alongside measured values, never asserted.
double motzkin_entropy_asymptotic(int n, int s);

} // namespace fredkin
