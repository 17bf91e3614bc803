#pragma once

#include "fredkin/sparse_matrix.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace fredkin {

/// Extreme eigenpairs of a symmetric matrix. Eigenvalues ascending;
/// residuals hold ||Mv - lambda v|| re-measured with an independent
/// sparse product after the solve.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors; // unit vectors, may be empty
    std::vector<double> residuals;
};

enum class Which { Smallest, Largest };
enum class EigMethod { Auto, Dense, Lanczos };

struct EigOptions {
    EigMethod method = EigMethod::Auto;
    double tol = 1e-10;               // residual target, relative to max(1, ||M||_inf)
    std::size_t dense_threshold = 2000;
    std::size_t max_iters = 0;        // 0 -> 10 * dim
    int max_basis = 220;              // thick-restart basis cap (memory-limited for huge dims)
    std::uint64_t seed = 0x5eed1234abcdef01ULL;
    bool want_vectors = true;
    /// Known exact eigenvectors to project out (e.g. a frustration-free
    /// kernel); the solve then runs in their orthogonal complement.
    std::vector<std::vector<double>> deflate;
};

/// k extreme eigenpairs. Dense direct solve below dense_threshold,
/// thick-restart Lanczos with full reorthogonalization above.
/// Throws std::runtime_error when Lanczos hits the iteration cap with
/// unconverged pairs.
Spectrum extreme_eigs(const SparseSymMatrix& M, std::size_t k, Which which,
                      const EigOptions& opts = {});

/// conj(v)^T M v for a normalized complex vector. Symmetric real M makes
/// the result real; an imaginary residue beyond 1e-12 * scale throws.
double quadratic_form(const SparseSymMatrix& M, const std::vector<std::complex<double>>& v);

} // namespace fredkin
