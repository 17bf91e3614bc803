#pragma once

#include "fredkin/chain.hpp"
#include "fredkin/eigensolve.hpp"
#include "fredkin/sparse_matrix.hpp"
#include "fredkin/spin_basis.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fredkin {

/// Projector content of an assembled Hamiltonian, for reports and dumps.
struct ProjectorTerm {
    enum class Kind { MoveUp, MoveDown, Recolor, Cross, Boundary };
    Kind kind;
    int site;   // leftmost site of the projector's window (0-based)
    int c1, c2; // colors, 0 when not applicable
};

/// A frustration-free spin-chain Hamiltonian in the step-string basis,
/// either over the full product space (sector_states empty) or restricted
/// to an explicit list of basis words.
struct HamiltonianSpec {
    SpinBasis basis;
    SparseSymMatrix matrix;
    std::vector<ProjectorTerm> terms;
    std::vector<PathWord> sector_states; // restriction basis when non-empty

    std::size_t dim() const { return matrix.dim(); }
};

/// Peak/step exchange projectors on 3-site windows, recoloring projectors
/// on adjacent pairs, color-mismatch penalties and the height boundary
/// penalties; unique zero mode = the uniform colored-Dyck state.
/// Throws std::length_error when (2s)^{2n} exceeds dim_cap.
HamiltonianSpec build_fredkin(int n, int s, std::size_t dim_cap = std::size_t(1) << 20);

/// Flat-exchange and pair-creation projectors on 2-site windows plus the
/// same mismatch/boundary penalties; unique zero mode = the uniform
/// colored-Motzkin state. Cap applies to (2s+1)^{2n}.
HamiltonianSpec build_motzkin(int n, int s, std::size_t dim_cap = std::size_t(1) << 20);

/// The Hamiltonian restricted to the colored-Dyck basis (dimension s^n C_n):
/// exchange and recoloring terms survive, mismatch and boundary penalties
/// vanish identically there. Equals the corresponding block of
/// build_fredkin entrywise. Requires n >= 1.
HamiltonianSpec build_balanced_sector(int n, int s, std::size_t dim_cap = std::size_t(1) << 22);

/// Uniform superposition over the sector when restricted, else over all
/// valid Dyck/Motzkin words of the full basis.
std::vector<double> uniform_ground_vector(const HamiltonianSpec& spec);

/// Imbalance labels: p unmatched downs, q unmatched ups, and whether any
/// matched pair has mismatched colors.
struct SectorLabel {
    int p = 0;
    int q = 0;
    bool mismatch = false;
    auto operator<=>(const SectorLabel&) const = default;
};

SectorLabel classify_word(const PathWord& w);
std::string to_string(const SectorLabel& label);

struct SectorBlock {
    SectorLabel label;
    std::vector<std::size_t> indices; // into the full basis
    SparseSymMatrix matrix;
    double lambda_min = 0;
    double residual = 0;
};

/// Block decomposition of a full Hamiltonian over (p, q, mismatch) labels.
/// The move terms conserve the label, so off-block entries vanish exactly;
/// any nonzero off-block entry throws. lambda_min is solved per block.
std::vector<SectorBlock> sector_decompose(const HamiltonianSpec& full, double tol = 1e-10);

/// Stochastic matrix I - H / (2 s (n-1)) over the balanced sector; the
/// Hamiltonian gap and the chain gap then satisfy
/// gap(H) = 2 s (n-1) (1 - lambda_1(P)). Requires n >= 2; throws when a
/// transition entry would be negative.
ChainSpec to_markov(const HamiltonianSpec& balanced, int n, int s);

struct GapResult {
    double lambda0 = 0;
    double lambda1 = 0;
    double gap = 0;
    double max_residual = 0;
};

/// Two smallest eigenvalues, residual-verified. `known_kernel` deflates an
/// exact zero mode on the Lanczos path (lambda0 is then reported as 0).
GapResult hamiltonian_gap(const SparseSymMatrix& H,
                          const std::optional<std::vector<double>>& known_kernel = std::nullopt,
                          double tol = 1e-10);

/// max over individual projector terms of ||T state||; zero exactly when
/// the state is a simultaneous zero mode of every term. Full-basis specs
/// only.
double max_term_violation(const HamiltonianSpec& spec, const std::vector<double>& state);

} // namespace fredkin
