#include "fredkin/eigensolve.hpp"

#include "fredkin/sampling.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fredkin {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double verified_residual(const SparseSymMatrix& M, double lambda, const std::vector<double>& v) {
    std::vector<double> y = M.matvec(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = y[i] - lambda * v[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

Spectrum dense_solve(const SparseSymMatrix& M, std::size_t k, Which which, bool want_vectors) {
    const auto n = Eigen::Index(M.dim());
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(M.to_dense());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("extreme_eigs: dense solver failed");

    Spectrum out;
    for (std::size_t t = 0; t < k; ++t) {
        const Eigen::Index idx =
            which == Which::Smallest ? Eigen::Index(t) : n - 1 - Eigen::Index(t);
        out.eigenvalues.push_back(solver.eigenvalues()(idx));
        if (want_vectors) {
            std::vector<double> v(static_cast<std::size_t>(n));
            VectorXd::Map(v.data(), n) = solver.eigenvectors().col(idx);
            out.eigenvectors.push_back(std::move(v));
        }
    }
    if (which == Which::Largest) {
        std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
        if (want_vectors) std::reverse(out.eigenvectors.begin(), out.eigenvectors.end());
    }
    return out;
}

// Thick-restart Lanczos with full reorthogonalization inside the active
// basis and optional exact deflation vectors.
class Lanczos {
  public:
    Lanczos(const SparseSymMatrix& M, std::size_t k, Which which, const EigOptions& opts)
        : M_(M), n_(M.dim()), k_(k), which_(which), opts_(opts) {
        // keep the basis below ~400 MB regardless of dimension
        std::size_t basis = std::size_t(std::max(16, opts.max_basis));
        const std::size_t mem_cap = std::max<std::size_t>(3 * k + 12, (400u << 20) / (8 * n_));
        basis = std::min(basis, mem_cap);
        basis = std::min(basis, n_);
        m_ = Eigen::Index(basis);
        if (std::size_t(m_) < 2 * k + 2 && std::size_t(m_) < n_)
            throw std::invalid_argument("extreme_eigs: basis too small for requested pairs");

        for (const auto& d : opts.deflate) {
            if (d.size() != n_) throw std::invalid_argument("extreme_eigs: bad deflation vector");
            VectorXd q = Eigen::Map<const VectorXd>(d.data(), Eigen::Index(n_));
            for (const auto& prev : deflate_) q -= prev.dot(q) * prev;
            const double nrm = q.norm();
            if (nrm > 1e-12) deflate_.push_back(q / nrm);
        }
        scale_ = std::max(1.0, M.norm_inf());
    }

    Spectrum run() {
        V_.resize(Eigen::Index(n_), m_);
        T_ = MatrixXd::Zero(m_, m_);

        Rng rng(opts_.seed);
        VectorXd v = VectorXd::Zero(Eigen::Index(n_));
        for (std::size_t i = 0; i < n_; ++i) v[Eigen::Index(i)] = rng.next_double() - 0.5;
        project_out(v);
        v.normalize();
        V_.col(0) = v;

        Eigen::Index j = 1;
        VectorXd w = VectorXd::Zero(Eigen::Index(n_));
        apply(V_.col(0), w);
        T_(0, 0) = V_.col(0).dot(w);
        w -= T_(0, 0) * V_.col(0);
        double beta = w.norm();

        const std::size_t iter_cap = opts_.max_iters ? opts_.max_iters : 10 * n_ + 200;
        std::size_t iters = 0;

        while (true) {
            // grow the basis to m_
            for (; j < m_; ++j) {
                if (++iters > iter_cap)
                    throw std::runtime_error("extreme_eigs: Lanczos iteration cap reached");
                if (beta < 1e-13 * scale_) {
                    // invariant subspace: restart with a fresh random direction
                    for (std::size_t i = 0; i < n_; ++i)
                        w[Eigen::Index(i)] = rng.next_double() - 0.5;
                    project_out(w);
                    orthogonalize(w, j);
                    const double nw = w.norm();
                    if (nw < 1e-14) break; // space exhausted
                    w /= nw;
                    V_.col(j) = w;
                    T_(j, j - 1) = T_(j - 1, j) = 0.0;
                } else {
                    V_.col(j) = w / beta;
                    T_(j, j - 1) = T_(j - 1, j) = beta;
                }
                apply(V_.col(j), w);
                const double alpha = V_.col(j).dot(w);
                T_(j, j) = alpha;
                orthogonalize(w, j + 1);
                beta = w.norm();
            }

            // Rayleigh-Ritz on the small projected matrix
            const Eigen::Index used = j;
            Eigen::SelfAdjointEigenSolver<MatrixXd> small(T_.topLeftCorner(used, used));
            VectorXd theta = small.eigenvalues();
            MatrixXd S = small.eigenvectors(); // ascending

            // The operator is negated for Which::Largest, so the target
            // pairs always sit at the low end of theta.
            std::vector<Eigen::Index> sel(static_cast<std::size_t>(used));
            for (Eigen::Index i = 0; i < used; ++i) sel[std::size_t(i)] = i;

            bool all_converged = used >= Eigen::Index(k_);
            for (std::size_t t = 0; t < k_ && all_converged; ++t) {
                const double est = std::abs(beta * S(used - 1, sel[t]));
                if (est > opts_.tol * scale_) all_converged = false;
            }
            if (all_converged || std::size_t(used) >= n_ || iters > iter_cap)
                return harvest(theta, S, sel, used, beta, all_converged);

            // thick restart: keep the best `keep` Ritz pairs plus the residual direction
            const Eigen::Index keep =
                std::max<Eigen::Index>(1, std::min<Eigen::Index>(Eigen::Index(2 * k_ + 8), used - 2));
            MatrixXd kept(used, keep);
            for (Eigen::Index t = 0; t < keep; ++t) kept.col(t) = S.col(sel[std::size_t(t)]);

            MatrixXd newV = V_.leftCols(used) * kept; // n x keep
            V_.leftCols(keep) = newV;
            T_.setZero();
            for (Eigen::Index t = 0; t < keep; ++t) {
                T_(t, t) = theta(sel[std::size_t(t)]);
                T_(keep, t) = T_(t, keep) = beta * S(used - 1, sel[std::size_t(t)]);
            }
            // continuation vector
            if (beta < 1e-13 * scale_) {
                for (std::size_t i = 0; i < n_; ++i) w[Eigen::Index(i)] = rng.next_double() - 0.5;
                project_out(w);
                orthogonalize(w, keep);
                w.normalize();
                for (Eigen::Index t = 0; t < keep; ++t) T_(keep, t) = T_(t, keep) = 0.0;
            } else {
                w /= beta;
            }
            V_.col(keep) = w;
            apply(V_.col(keep), w);
            T_(keep, keep) = V_.col(keep).dot(w);
            orthogonalize(w, keep + 1);
            beta = w.norm();
            j = keep + 1;
        }
    }

  private:
    void apply(const Eigen::Ref<const VectorXd>& x, VectorXd& y) {
        M_.matvec(x.data(), y.data());
        if (which_ == Which::Largest) y = -y;
        project_out(y);
    }

    void project_out(VectorXd& x) const {
        for (const VectorXd& q : deflate_) x -= q.dot(x) * q;
    }

    // two-pass classical Gram-Schmidt against V[0..cols) and the deflation
    // space (rounding noise would otherwise re-seed deflated directions)
    void orthogonalize(VectorXd& w, Eigen::Index cols) {
        for (int pass = 0; pass < 2; ++pass) {
            project_out(w);
            VectorXd coeff = V_.leftCols(cols).transpose() * w;
            w -= V_.leftCols(cols) * coeff;
        }
    }

    Spectrum harvest(const VectorXd& theta, const MatrixXd& S,
                     const std::vector<Eigen::Index>& sel, Eigen::Index used, double beta,
                     bool converged) {
        Spectrum out;
        std::vector<std::pair<double, std::vector<double>>> pairs;
        for (std::size_t t = 0; t < k_; ++t) {
            const Eigen::Index idx = sel[t];
            const double lambda = which_ == Which::Smallest ? theta(idx) : -theta(idx);
            VectorXd y = V_.leftCols(used) * S.col(idx);
            y.normalize();
            std::vector<double> v(n_);
            VectorXd::Map(v.data(), Eigen::Index(n_)) = y;
            pairs.emplace_back(lambda, std::move(v));
        }
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [lambda, v] : pairs) {
            out.eigenvalues.push_back(lambda);
            out.eigenvectors.push_back(std::move(v));
        }
        if (!converged) {
            // final true-residual check decides whether the cap was fatal
            for (std::size_t t = 0; t < k_; ++t) {
                const double r = verified_residual(M_, out.eigenvalues[t], out.eigenvectors[t]);
                if (r > 10 * opts_.tol * scale_)
                    throw std::runtime_error(
                        "extreme_eigs: Lanczos failed to converge (residual " + std::to_string(r) +
                        ", estimate beta=" + std::to_string(beta) + ")");
            }
        }
        return out;
    }

    const SparseSymMatrix& M_;
    std::size_t n_, k_;
    Which which_;
    EigOptions opts_;
    Eigen::Index m_ = 0;
    double scale_ = 1.0;
    MatrixXd V_;
    MatrixXd T_;
    std::vector<VectorXd> deflate_;
};

} // namespace

Spectrum extreme_eigs(const SparseSymMatrix& M, std::size_t k, Which which,
                      const EigOptions& opts) {
    if (!M.assembled()) throw std::logic_error("extreme_eigs: matrix not assembled");
    if (k == 0 || k > M.dim()) throw std::invalid_argument("extreme_eigs: bad pair count");

    const bool dense = opts.method == EigMethod::Dense ||
                       (opts.method == EigMethod::Auto && M.dim() < opts.dense_threshold);

    Spectrum out;
    if (dense) {
        if (!opts.deflate.empty())
            throw std::invalid_argument("extreme_eigs: deflation requires the Lanczos path");
        out = dense_solve(M, k, which, opts.want_vectors);
    } else {
        Lanczos solver(M, k, which, opts);
        out = solver.run();
    }

    const double scale = std::max(1.0, M.norm_inf());
    if (!out.eigenvectors.empty()) {
        for (std::size_t t = 0; t < out.eigenvalues.size(); ++t)
            out.residuals.push_back(verified_residual(M, out.eigenvalues[t], out.eigenvectors[t]));
        for (double r : out.residuals)
            if (r > 50 * opts.tol * scale)
                throw std::runtime_error("extreme_eigs: residual check failed: " +
                                         std::to_string(r));
        if (!opts.want_vectors) out.eigenvectors.clear();
    }
    return out;
}

double quadratic_form(const SparseSymMatrix& M, const std::vector<std::complex<double>>& v) {
    const auto y = M.matvec(v);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * y[i];
    const double scale = std::max(1.0, M.norm_inf());
    if (std::abs(acc.imag()) > 1e-12 * scale)
        throw std::runtime_error("quadratic_form: non-real result");
    return acc.real();
}

} // namespace fredkin
