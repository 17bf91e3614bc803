#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace fredkin {

/// Real symmetric sparse matrix. Entries are accumulated as (i, j, value)
/// coordinates (stored once with i <= j), then assemble() merges duplicates
/// and freezes the matrix; all queries and products require an assembled
/// matrix. Immutable after assembly.
class SparseSymMatrix {
  public:
    struct Entry {
        std::uint32_t i, j; // i <= j
        double v;
    };

    SparseSymMatrix() : dim_(0) {}
    explicit SparseSymMatrix(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    bool assembled() const { return assembled_; }

    void add(std::size_t i, std::size_t j, double v);
    void assemble();

    /// Upper-triangle coordinate list, sorted by (i, j), duplicate-free.
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    double entry(std::size_t i, std::size_t j) const;

    /// Max absolute row sum (includes the mirrored lower triangle).
    double norm_inf() const;

    void matvec(const double* x, double* y) const;
    std::vector<double> matvec(const std::vector<double>& x) const;
    std::vector<std::complex<double>> matvec(const std::vector<std::complex<double>>& x) const;

    Eigen::MatrixXd to_dense() const;

    static SparseSymMatrix identity(std::size_t dim);

  private:
    std::size_t dim_;
    bool assembled_ = false;
    std::vector<Entry> pending_;
    std::vector<Entry> entries_;
    // CSR over the symmetric completion, built at assembly
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
};

} // namespace fredkin
