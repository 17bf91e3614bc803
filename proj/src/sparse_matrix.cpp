#include "fredkin/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fredkin {

void SparseSymMatrix::add(std::size_t i, std::size_t j, double v) {
    if (assembled_) throw std::logic_error("SparseSymMatrix: add after assemble");
    if (i >= dim_ || j >= dim_) throw std::out_of_range("SparseSymMatrix: index out of range");
    if (!std::isfinite(v)) throw std::invalid_argument("SparseSymMatrix: non-finite value");
    if (i > j) std::swap(i, j);
    pending_.push_back({std::uint32_t(i), std::uint32_t(j), v});
}

void SparseSymMatrix::assemble() {
    if (assembled_) return;
    std::sort(pending_.begin(), pending_.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    entries_.reserve(pending_.size());
    for (const Entry& e : pending_) {
        if (!entries_.empty() && entries_.back().i == e.i && entries_.back().j == e.j)
            entries_.back().v += e.v;
        else
            entries_.push_back(e);
    }
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [](const Entry& e) { return e.v == 0.0; }),
                   entries_.end());
    pending_.clear();
    pending_.shrink_to_fit();

    // CSR over the symmetric completion
    row_ptr_.assign(dim_ + 1, 0);
    for (const Entry& e : entries_) {
        ++row_ptr_[e.i + 1];
        if (e.i != e.j) ++row_ptr_[e.j + 1];
    }
    for (std::size_t r = 0; r < dim_; ++r) row_ptr_[r + 1] += row_ptr_[r];
    col_.resize(row_ptr_[dim_]);
    val_.resize(row_ptr_[dim_]);
    std::vector<std::size_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const Entry& e : entries_) {
        col_[cursor[e.i]] = e.j;
        val_[cursor[e.i]++] = e.v;
        if (e.i != e.j) {
            col_[cursor[e.j]] = e.i;
            val_[cursor[e.j]++] = e.v;
        }
    }
    assembled_ = true;
}

double SparseSymMatrix::entry(std::size_t i, std::size_t j) const {
    if (!assembled_) throw std::logic_error("SparseSymMatrix: entry before assemble");
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(entries_.begin(), entries_.end(),
                               Entry{std::uint32_t(i), std::uint32_t(j), 0.0},
                               [](const Entry& a, const Entry& b) {
                                   return a.i != b.i ? a.i < b.i : a.j < b.j;
                               });
    if (it != entries_.end() && it->i == i && it->j == j) return it->v;
    return 0.0;
}

double SparseSymMatrix::norm_inf() const {
    std::vector<double> row_sum(dim_, 0.0);
    for (const Entry& e : entries_) {
        row_sum[e.i] += std::abs(e.v);
        if (e.i != e.j) row_sum[e.j] += std::abs(e.v);
    }
    double m = 0.0;
    for (double r : row_sum) m = std::max(m, r);
    return m;
}

void SparseSymMatrix::matvec(const double* x, double* y) const {
    if (!assembled_) throw std::logic_error("SparseSymMatrix: matvec before assemble");
    for (std::size_t r = 0; r < dim_; ++r) {
        double acc = 0.0;
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += val_[p] * x[col_[p]];
        y[r] = acc;
    }
}

std::vector<double> SparseSymMatrix::matvec(const std::vector<double>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("SparseSymMatrix: dimension mismatch");
    std::vector<double> y(dim_);
    matvec(x.data(), y.data());
    return y;
}

std::vector<std::complex<double>>
SparseSymMatrix::matvec(const std::vector<std::complex<double>>& x) const {
    if (!assembled_) throw std::logic_error("SparseSymMatrix: matvec before assemble");
    if (x.size() != dim_) throw std::invalid_argument("SparseSymMatrix: dimension mismatch");
    std::vector<std::complex<double>> y(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        std::complex<double> acc = 0.0;
        for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += val_[p] * x[col_[p]];
        y[r] = acc;
    }
    return y;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
    if (!assembled_) throw std::logic_error("SparseSymMatrix: to_dense before assemble");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(Eigen::Index(dim_), Eigen::Index(dim_));
    for (const Entry& e : entries_) {
        M(e.i, e.j) = e.v;
        M(e.j, e.i) = e.v;
    }
    return M;
}

SparseSymMatrix SparseSymMatrix::identity(std::size_t dim) {
    SparseSymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.add(i, i, 1.0);
    m.assemble();
    return m;
}

} // namespace fredkin
