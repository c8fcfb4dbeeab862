#include "subdiff/csr_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace subdiff {

CsrMatrix CsrMatrix::from_adjacency(int n, const std::vector<std::vector<int>>& adjacency) {
    if (n < 0 || static_cast<int>(adjacency.size()) != n)
        throw std::invalid_argument("CsrMatrix::from_adjacency: adjacency size mismatch");

    CsrMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);

    std::vector<int> cols;
    for (int i = 0; i < n; ++i) {
        cols.assign(adjacency[static_cast<std::size_t>(i)].begin(), adjacency[static_cast<std::size_t>(i)].end());
        cols.push_back(i);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        for (int c : cols) {
            if (c < 0 || c >= n) throw std::invalid_argument("CsrMatrix::from_adjacency: column out of range");
            m.col_.push_back(c);
        }
        m.row_ptr_[static_cast<std::size_t>(i) + 1] = static_cast<int>(m.col_.size());
    }
    m.val_.assign(m.col_.size(), 0.0);
    return m;
}

int CsrMatrix::find(int i, int j) const {
    const int lo = row_ptr_[static_cast<std::size_t>(i)];
    const int hi = row_ptr_[static_cast<std::size_t>(i) + 1];
    const auto first = col_.begin() + lo;
    const auto last = col_.begin() + hi;
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return -1;
    return static_cast<int>(it - col_.begin());
}

void CsrMatrix::add(int i, int j, double v) {
    const int k = find(i, j);
    if (k < 0) throw std::out_of_range("CsrMatrix::add: entry outside the sparsity pattern");
    val_[static_cast<std::size_t>(k)] += v;
}

double CsrMatrix::coeff(int i, int j) const {
    const int k = find(i, j);
    return k < 0 ? 0.0 : val_[static_cast<std::size_t>(k)];
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("CsrMatrix::multiply: size mismatch");
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int k = row_ptr_[static_cast<std::size_t>(i)]; k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k)
            acc += val_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_[static_cast<std::size_t>(k)])];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

bool CsrMatrix::same_pattern(const CsrMatrix& other) const {
    return n_ == other.n_ && row_ptr_ == other.row_ptr_ && col_ == other.col_;
}

void CsrMatrix::assign_combination(double c1, const CsrMatrix& A, double c2, const CsrMatrix& B) {
    if (!A.same_pattern(B)) throw std::invalid_argument("CsrMatrix::assign_combination: pattern mismatch");
    n_ = A.n_;
    row_ptr_ = A.row_ptr_;
    col_ = A.col_;
    val_.resize(A.val_.size());
    for (std::size_t k = 0; k < val_.size(); ++k) val_[k] = c1 * A.val_[k] + c2 * B.val_[k];
}

void CsrMatrix::add_scaled(double c, const CsrMatrix& A) {
    if (!same_pattern(A)) throw std::invalid_argument("CsrMatrix::add_scaled: pattern mismatch");
    for (std::size_t k = 0; k < val_.size(); ++k) val_[k] += c * A.val_[k];
}

} // namespace subdiff
