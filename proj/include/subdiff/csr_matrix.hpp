#pragma once

#include <span>
#include <vector>

namespace subdiff {

/// Square sparse matrix in compressed-row storage. Column indices are
/// strictly increasing within each row; the pattern is fixed at
/// construction and values are accumulated into it.
class CsrMatrix {
public:
    CsrMatrix() = default;

    /// Builds a zero matrix over the given adjacency (row -> columns,
    /// duplicates allowed, unsorted). The diagonal is always included.
    static CsrMatrix from_adjacency(int n, const std::vector<std::vector<int>>& adjacency);

    int size() const { return n_; }
    std::span<const int> row_offsets() const { return row_ptr_; }
    std::span<const int> columns() const { return col_; }
    std::span<const double> values() const { return val_; }
    std::span<double> values() { return val_; }

    /// Entry accumulation; throws if (i,j) is outside the pattern.
    void add(int i, int j, double v);
    double coeff(int i, int j) const;  ///< 0 for entries outside the pattern

    std::vector<double> multiply(std::span<const double> x) const;

    bool same_pattern(const CsrMatrix& other) const;

    /// this = c1*A + c2*B over a shared pattern.
    void assign_combination(double c1, const CsrMatrix& A, double c2, const CsrMatrix& B);
    /// this += c*A over a shared pattern.
    void add_scaled(double c, const CsrMatrix& A);

private:
    int find(int i, int j) const;  // value index or -1

    int n_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<double> val_;
};

} // namespace subdiff
