#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdiff/csr_matrix.hpp"

namespace subdiff {

struct SolveError : std::runtime_error {
    SolveError(const std::string& what, int row) : std::runtime_error(what), row(row) {}
    int row = -1;  ///< offending row when known, else -1
};

/// Direct sparse LU factorization of a CSR matrix, reusable across
/// right-hand sides. Solves satisfy ||Ax - rhs||_inf <= 1e-13 (1 + ||rhs||_inf)
/// (one step of iterative refinement included); violations throw SolveError.
class SparseLu {
public:
    explicit SparseLu(const CsrMatrix& A);
    ~SparseLu();
    SparseLu(SparseLu&&) noexcept;
    SparseLu& operator=(SparseLu&&) noexcept;
    SparseLu(const SparseLu&) = delete;
    SparseLu& operator=(const SparseLu&) = delete;

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot factor-and-solve.
std::vector<double> solve_sparse(const CsrMatrix& A, std::span<const double> rhs);

} // namespace subdiff
