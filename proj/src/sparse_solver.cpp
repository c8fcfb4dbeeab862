#include "subdiff/sparse_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>

namespace subdiff {

struct SparseLu::Impl {
    Eigen::SparseMatrix<double> A;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

namespace {

Eigen::SparseMatrix<double> to_eigen(const CsrMatrix& A) {
    const int n = A.size();
    const auto rp = A.row_offsets();
    const auto cols = A.columns();
    const auto vals = A.values();

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(vals.size());
    for (int i = 0; i < n; ++i)
        for (int k = rp[static_cast<std::size_t>(i)]; k < rp[static_cast<std::size_t>(i) + 1]; ++k)
            trip.emplace_back(i, cols[static_cast<std::size_t>(k)], vals[static_cast<std::size_t>(k)]);

    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

} // namespace

SparseLu::SparseLu(const CsrMatrix& A) : impl_(std::make_unique<Impl>()) {
    impl_->A = to_eigen(A);
    impl_->lu.compute(impl_->A);
    if (impl_->lu.info() != Eigen::Success) {
        // Eigen reports the failing pivot column in lastErrorMessage only;
        // surface what it knows.
        throw SolveError("SparseLu: factorization failed: " + impl_->lu.lastErrorMessage(), -1);
    }
}

SparseLu::~SparseLu() = default;
SparseLu::SparseLu(SparseLu&&) noexcept = default;
SparseLu& SparseLu::operator=(SparseLu&&) noexcept = default;

std::vector<double> SparseLu::solve(std::span<const double> rhs) const {
    const int n = static_cast<int>(impl_->A.rows());
    if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("SparseLu::solve: size mismatch");

    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
    Eigen::VectorXd x = impl_->lu.solve(b);
    // One refinement pass keeps the residual contract robust for
    // ill-scaled systems.
    Eigen::VectorXd res = b - impl_->A * x;
    x += impl_->lu.solve(res).eval();
    res = b - impl_->A * x;

    const double rnorm = res.lpNorm<Eigen::Infinity>();
    const double bnorm = b.lpNorm<Eigen::Infinity>();
    if (!(rnorm <= 1e-13 * (1.0 + bnorm))) {
        int row = -1;
        res.cwiseAbs().maxCoeff(&row);
        throw SolveError("SparseLu::solve: residual contract violated at row " + std::to_string(row), row);
    }
    return std::vector<double>(x.data(), x.data() + n);
}

std::vector<double> solve_sparse(const CsrMatrix& A, std::span<const double> rhs) {
    return SparseLu(A).solve(rhs);
}

} // namespace subdiff
