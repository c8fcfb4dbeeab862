#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subdiff/time_grid.hpp"

namespace subdiff {

/// L1 weights d_{n,1}..d_{n,n} for one time level. d[k-1] holds d_{n,k}.
///
/// The weights are positive, nonincreasing in k, and d_{n,1} = tau_n^{-alpha}.
struct L1Row {
    int n = 0;
    double alpha = 0.0;
    std::vector<double> d;

    /// d_{n,k}, 1-based.
    double at(int k) const { return d[static_cast<std::size_t>(k - 1)]; }
};

/// Weights of the L1 approximation of the Caputo derivative at t_n.
/// Requires 1 <= n <= grid.N and 0 < alpha < 1.
L1Row d_row(const TimeGrid& grid, int n, double alpha);

/// Discrete Caputo derivative D^alpha_N v^n of a scalar history
/// v^0..v^n (values.size() == n+1).
double discrete_caputo(std::span<const double> values, const L1Row& row);

/// Componentwise D^alpha_N over vector-valued histories v^0..v^n.
std::vector<double> discrete_caputo(const std::vector<std::vector<double>>& values, const L1Row& row);

/// Auxiliary convolution coefficients p^{(n)}_0..p^{(n)}_{n-1}
/// (p[m] = p^{(n)}_m); nonnegative, p^{(n)}_0 = Gamma(2-alpha) tau_n^alpha.
/// Used only by the verification suites.
struct PCoefficients {
    int n = 0;
    double alpha = 0.0;
    std::vector<double> p;
};

PCoefficients p_coefficients(const TimeGrid& grid, double alpha, int n);

/// Truncation residuals zeta^n = caputo(t_n) - D^alpha_N u(t_n),
/// n = 1..N, for a function with known exact Caputo derivative.
std::vector<double> truncation_probe(const std::function<double(double)>& exact_caputo,
                                     const std::function<double(double)>& u,
                                     const TimeGrid& grid, double alpha);

} // namespace subdiff
