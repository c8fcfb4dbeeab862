#pragma once

// Test-only oracles, deliberately independent of the library's
// implementation paths: dense linear algebra and brute-force quadrature
// of the Caputo integral.

#include <functional>
#include <span>
#include <vector>

namespace subdiff::testing {

/// Dense LU solve with partial pivoting (row-major square matrix).
std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b);

/// Caputo integral (1/Gamma(1-alpha)) int_0^t (t-s)^{-alpha} du(s) ds by
/// composite Gauss with the substitution w = (t-s)^{1-alpha} removing the
/// endpoint singularity. `du` must be smooth on (0, t].
double caputo_quadrature(const std::function<double(double)>& du, double t, double alpha,
                         int panels = 64);

/// Brute-force Caputo of the piecewise-linear interpolant of samples
/// v_0..v_n at nodes t_0..t_n, evaluated at t_n: per-interval Gauss with
/// the singular last interval handled by substitution. Independent of
/// the L1 weight formula.
double caputo_pw_linear_quadrature(std::span<const double> nodes, std::span<const double> values,
                                   int n, double alpha);

} // namespace subdiff::testing
