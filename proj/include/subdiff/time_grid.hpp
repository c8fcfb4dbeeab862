#pragma once

#include <vector>

namespace subdiff {

/// Graded temporal mesh t_n = T (n/N)^r on [0, T].
///
/// r = 1 gives the uniform mesh; r > 1 clusters nodes near t = 0 to
/// resolve a weak initial singularity. Immutable after construction.
struct TimeGrid {
    double T = 0.0;   ///< final time
    int N = 0;        ///< number of steps
    double r = 1.0;   ///< grading exponent, >= 1
    std::vector<double> nodes;  ///< t_0 .. t_N
    std::vector<double> steps;  ///< tau_1 .. tau_N, steps[n-1] = t_n - t_{n-1}

    double t(int n) const { return nodes[static_cast<std::size_t>(n)]; }
    /// tau_n = t_n - t_{n-1}, 1-based.
    double tau(int n) const { return steps[static_cast<std::size_t>(n - 1)]; }
};

/// Builds the graded mesh. Nodes are evaluated directly from the power
/// formula (no step accumulation), so t_N == T exactly.
/// Throws std::invalid_argument for T <= 0, N < 1 or r < 1.
TimeGrid build_time_grid(double T, int N, double r);

} // namespace subdiff
