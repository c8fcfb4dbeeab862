#include "subdiff/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

TimeGrid build_time_grid(double T, int N, double r) {
    if (!(T > 0.0)) throw std::invalid_argument("build_time_grid: T must be positive");
    if (N < 1) throw std::invalid_argument("build_time_grid: N must be >= 1");
    if (!(r >= 1.0)) throw std::invalid_argument("build_time_grid: grading exponent r must be >= 1");

    TimeGrid grid;
    grid.T = T;
    grid.N = N;
    grid.r = r;
    grid.nodes.resize(static_cast<std::size_t>(N) + 1);
    grid.steps.resize(static_cast<std::size_t>(N));

    // Evaluate in extended precision so node differences stay monotone
    // even when consecutive powers agree to near machine precision.
    for (int n = 0; n <= N; ++n) {
        const long double frac = static_cast<long double>(n) / static_cast<long double>(N);
        grid.nodes[static_cast<std::size_t>(n)] =
            static_cast<double>(static_cast<long double>(T) * powl(frac, static_cast<long double>(r)));
    }
    grid.nodes[0] = 0.0;
    grid.nodes[static_cast<std::size_t>(N)] = T;

    for (int n = 1; n <= N; ++n) {
        const double tau = grid.nodes[static_cast<std::size_t>(n)] - grid.nodes[static_cast<std::size_t>(n - 1)];
        if (!(tau > 0.0)) throw std::invalid_argument("build_time_grid: degenerate step (N too large for T, r)");
        grid.steps[static_cast<std::size_t>(n - 1)] = tau;
    }
    return grid;
}

} // namespace subdiff
