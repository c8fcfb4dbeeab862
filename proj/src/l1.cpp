#include "subdiff/l1.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

L1Row d_row(const TimeGrid& grid, int n, double alpha) {
    if (n < 1 || n > grid.N) throw std::invalid_argument("d_row: level out of range");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("d_row: alpha must lie in (0,1)");

    L1Row row;
    row.n = n;
    row.alpha = alpha;
    row.d.resize(static_cast<std::size_t>(n));

    const double tn = grid.t(n);
    row.d[0] = std::pow(grid.tau(n), -alpha);
    for (int k = 2; k <= n; ++k) {
        // d_{n,k} = ((t_n - t_{n-k})^{1-a} - (t_n - t_{n-k+1})^{1-a}) / tau_{n-k+1}.
        // Factored through expm1/log1p: the direct difference cancels
        // catastrophically when tau_{n-k+1} << t_n - t_{n-k}.
        const double big = tn - grid.t(n - k);
        const double tau = grid.tau(n - k + 1);
        row.d[static_cast<std::size_t>(k - 1)] =
            -std::pow(big, 1.0 - alpha) * std::expm1((1.0 - alpha) * std::log1p(-tau / big)) / tau;
    }
    return row;
}

double discrete_caputo(std::span<const double> values, const L1Row& row) {
    const int n = row.n;
    if (static_cast<int>(values.size()) != n + 1)
        throw std::invalid_argument("discrete_caputo: history length must be n+1");

    double acc = row.at(1) * values[static_cast<std::size_t>(n)] - row.at(n) * values[0];
    for (int k = 1; k <= n - 1; ++k)
        acc += (row.at(k + 1) - row.at(k)) * values[static_cast<std::size_t>(n - k)];
    return acc / std::tgamma(2.0 - row.alpha);
}

std::vector<double> discrete_caputo(const std::vector<std::vector<double>>& values, const L1Row& row) {
    const int n = row.n;
    if (static_cast<int>(values.size()) != n + 1)
        throw std::invalid_argument("discrete_caputo: history length must be n+1");
    const std::size_t m = values[0].size();
    for (const auto& v : values)
        if (v.size() != m) throw std::invalid_argument("discrete_caputo: inconsistent vector lengths");

    std::vector<double> scratch(static_cast<std::size_t>(n) + 1);
    std::vector<double> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        for (int k = 0; k <= n; ++k) scratch[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(k)][j];
        out[j] = discrete_caputo(scratch, row);
    }
    return out;
}

PCoefficients p_coefficients(const TimeGrid& grid, double alpha, int n) {
    if (n < 1 || n > grid.N) throw std::invalid_argument("p_coefficients: level out of range");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("p_coefficients: alpha must lie in (0,1)");

    // Rows d_{k,.} for k = 1..n; the recursion walks the full triangle.
    std::vector<L1Row> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) rows.push_back(d_row(grid, k, alpha));

    PCoefficients pc;
    pc.n = n;
    pc.alpha = alpha;
    pc.p.resize(static_cast<std::size_t>(n));

    // p^{(n)}_{n-i} = Gamma(2-a) tau_n^a for i = n, and for i < n
    //   Gamma(2-a) tau_i^a sum_{k=i+1}^n (b^{(k)}_{k-i-1} - b^{(k)}_{k-i}) p^{(n)}_{n-k}
    // with b^{(k)}_{k-i} = d_{k,k-i+1}/Gamma(2-a); the Gamma factors cancel.
    pc.p[0] = std::tgamma(2.0 - alpha) * std::pow(grid.tau(n), alpha);
    for (int m = 1; m <= n - 1; ++m) {
        const int i = n - m;
        double acc = 0.0;
        for (int k = i + 1; k <= n; ++k) {
            const L1Row& rk = rows[static_cast<std::size_t>(k - 1)];
            acc += (rk.at(k - i) - rk.at(k - i + 1)) * pc.p[static_cast<std::size_t>(n - k)];
        }
        pc.p[static_cast<std::size_t>(m)] = std::pow(grid.tau(i), alpha) * acc;
    }
    return pc;
}

std::vector<double> truncation_probe(const std::function<double(double)>& exact_caputo,
                                     const std::function<double(double)>& u,
                                     const TimeGrid& grid, double alpha) {
    std::vector<double> samples(static_cast<std::size_t>(grid.N) + 1);
    for (int k = 0; k <= grid.N; ++k) samples[static_cast<std::size_t>(k)] = u(grid.t(k));

    std::vector<double> zeta(static_cast<std::size_t>(grid.N));
    for (int n = 1; n <= grid.N; ++n) {
        const L1Row row = d_row(grid, n, alpha);
        const std::span<const double> head(samples.data(), static_cast<std::size_t>(n) + 1);
        zeta[static_cast<std::size_t>(n - 1)] = exact_caputo(grid.t(n)) - discrete_caputo(head, row);
    }
    return zeta;
}

} // namespace subdiff
