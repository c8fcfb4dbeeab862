#include "subdiff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <tuple>

#include "subdiff/analysis.hpp"
#include "subdiff/assembly.hpp"
#include "subdiff/manufactured.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/stepper.hpp"

namespace subdiff {

namespace {

std::string fmt(double v) { return format_double(v); }

CheckResult pass(std::string name, std::string detail = {}) {
    return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

double discrete_l2(const CsrMatrix& mass, std::span<const double> U) {
    const std::vector<double> mu = mass.multiply(U);
    double s = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) s += U[i] * mu[i];
    return std::sqrt(std::max(s, 0.0));
}

} // namespace

CheckResult check_d_rows(const std::vector<L1Row>& rows, const TimeGrid& grid) {
    const std::string name = "l1.d_row_identities";
    for (const L1Row& row : rows) {
        const int n = row.n;
        const double ref = std::pow(grid.tau(n), -row.alpha);
        if (std::abs(row.at(1) - ref) > 1e-13 * ref)
            return fail(name, "d(" + std::to_string(n) + ",1) != tau^-alpha, rel " +
                                  fmt(std::abs(row.at(1) - ref) / ref));
        for (int k = 1; k <= n; ++k) {
            if (!(row.at(k) > 0.0))
                return fail(name, "d(" + std::to_string(n) + "," + std::to_string(k) + ") <= 0");
            // round-off slack: on extreme gradings adjacent weights tie
            // to machine precision and can misorder by an ulp
            if (k < n && row.at(k + 1) > row.at(k) * (1.0 + 1e-13))
                return fail(name, "monotonicity violated at (n,k) = (" + std::to_string(n) + "," +
                                      std::to_string(k) + ")");
        }
    }
    return pass(name);
}

CheckResult check_d_row_identities() {
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double r : {1.0, 2.0, (2.0 - alpha) / alpha}) {
            const int N = 1024;
            const TimeGrid grid = build_time_grid(1.0, N, r);
            std::vector<L1Row> rows;
            rows.reserve(static_cast<std::size_t>(N));
            for (int n = 1; n <= N; ++n) rows.push_back(d_row(grid, n, alpha));
            CheckResult res = check_d_rows(rows, grid);
            if (!res.passed) {
                res.detail += " (alpha " + fmt(alpha) + ", r " + fmt(r) + ")";
                return res;
            }
        }
    }
    return pass("l1.d_row_identities", "N=1024, 15 grids");
}

CheckResult check_coercivity() {
    const std::string name = "l1.coercivity";
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 40);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double alphas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (int c = 0; c < 200; ++c) {
        const double alpha = alphas[static_cast<std::size_t>(c) % 9];
        const double r = 1.0 + 3.0 * unit(rng);
        const int N = len(rng);
        const TimeGrid grid = build_time_grid(0.5 + unit(rng), N, r);
        std::vector<double> v(static_cast<std::size_t>(N) + 1);
        for (double& x : v) x = gauss(rng);
        std::vector<double> v2(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v2[i] = v[i] * v[i];

        for (int n = 1; n <= N; ++n) {
            const L1Row row = d_row(grid, n, alpha);
            const std::span<const double> head(v.data(), static_cast<std::size_t>(n) + 1);
            const std::span<const double> head2(v2.data(), static_cast<std::size_t>(n) + 1);
            const double lhs = discrete_caputo(head, row) * v[static_cast<std::size_t>(n)];
            const double rhs = 0.5 * discrete_caputo(head2, row);
            const double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
            if (lhs < rhs - 1e-12 * scale)
                return fail(name, "case " + std::to_string(c) + " level " + std::to_string(n) +
                                      ": lhs " + fmt(lhs) + " < rhs " + fmt(rhs));
        }
    }
    return pass(name, "200 random cases");
}

CheckResult check_l1_linearity() {
    const std::string name = "l1.linearity";
    std::mt19937 rng(7u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double alpha : {0.2, 0.5, 0.8}) {
        const int N = 24;
        const TimeGrid grid = build_time_grid(1.0, N, 2.0);
        std::vector<double> v(static_cast<std::size_t>(N) + 1), w(v.size()), z(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = gauss(rng);
            w[i] = gauss(rng);
        }
        const double a = 1.7, b = -0.3;
        for (std::size_t i = 0; i < v.size(); ++i) z[i] = a * v[i] + b * w[i];
        const L1Row row = d_row(grid, N, alpha);
        const double lhs = discrete_caputo(z, row);
        const double rhs = a * discrete_caputo(v, row) + b * discrete_caputo(w, row);
        if (std::abs(lhs - rhs) > 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0))
            return fail(name, "alpha " + fmt(alpha) + ": " + fmt(lhs) + " vs " + fmt(rhs));
    }
    return pass(name);
}

CheckResult check_p_unit_bound() {
    const std::string name = "l1.p_unit_bound";
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double r : {1.0, 2.0, 4.0}) {
            for (int N : {8, 64, 256}) {
                const TimeGrid grid = build_time_grid(1.0, N, r);
                const double gamma1 = std::tgamma(1.0 - alpha);
                for (int n : {1, N / 2, N}) {
                    if (n < 1) continue;
                    const PCoefficients pc = p_coefficients(grid, alpha, n);
                    double sum = 0.0;
                    for (int s = 1; s <= n; ++s)
                        sum += pc.p[static_cast<std::size_t>(n - s)] * std::pow(grid.t(s), -alpha) / gamma1;
                    if (!(sum <= 1.0 + 1e-12))
                        return fail(name, "alpha " + fmt(alpha) + " r " + fmt(r) + " N " +
                                              std::to_string(N) + " n " + std::to_string(n) +
                                              ": sum " + fmt(sum));
                    if (!(pc.p[0] > 0.0))
                        return fail(name, "p0 not positive");
                }
            }
        }
    }
    return pass(name, "alpha x r x N grid");
}

CheckResult check_p_sum_stability() {
    const std::string name = "l1.p_sum_stability";
    for (double alpha : {0.3, 0.5, 0.7}) {
        for (double r : {1.0, 2.0 * (2.0 - alpha) / alpha}) {
            const double beta = std::min(2.0 - alpha, r * alpha);
            std::vector<double> cn;
            for (int N : {32, 64, 128, 256}) {
                const TimeGrid grid = build_time_grid(1.0, N, r);
                double worst = 0.0;
                for (int n : {N / 2, N}) {
                    const PCoefficients pc = p_coefficients(grid, alpha, n);
                    double sum = 0.0;
                    for (int s = 1; s <= n; ++s)
                        sum += pc.p[static_cast<std::size_t>(n - s)] * std::pow(static_cast<double>(s), -beta);
                    worst = std::max(worst, sum * std::pow(static_cast<double>(N), beta));
                }
                cn.push_back(worst);
            }
            const double cmax = *std::max_element(cn.begin(), cn.end());
            const double clast = cn.back();
            // fitted C must be stable: no blow-up along the ladder
            if (!(cmax <= 2.0 * cn.front() + 1e-12) || !std::isfinite(clast))
                return fail(name, "alpha " + fmt(alpha) + " r " + fmt(r) + ": C ladder " +
                                      fmt(cn[0]) + ", " + fmt(cn[1]) + ", " + fmt(cn[2]) + ", " +
                                      fmt(cn[3]));
        }
    }
    return pass(name);
}

CheckResult check_truncation_probe() {
    const std::string name = "l1.truncation_probe";

    // linear u: the L1 interpolant is exact
    {
        const TimeGrid grid = build_time_grid(1.0, 64, 2.0);
        const double alpha = 0.5;
        const auto zeta = truncation_probe(
            [alpha](double t) { return caputo_power(t, alpha, 1.0); }, [](double t) { return t; },
            grid, alpha);
        for (double z : zeta)
            if (std::abs(z) > 1e-12)
                return fail(name, "nonzero residual for linear u: " + fmt(std::abs(z)));
    }

    // u = t^alpha on the optimal grading: n^{2-alpha} |zeta^n| stays bounded
    {
        const double alpha = 0.5;
        const double r = (2.0 - alpha) / alpha;
        double prev = 0.0;
        for (int N : {64, 128, 256, 512}) {
            const TimeGrid grid = build_time_grid(1.0, N, r);
            const auto zeta = truncation_probe(
                [alpha](double) { return std::tgamma(1.0 + alpha); },
                [alpha](double t) { return std::pow(t, alpha); }, grid, alpha);
            double scaled = 0.0;
            for (int n = 1; n <= N; ++n)
                scaled = std::max(scaled, std::pow(static_cast<double>(n), 2.0 - alpha) *
                                              std::abs(zeta[static_cast<std::size_t>(n - 1)]));
            if (prev > 0.0 && !(scaled <= 2.0 * prev && scaled >= 0.5 * prev))
                return fail(name, "scaled residual unstable: " + fmt(prev) + " -> " + fmt(scaled) +
                                      " at N " + std::to_string(N));
            prev = scaled;
        }
    }

    // u = t^3 + t^alpha uniform mesh: away from the singularity the
    // endpoint residual decays at min(2-alpha, 1+alpha), while the
    // n^{-alpha} bound is attained near n = 1 (zeta^1 is N-independent)
    {
        const double alpha = 0.5;
        std::vector<double> tail, head;
        for (int N : {64, 128, 256, 512}) {
            const TimeGrid grid = build_time_grid(1.0, N, 1.0);
            const auto zeta = truncation_probe(
                [alpha](double t) {
                    return caputo_power(t, alpha, 3.0) + std::tgamma(1.0 + alpha);
                },
                [alpha](double t) { return t * t * t + std::pow(t, alpha); }, grid, alpha);
            tail.push_back(std::abs(zeta.back()));
            head.push_back(std::abs(zeta.front()));
        }
        const double slope = std::log(tail.front() / tail.back()) / std::log(512.0 / 64.0);
        const double expected = std::min(2.0 - alpha, 1.0 + alpha);
        if (std::abs(slope - expected) > 0.12)
            return fail(name, "uniform-mesh endpoint slope " + fmt(slope) + " != " + fmt(expected));
        for (double h : head)
            if (!(std::abs(h - head.front()) <= 1e-3 * head.front()))
                return fail(name, "zeta^1 should be N-independent on uniform meshes");
    }
    return pass(name);
}

CheckResult check_quadrature_exactness() {
    const std::string name = "fem.quadrature_exactness";
    // interval rules on [0,1]: int x^k = 1/(k+1)
    for (const QuadratureRule& rule : {interval_gauss3(), interval_gauss5()}) {
        for (int k = 0; k <= rule.degree; ++k) {
            double s = 0.0;
            for (std::size_t q = 0; q < rule.points.size(); ++q)
                s += rule.weights[q] * std::pow(rule.points[q].xi, k);
            if (std::abs(s - 1.0 / (k + 1)) > 1e-14)
                return fail(name, "interval rule degree " + std::to_string(rule.degree) +
                                      " misses x^" + std::to_string(k));
        }
    }
    // triangle rules: int xi^a eta^b = a! b! / (a+b+2)!
    for (const QuadratureRule& rule : {triangle_midpoint3(), triangle_degree4()}) {
        for (int a = 0; a <= rule.degree; ++a) {
            for (int b = 0; a + b <= rule.degree; ++b) {
                double s = 0.0;
                for (std::size_t q = 0; q < rule.points.size(); ++q)
                    s += rule.weights[q] * std::pow(rule.points[q].xi, a) * std::pow(rule.points[q].eta, b);
                double exact = 1.0;
                for (int k = 1; k <= a; ++k) exact *= k;
                for (int k = 1; k <= b; ++k) exact *= k;
                double denom = 1.0;
                for (int k = 1; k <= a + b + 2; ++k) denom *= k;
                exact /= denom;
                if (std::abs(s - exact) > 1e-14)
                    return fail(name, "triangle rule degree " + std::to_string(rule.degree) +
                                          " misses xi^" + std::to_string(a) + " eta^" + std::to_string(b));
            }
        }
    }
    return pass(name);
}

CheckResult check_ritz_orthogonality() {
    const std::string name = "fem.ritz_orthogonality";
    const SpatialMesh mesh = SpatialMesh::interval(std::numbers::pi_v<double>, 64);
    const auto grad_w = [](Point p) { return Vec2{std::cos(p.x), 0.0}; };
    const std::vector<double> coeff = ritz_projection(mesh, grad_w);

    // residual (grad(w - R_h w), grad phi_i) via refined quadrature
    const QuadratureRule rule = norm_rule(mesh.kind());
    for (int i = 0; i < mesh.num_interior(); ++i) {
        const int node = mesh.node_of_interior(i);
        double res = 0.0;
        for (int e = node - 1; e <= node; ++e) {  // support of hat i
            const auto& el = mesh.element(e);
            const double h = mesh.node(el[1]).x - mesh.node(el[0]).x;
            const double gphi = (el[0] == node) ? -1.0 / h : 1.0 / h;
            const int d0 = mesh.interior_index(el[0]);
            const int d1 = mesh.interior_index(el[1]);
            const double c0 = d0 >= 0 ? coeff[static_cast<std::size_t>(d0)] : 0.0;
            const double c1 = d1 >= 0 ? coeff[static_cast<std::size_t>(d1)] : 0.0;
            const double gw_h = (c1 - c0) / h;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const double x = mesh.node(el[0]).x + rule.points[q].xi * h;
                res += rule.weights[q] * h * (std::cos(x) - gw_h) * gphi;
            }
        }
        if (std::abs(res) > 1e-11)
            return fail(name, "dof " + std::to_string(i) + ": residual " + fmt(res));
    }
    return pass(name);
}

namespace {

struct SmallRun {
    SolveResult result;
    SpatialMesh mesh;
    TimeGrid grid;
    ManufacturedCase mc;
};

SmallRun small_run(int example, double alpha, int N, int Ms, double r, ForcingMode mode) {
    SmallRun run{SolveResult{}, example == 3 ? SpatialMesh::unit_square(Ms)
                                             : SpatialMesh::interval(std::numbers::pi_v<double>, Ms),
                 build_time_grid(1.0, N, r), manufactured_case(example, alpha, mode)};
    NewtonConfig config;
    config.alpha = alpha;
    run.result = solve(run.mc.problem(), run.grid, run.mesh, config);
    return run;
}

} // namespace

CheckResult check_formulation_equivalence() {
    const std::string name = "stepper.formulation_equivalence";
    for (const auto& [example, alpha, N, Ms, mode] :
         {std::tuple{1, 0.5, 16, 32, ForcingMode::pure}, std::tuple{2, 0.7, 16, 32, ForcingMode::reactive},
          std::tuple{3, 0.5, 8, 8, ForcingMode::pure}}) {
        const double r = (2.0 - alpha) / alpha;
        const SmallRun run = small_run(example, alpha, N, Ms, r, mode);
        for (const StepStats& st : run.result.steps) {
            if (st.equivalence_gap > 1e-12 * (1.0 + std::abs(st.d_value)))
                return fail(name, "example " + std::to_string(example) + " level " +
                                      std::to_string(st.level) + ": |l(U)-d| " + fmt(st.equivalence_gap));
            if (st.unbordered_residual > 1e-10)
                return fail(name, "example " + std::to_string(example) + " level " +
                                      std::to_string(st.level) + ": residual " +
                                      fmt(st.unbordered_residual));
        }
    }
    return pass(name);
}

CheckResult check_newton_decrease() {
    const std::string name = "stepper.newton_decrease";
    const SmallRun run = small_run(1, 0.5, 32, 64, 1.0, ForcingMode::pure);
    for (const StepStats& st : run.result.steps) {
        const double floor = 1e-13 * (1.0 + st.residual_norms.front());
        for (std::size_t k = 1; k < st.residual_norms.size(); ++k) {
            if (st.residual_norms[k] >= st.residual_norms[k - 1] && st.residual_norms[k] > floor)
                return fail(name, "level " + std::to_string(st.level) + " iteration " +
                                      std::to_string(k) + ": " + fmt(st.residual_norms[k - 1]) +
                                      " -> " + fmt(st.residual_norms[k]));
        }
        if (st.iterations > 10)
            return fail(name, "level " + std::to_string(st.level) + " took " +
                                  std::to_string(st.iterations) + " iterations");
    }
    return pass(name);
}

CheckResult check_determinism() {
    const std::string name = "stepper.determinism";
    const SmallRun a = small_run(2, 0.4, 12, 24, 4.0, ForcingMode::pure);
    const SmallRun b = small_run(2, 0.4, 12, 24, 4.0, ForcingMode::pure);
    if (a.result.history.size() != b.result.history.size()) return fail(name, "history size differs");
    for (std::size_t n = 0; n < a.result.history.size(); ++n)
        for (std::size_t j = 0; j < a.result.history[n].size(); ++j)
            if (a.result.history[n][j] != b.result.history[n][j])
                return fail(name, "bit mismatch at level " + std::to_string(n));
    return pass(name);
}

CheckResult check_boundedness() {
    const std::string name = "stepper.boundedness";
    for (const auto& [example, alpha, N, Ms] :
         {std::tuple{1, 0.4, 32, 64}, std::tuple{2, 0.5, 32, 64}, std::tuple{3, 0.7, 8, 8}}) {
        const double r = (2.0 - alpha) / alpha;
        const SmallRun run = small_run(example, alpha, N, Ms, r, ForcingMode::pure);
        const CsrMatrix mass = assemble_mass(run.mesh);
        const QuadratureRule rule = norm_rule(run.mesh.kind());
        const std::vector<double> zero(static_cast<std::size_t>(run.mesh.num_interior()), 0.0);

        double max_u = 0.0, max_exact = 0.0;
        for (int n = 0; n <= run.grid.N; ++n) {
            max_u = std::max(max_u, discrete_l2(mass, run.result.history[static_cast<std::size_t>(n)]));
            max_exact = std::max(max_exact,
                                 l2_error(run.mesh, zero,
                                          [&, n](Point p) { return run.mc.u(p, run.grid.t(n)); }, rule));
        }
        const double u0 = discrete_l2(mass, run.result.history[0]);
        if (!(max_u <= 10.0 * (u0 + max_exact + 1.0)))
            return fail(name, "example " + std::to_string(example) + ": max ||U|| " + fmt(max_u));
    }
    return pass(name);
}

std::vector<CheckResult> run_all_checks() {
    std::vector<CheckResult> out;
    out.push_back(check_d_row_identities());
    out.push_back(check_coercivity());
    out.push_back(check_l1_linearity());
    out.push_back(check_p_unit_bound());
    out.push_back(check_p_sum_stability());
    out.push_back(check_truncation_probe());
    out.push_back(check_quadrature_exactness());
    out.push_back(check_ritz_orthogonality());
    out.push_back(check_formulation_equivalence());
    out.push_back(check_newton_decrease());
    out.push_back(check_determinism());
    out.push_back(check_boundedness());
    return out;
}

} // namespace subdiff
