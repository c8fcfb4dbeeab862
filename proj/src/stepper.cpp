#include "subdiff/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "subdiff/sparse_solver.hpp"

namespace subdiff {

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

SchurSolution schur_solve(const BorderedSystem& sys) {
    const SparseLu lu(sys.A);
    const std::vector<double> z1 = lu.solve(sys.residual);
    const std::vector<double> z2 = lu.solve(sys.b);

    const double schur = sys.gamma - dot(sys.c, z2);
    if (std::abs(schur) < 1e-14)
        throw SolveError("schur_solve: singular border (gamma - c A^{-1} b vanishes)", -1);

    SchurSolution sol;
    sol.dd = (sys.residual_border - dot(sys.c, z1)) / schur;
    sol.du = z1;
    for (std::size_t i = 0; i < sol.du.size(); ++i) sol.du[i] -= sol.dd * z2[i];
    return sol;
}

std::vector<double> history_term(const L1Row& row, const std::vector<std::vector<double>>& history) {
    const int n = row.n;
    if (static_cast<int>(history.size()) != n)
        throw std::invalid_argument("history_term: need exactly n past levels");

    const double d1 = row.at(1);
    std::vector<double> h(history[0].size(), 0.0);
    const double w0 = -row.at(n) / d1;
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = w0 * history[0][j];
    for (int k = 1; k <= n - 1; ++k) {
        const double w = (row.at(k + 1) - row.at(k)) / d1;
        const auto& u = history[static_cast<std::size_t>(n - k)];
        for (std::size_t j = 0; j < h.size(); ++j) h[j] += w * u[j];
    }
    return h;
}

FemOperators build_fem_operators(const SpatialMesh& mesh) {
    FemOperators ops;
    ops.mass = assemble_mass(mesh);
    ops.stiffness = assemble_stiffness(mesh);
    ops.nodal = assemble_nodal_integrals(mesh);
    ops.rule = system_rule(mesh.kind());
    return ops;
}

void newton_residual(const ProblemSpec& problem, const SpatialMesh& mesh, const FemOperators& ops,
                     const L1Row& row, double t_n, std::span<const double> mass_history,
                     std::span<const double> U, double d,
                     std::vector<double>& out_residual, double& out_border) {
    const double kappa = std::tgamma(2.0 - row.alpha) / row.at(1);
    const double a_val = problem.a(d);

    out_residual = ops.mass.multiply(U);
    const std::vector<double> ku = ops.stiffness.multiply(U);
    const std::vector<double> fv =
        assemble_reaction(mesh, [&](Point p, double u) { return problem.f(p, t_n, u); }, U, ops.rule);
    for (std::size_t i = 0; i < out_residual.size(); ++i)
        out_residual[i] += mass_history[i] + kappa * (a_val * ku[i] - fv[i]);
    out_border = dot(ops.nodal, U) - d;
}

BorderedSystem newton_jacobian(const ProblemSpec& problem, const SpatialMesh& mesh,
                               const FemOperators& ops, const L1Row& row, double t_n,
                               std::span<const double> U, double d) {
    const double kappa = std::tgamma(2.0 - row.alpha) / row.at(1);

    BorderedSystem sys;
    sys.A.assign_combination(1.0, ops.mass, kappa * problem.a(d), ops.stiffness);
    if (problem.f_depends_on_u) {
        const CsrMatrix rj = assemble_reaction_jacobian(
            mesh, [&](Point p, double u) { return problem.dfdu(p, t_n, u); }, U, ops.rule);
        sys.A.add_scaled(-kappa, rj);
    }

    const std::vector<double> ku = ops.stiffness.multiply(U);
    const double bscale = kappa * problem.da(d);
    sys.b.resize(ku.size());
    for (std::size_t i = 0; i < ku.size(); ++i) sys.b[i] = bscale * ku[i];

    sys.c = ops.nodal;
    sys.gamma = -1.0;
    return sys;
}

StepStats step(TimeLoopState& state, int n, const ProblemSpec& problem, const TimeGrid& grid,
               const SpatialMesh& mesh, const FemOperators& ops, const NewtonConfig& config) {
    if (static_cast<int>(state.history.size()) != n)
        throw std::invalid_argument("step: history must hold levels 0..n-1");

    const L1Row row = d_row(grid, n, config.alpha);
    const double t_n = grid.t(n);
    const std::vector<double> mass_history = ops.mass.multiply(history_term(row, state.history));

    // Warm start from the previous level and its nonlocal value.
    std::vector<double> U = state.history.back();
    double d = dot(ops.nodal, U);

    StepStats stats;
    stats.level = n;

    bool converged = false;
    while (stats.iterations < config.max_iter) {
        BorderedSystem sys = newton_jacobian(problem, mesh, ops, row, t_n, U, d);
        newton_residual(problem, mesh, ops, row, t_n, mass_history, U, d, sys.residual,
                        sys.residual_border);
        stats.residual_norms.push_back(std::max(inf_norm(sys.residual), std::abs(sys.residual_border)));

        const SchurSolution delta = schur_solve(sys);
        for (std::size_t i = 0; i < U.size(); ++i) U[i] -= delta.du[i];
        d -= delta.dd;
        ++stats.iterations;

        if (inf_norm(delta.du) + std::abs(delta.dd) <= config.tol * (1.0 + inf_norm(U))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw SolverError("step: Newton failed to converge at level " + std::to_string(n) +
                              " (last residual " + std::to_string(stats.residual_norms.back()) + ")",
                          n, stats.residual_norms.back());

    // Equivalence with the un-bordered formulation: d must equal l(U^n)
    // and substituting l(U^n) for d must leave a vanishing residual.
    const double l_of_u = dot(ops.nodal, U);
    stats.d_value = d;
    stats.equivalence_gap = std::abs(l_of_u - d);
    std::vector<double> res;
    double border = 0.0;
    newton_residual(problem, mesh, ops, row, t_n, mass_history, U, l_of_u, res, border);
    stats.unbordered_residual = inf_norm(res);

    state.history.push_back(std::move(U));
    state.d_value = d;
    return stats;
}

SolveResult solve(const ProblemSpec& problem, const TimeGrid& grid, const SpatialMesh& mesh,
                  const NewtonConfig& config) {
    const FemOperators ops = build_fem_operators(mesh);

    TimeLoopState state;
    if (problem.u0_is_zero) {
        state.history.emplace_back(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    } else {
        state.history.push_back(ritz_projection(mesh, problem.grad_u0));
    }

    SolveResult result;
    result.steps.reserve(static_cast<std::size_t>(grid.N));
    for (int n = 1; n <= grid.N; ++n)
        result.steps.push_back(step(state, n, problem, grid, mesh, ops, config));
    result.history = std::move(state.history);
    return result;
}

} // namespace subdiff
