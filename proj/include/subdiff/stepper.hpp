#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "subdiff/assembly.hpp"
#include "subdiff/csr_matrix.hpp"
#include "subdiff/l1.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/spatial_mesh.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

/// Problem data: diffusion coefficient a(l(u)), reaction f(x,t,u) and
/// initial datum. a must stay within positive bounds over the l-values
/// a run encounters; f's u-dependence is declared explicitly so the
/// linear case skips the reaction Jacobian.
struct ProblemSpec {
    std::function<double(double)> a;
    std::function<double(double)> da;
    std::function<double(Point, double, double)> f;     // (x, t, u)
    std::function<double(Point, double, double)> dfdu;  // used when f_depends_on_u
    bool f_depends_on_u = false;
    bool u0_is_zero = true;
    std::function<double(Point)> u0;       // required when !u0_is_zero
    std::function<Vec2(Point)> grad_u0;    // required when !u0_is_zero (Ritz projection)
};

/// Bordered Newton system  [A b; c gamma] [dU; dd] = [F; F_border].
struct BorderedSystem {
    CsrMatrix A;
    std::vector<double> b;
    std::vector<double> c;
    double gamma = -1.0;
    std::vector<double> residual;       // F_1..F_M
    double residual_border = 0.0;       // F_{M+1} = l(U) - d
};

struct SchurSolution {
    std::vector<double> du;
    double dd = 0.0;
};

/// Solves the bordered system by two sparse solves and the scalar Schur
/// complement. Throws SolveError when |gamma - c A^{-1} b| < 1e-14.
SchurSolution schur_solve(const BorderedSystem& sys);

/// History combination H^n = (1/d_{n,1}) (-d_{n,n} U^0
///   + sum_{k=1}^{n-1} (d_{n,k+1} - d_{n,k}) U^{n-k});
/// the residual pairs it with the mass matrix. history holds U^0..U^{n-1}.
std::vector<double> history_term(const L1Row& row, const std::vector<std::vector<double>>& history);

/// Per-mesh operators reused across time steps.
struct FemOperators {
    CsrMatrix mass;
    CsrMatrix stiffness;
    std::vector<double> nodal;  // c vector
    QuadratureRule rule;
};

FemOperators build_fem_operators(const SpatialMesh& mesh);

struct NewtonConfig {
    double alpha = 0.5;  ///< fractional order of the time derivative
    double tol = 1e-12;
    int max_iter = 25;
};

struct StepStats {
    int level = 0;
    int iterations = 0;
    std::vector<double> residual_norms;  // inf-norm of the full residual per iteration
    double d_value = 0.0;                // accepted nonlocal value d
    double equivalence_gap = 0.0;        // |l(U^n) - d| after convergence
    double unbordered_residual = 0.0;    // ||F(U^n, l(U^n))||_inf after convergence
};

struct TimeLoopState {
    std::vector<std::vector<double>> history;  // U^0..U^{n-1} on entry to step n
    double d_value = 0.0;                      // accepted l(U^n)
};

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, int level, double last_residual)
        : std::runtime_error(what), level(level), last_residual(last_residual) {}
    int level = 0;
    double last_residual = 0.0;
};

/// Residual of the reformulated system at candidate (U, d);
/// mass_history = M * H^n precomputed.
void newton_residual(const ProblemSpec& problem, const SpatialMesh& mesh, const FemOperators& ops,
                     const L1Row& row, double t_n, std::span<const double> mass_history,
                     std::span<const double> U, double d,
                     std::vector<double>& out_residual, double& out_border);

/// Jacobian blocks at candidate (U, d). Residual fields are filled by the caller.
BorderedSystem newton_jacobian(const ProblemSpec& problem, const SpatialMesh& mesh,
                               const FemOperators& ops, const L1Row& row, double t_n,
                               std::span<const double> U, double d);

/// One accepted time level: Newton iteration from the warm start
/// (U^{n-1}, l(U^{n-1})) until ||dU||_inf + |dd| <= tol (1 + ||U||_inf).
/// Appends U^n to the state history. Throws SolverError on
/// non-convergence within max_iter.
StepStats step(TimeLoopState& state, int n, const ProblemSpec& problem, const TimeGrid& grid,
               const SpatialMesh& mesh, const FemOperators& ops, const NewtonConfig& config);

struct SolveResult {
    std::vector<std::vector<double>> history;  // U^0..U^N
    std::vector<StepStats> steps;              // one per level 1..N
};

/// Full time loop: U^0 from the Ritz projection of u0 (zero vector when
/// u0 == 0), then step for n = 1..N.
SolveResult solve(const ProblemSpec& problem, const TimeGrid& grid, const SpatialMesh& mesh,
                  const NewtonConfig& config);

} // namespace subdiff
