#pragma once

#include <string>
#include <vector>

#include "subdiff/l1.hpp"
#include "subdiff/time_grid.hpp"

namespace subdiff {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Core d-row checker reused by the suite and by fault-injection tests:
/// d_{n,1} = tau_n^{-alpha} (1e-13 relative), positivity and
/// monotone-nonincreasing rows. rows[k] must be the level-(k+1) row.
CheckResult check_d_rows(const std::vector<L1Row>& rows, const TimeGrid& grid);

CheckResult check_d_row_identities();      // d-rows across N up to 2^10, r in {1, 2, (2-a)/a}
CheckResult check_coercivity();            // (D v^n) v^n >= 1/2 D (v^2)^n, 200 random cases
CheckResult check_l1_linearity();          // D(av + bw) = a Dv + b Dw
CheckResult check_p_unit_bound();          // sum p t^{-a}/Gamma(1-a) <= 1 across the alpha/r/N grid
CheckResult check_p_sum_stability();       // sum p s^{-min} <= C N^{-min}, C stable in N
CheckResult check_truncation_probe();      // zeta scaling for t, t^alpha, t^3 + t^alpha
CheckResult check_quadrature_exactness();  // rules integrate monomials to stated degree
CheckResult check_ritz_orthogonality();    // (grad(w - R_h w), grad phi_i) = 0
CheckResult check_formulation_equivalence();  // |l(U)-d| and un-bordered residual per step
CheckResult check_newton_decrease();       // residual norms decrease above the noise floor
CheckResult check_determinism();           // repeated solves bit-identical
CheckResult check_boundedness();           // max_n ||U^n|| <= 10 (||U^0|| + max ||u|| + 1)

std::vector<CheckResult> run_all_checks();

} // namespace subdiff
