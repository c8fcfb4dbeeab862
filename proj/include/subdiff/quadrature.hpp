#pragma once

#include <vector>

#include "subdiff/spatial_mesh.hpp"

namespace subdiff {

/// Reference-element quadrature rule.
///
/// Interval rules live on [0,1] (weights sum to 1); triangle rules on
/// the reference triangle {(0,0),(1,0),(0,1)} (weights sum to 1/2).
struct QuadratureRule {
    struct QPoint {
        double xi = 0.0;
        double eta = 0.0;  // unused for interval rules
    };
    std::vector<QPoint> points;
    std::vector<double> weights;
    int degree = 0;  ///< highest polynomial degree integrated exactly
};

/// 3-point Gauss on [0,1], degree 5. Default system-assembly rule in 1D.
QuadratureRule interval_gauss3();

/// 5-point Gauss on [0,1], degree 9. Refined rule for error norms in 1D.
QuadratureRule interval_gauss5();

/// Edge-midpoint rule on the reference triangle, degree 2. Default
/// system-assembly rule in 2D.
QuadratureRule triangle_midpoint3();

/// 6-point degree-4 rule on the reference triangle. Refined rule for
/// error norms in 2D.
QuadratureRule triangle_degree4();

/// Assembly rule for the mesh kind (degree 5 interval / degree 2 triangle).
QuadratureRule system_rule(MeshKind kind);

/// Refined rule for norm evaluation (degree 9 interval / degree 4 triangle).
QuadratureRule norm_rule(MeshKind kind);

} // namespace subdiff
