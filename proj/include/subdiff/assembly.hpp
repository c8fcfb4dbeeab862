#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subdiff/csr_matrix.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/spatial_mesh.hpp"

namespace subdiff {

/// Mass matrix (phi_j, phi_i) over interior dofs; symmetric positive
/// definite, exact element integration.
CsrMatrix assemble_mass(const SpatialMesh& mesh);

/// Stiffness matrix (grad phi_j, grad phi_i); symmetric positive definite.
CsrMatrix assemble_stiffness(const SpatialMesh& mesh);

/// Nodal integrals c_j = int_Omega phi_j, the discrete form of the
/// nonlocal functional: l(U_h) = c . U.
std::vector<double> assemble_nodal_integrals(const SpatialMesh& mesh);

/// Load vector (g(., t), phi_i) via the given rule.
std::vector<double> assemble_load(const SpatialMesh& mesh,
                                  const std::function<double(Point, double)>& g, double t,
                                  const QuadratureRule& rule);

/// Reaction vector (s(x, U_h(x)), phi_i), with U_h evaluated at
/// quadrature points.
std::vector<double> assemble_reaction(const SpatialMesh& mesh,
                                      const std::function<double(Point, double)>& s,
                                      std::span<const double> U, const QuadratureRule& rule);

/// Reaction Jacobian block (s'(x, U_h) phi_j, phi_i).
CsrMatrix assemble_reaction_jacobian(const SpatialMesh& mesh,
                                     const std::function<double(Point, double)>& sprime,
                                     std::span<const double> U, const QuadratureRule& rule);

/// Ritz projection of w given grad w: solves K x = (grad w, grad phi_i).
/// w must vanish on the boundary.
std::vector<double> ritz_projection(const SpatialMesh& mesh,
                                    const std::function<Vec2(Point)>& grad_w);

/// Value of the P1 function with interior coefficients U at a point of
/// element e given reference coordinates (xi, eta). Boundary nodes
/// contribute zero.
double p1_value(const SpatialMesh& mesh, std::span<const double> U, int e, double xi, double eta);

} // namespace subdiff
