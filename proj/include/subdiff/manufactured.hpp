#pragma once

#include <functional>

#include "subdiff/spatial_mesh.hpp"
#include "subdiff/stepper.hpp"

namespace subdiff {

/// Closed-form Caputo derivative of t^p of order alpha:
/// Gamma(p+1)/Gamma(p+1-alpha) * t^(p-alpha). Requires p > 0 (p == 0
/// would differentiate a constant; handled by callers as zero).
double caputo_power(double t, double alpha, double p);

enum class ForcingMode { pure, reactive };

/// Manufactured benchmark problem: exact solution, its derivatives and
/// Caputo derivative, the nonlocal functional, and the back-computed
/// forcing. Three cases:
///   1: u = t^3 sin x            on (0, pi)
///   2: u = (t^3 + t^alpha) sin x on (0, pi)
///   3: u = (t^3 + t^alpha)(x - x^2)(y - y^2) on (0,1)^2
/// all with a(xi) = 3 + sin xi and u(.,0) = 0.
///
/// pure mode:     f(x,t,u) = g(x,t) with g = caputo(u) - a(l(u)) lap(u);
/// reactive mode: f(x,t,u) = u + g(x,t) - u_exact(x,t) (same solution,
/// exercises the f'(U) Jacobian block).
struct ManufacturedCase {
    int id = 0;
    double alpha = 0.5;
    ForcingMode mode = ForcingMode::pure;
    MeshKind kind = MeshKind::interval;
    double domain_length = 0.0;  ///< b of (0,b) in 1D; 1 in 2D

    std::function<double(Point, double)> u;
    std::function<Vec2(Point, double)> grad_u;
    std::function<double(Point, double)> lap_u;
    std::function<double(Point, double)> caputo_u;
    std::function<double(double)> l_exact;
    std::function<double(double)> a;
    std::function<double(double)> da;
    std::function<double(Point, double)> g;

    /// Problem data for the solver (forcing per `mode`).
    ProblemSpec problem() const;
};

ManufacturedCase manufactured_case(int id, double alpha, ForcingMode mode = ForcingMode::pure);

} // namespace subdiff
