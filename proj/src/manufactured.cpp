#include "subdiff/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subdiff {

double caputo_power(double t, double alpha, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("caputo_power: exponent must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("caputo_power: alpha must lie in (0,1)");
    if (!(t >= 0.0)) throw std::invalid_argument("caputo_power: t must be nonnegative");
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - alpha) * std::pow(t, p - alpha);
}

ManufacturedCase manufactured_case(int id, double alpha, ForcingMode mode) {
    if (id < 1 || id > 3) throw std::invalid_argument("manufactured_case: id must be 1, 2 or 3");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("manufactured_case: alpha must lie in (0,1)");

    ManufacturedCase c;
    c.id = id;
    c.alpha = alpha;
    c.mode = mode;
    c.a = [](double xi) { return 3.0 + std::sin(xi); };
    c.da = [](double xi) { return std::cos(xi); };

    // Separable solutions u = theta(t) * phi(x): theta = t^3 (case 1)
    // or t^3 + t^alpha (cases 2, 3).
    const bool singular = id >= 2;
    auto theta = [singular, alpha](double t) {
        return singular ? t * t * t + std::pow(t, alpha) : t * t * t;
    };
    auto caputo_theta = [singular, alpha](double t) {
        double v = caputo_power(t, alpha, 3.0);
        if (singular) v += std::tgamma(1.0 + alpha);  // caputo of t^alpha
        return v;
    };

    if (id <= 2) {
        c.kind = MeshKind::interval;
        c.domain_length = std::numbers::pi;
        c.u = [theta](Point p, double t) { return theta(t) * std::sin(p.x); };
        c.grad_u = [theta](Point p, double t) { return Vec2{theta(t) * std::cos(p.x), 0.0}; };
        c.lap_u = [theta](Point p, double t) { return -theta(t) * std::sin(p.x); };
        c.caputo_u = [caputo_theta](Point p, double t) { return caputo_theta(t) * std::sin(p.x); };
        c.l_exact = [theta](double t) { return 2.0 * theta(t); };  // int_0^pi sin = 2
    } else {
        c.kind = MeshKind::unit_square;
        c.domain_length = 1.0;
        auto bump = [](double s) { return s - s * s; };
        c.u = [theta, bump](Point p, double t) { return theta(t) * bump(p.x) * bump(p.y); };
        c.grad_u = [theta, bump](Point p, double t) {
            return Vec2{theta(t) * (1.0 - 2.0 * p.x) * bump(p.y),
                        theta(t) * bump(p.x) * (1.0 - 2.0 * p.y)};
        };
        c.lap_u = [theta, bump](Point p, double t) {
            return -2.0 * theta(t) * (bump(p.y) + bump(p.x));
        };
        c.caputo_u = [caputo_theta, bump](Point p, double t) {
            return caputo_theta(t) * bump(p.x) * bump(p.y);
        };
        c.l_exact = [theta](double t) { return theta(t) / 36.0; };  // (int_0^1 s-s^2)^2 = 1/36
    }

    c.g = [cu = c.caputo_u, lu = c.lap_u, lex = c.l_exact, a = c.a](Point p, double t) {
        return cu(p, t) - a(lex(t)) * lu(p, t);
    };
    return c;
}

ProblemSpec ManufacturedCase::problem() const {
    ProblemSpec spec;
    spec.a = a;
    spec.da = da;
    spec.u0_is_zero = true;  // all three cases start from zero
    if (mode == ForcingMode::pure) {
        spec.f = [g = g](Point p, double t, double) { return g(p, t); };
        spec.dfdu = [](Point, double, double) { return 0.0; };
        spec.f_depends_on_u = false;
    } else {
        spec.f = [g = g, u_ex = u](Point p, double t, double u) { return u + g(p, t) - u_ex(p, t); };
        spec.dfdu = [](Point, double, double) { return 1.0; };
        spec.f_depends_on_u = true;
    }
    return spec;
}

} // namespace subdiff
