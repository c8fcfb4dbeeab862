#include "subdiff/quadrature.hpp"

#include <cmath>

namespace subdiff {

QuadratureRule interval_gauss3() {
    QuadratureRule rule;
    const double s = std::sqrt(0.6);  // sqrt(3/5)
    rule.points = {{0.5 * (1.0 - s), 0.0}, {0.5, 0.0}, {0.5 * (1.0 + s), 0.0}};
    rule.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    rule.degree = 5;
    return rule;
}

QuadratureRule interval_gauss5() {
    QuadratureRule rule;
    const double a = std::sqrt(245.0 - 14.0 * std::sqrt(70.0)) / 21.0;
    const double b = std::sqrt(245.0 + 14.0 * std::sqrt(70.0)) / 21.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    rule.points = {{0.5 * (1.0 - b), 0.0},
                   {0.5 * (1.0 - a), 0.0},
                   {0.5, 0.0},
                   {0.5 * (1.0 + a), 0.0},
                   {0.5 * (1.0 + b), 0.0}};
    rule.weights = {0.5 * wb, 0.5 * wa, 128.0 / 450.0, 0.5 * wa, 0.5 * wb};
    rule.degree = 9;
    return rule;
}

QuadratureRule triangle_midpoint3() {
    QuadratureRule rule;
    rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    rule.degree = 2;
    return rule;
}

QuadratureRule triangle_degree4() {
    QuadratureRule rule;
    const double a = 0.445948490915965;
    const double wa = 0.223381589678011 / 2.0;
    const double b = 0.091576213509771;
    const double wb = 0.109951743655322 / 2.0;
    rule.points = {{a, a},         {1.0 - 2.0 * a, a}, {a, 1.0 - 2.0 * a},
                   {b, b},         {1.0 - 2.0 * b, b}, {b, 1.0 - 2.0 * b}};
    rule.weights = {wa, wa, wa, wb, wb, wb};
    rule.degree = 4;
    return rule;
}

QuadratureRule system_rule(MeshKind kind) {
    return kind == MeshKind::interval ? interval_gauss3() : triangle_midpoint3();
}

QuadratureRule norm_rule(MeshKind kind) {
    return kind == MeshKind::interval ? interval_gauss5() : triangle_degree4();
}

} // namespace subdiff
