#include "subdiff/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "subdiff/sparse_solver.hpp"

namespace subdiff {

namespace {

int vertex_count(const SpatialMesh& mesh) { return mesh.kind() == MeshKind::interval ? 2 : 3; }

std::vector<std::vector<int>> interior_adjacency(const SpatialMesh& mesh) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(mesh.num_interior()));
    const int nv = vertex_count(mesh);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        for (int a = 0; a < nv; ++a) {
            const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (ia < 0) continue;
            for (int b = 0; b < nv; ++b) {
                const int ib = mesh.interior_index(el[static_cast<std::size_t>(b)]);
                if (ib >= 0) adj[static_cast<std::size_t>(ia)].push_back(ib);
            }
        }
    }
    return adj;
}

CsrMatrix pattern_matrix(const SpatialMesh& mesh) {
    return CsrMatrix::from_adjacency(mesh.num_interior(), interior_adjacency(mesh));
}

// Constant shape-function gradients on one element.
void element_gradients(const SpatialMesh& mesh, int e, std::array<Vec2, 3>& grad) {
    const auto& el = mesh.element(e);
    if (mesh.kind() == MeshKind::interval) {
        const double h = mesh.node(el[1]).x - mesh.node(el[0]).x;
        grad[0] = {-1.0 / h, 0.0};
        grad[1] = {1.0 / h, 0.0};
        grad[2] = {0.0, 0.0};
        return;
    }
    const Point& p0 = mesh.node(el[0]);
    const Point& p1 = mesh.node(el[1]);
    const Point& p2 = mesh.node(el[2]);
    const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    grad[0] = {(p1.y - p2.y) / det, (p2.x - p1.x) / det};
    grad[1] = {(p2.y - p0.y) / det, (p0.x - p2.x) / det};
    grad[2] = {(p0.y - p1.y) / det, (p1.x - p0.x) / det};
}

void shape_values(MeshKind kind, double xi, double eta, std::array<double, 3>& lambda) {
    if (kind == MeshKind::interval) {
        lambda = {1.0 - xi, xi, 0.0};
    } else {
        lambda = {1.0 - xi - eta, xi, eta};
    }
}

Point map_point(const SpatialMesh& mesh, int e, double xi, double eta) {
    const auto& el = mesh.element(e);
    const Point& p0 = mesh.node(el[0]);
    if (mesh.kind() == MeshKind::interval) {
        const Point& p1 = mesh.node(el[1]);
        return {p0.x + xi * (p1.x - p0.x), 0.0};
    }
    const Point& p1 = mesh.node(el[1]);
    const Point& p2 = mesh.node(el[2]);
    return {p0.x + xi * (p1.x - p0.x) + eta * (p2.x - p0.x),
            p0.y + xi * (p1.y - p0.y) + eta * (p2.y - p0.y)};
}

// Jacobian factor mapping reference weights to physical measure:
// weights already sum to the reference measure (1 or 1/2).
double measure_scale(const SpatialMesh& mesh, int e) {
    return mesh.kind() == MeshKind::interval ? mesh.element_measure(e) : 2.0 * mesh.element_measure(e);
}

} // namespace

CsrMatrix assemble_mass(const SpatialMesh& mesh) {
    CsrMatrix m = pattern_matrix(mesh);
    const int nv = vertex_count(mesh);
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double meas = mesh.element_measure(e);
        for (int a = 0; a < nv; ++a) {
            const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (ia < 0) continue;
            for (int b = 0; b < nv; ++b) {
                const int ib = mesh.interior_index(el[static_cast<std::size_t>(b)]);
                if (ib < 0) continue;
                double v;
                if (mesh.kind() == MeshKind::interval)
                    v = (a == b ? meas / 3.0 : meas / 6.0);
                else
                    v = (a == b ? meas / 6.0 : meas / 12.0);
                m.add(ia, ib, v);
            }
        }
    }
    return m;
}

CsrMatrix assemble_stiffness(const SpatialMesh& mesh) {
    CsrMatrix k = pattern_matrix(mesh);
    const int nv = vertex_count(mesh);
    std::array<Vec2, 3> grad;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double meas = mesh.element_measure(e);
        element_gradients(mesh, e, grad);
        for (int a = 0; a < nv; ++a) {
            const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (ia < 0) continue;
            for (int b = 0; b < nv; ++b) {
                const int ib = mesh.interior_index(el[static_cast<std::size_t>(b)]);
                if (ib < 0) continue;
                k.add(ia, ib,
                      meas * (grad[static_cast<std::size_t>(a)].x * grad[static_cast<std::size_t>(b)].x +
                              grad[static_cast<std::size_t>(a)].y * grad[static_cast<std::size_t>(b)].y));
            }
        }
    }
    return k;
}

std::vector<double> assemble_nodal_integrals(const SpatialMesh& mesh) {
    std::vector<double> c(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    const int nv = vertex_count(mesh);
    const double frac = mesh.kind() == MeshKind::interval ? 0.5 : 1.0 / 3.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double meas = mesh.element_measure(e);
        for (int a = 0; a < nv; ++a) {
            const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (ia >= 0) c[static_cast<std::size_t>(ia)] += frac * meas;
        }
    }
    return c;
}

std::vector<double> assemble_load(const SpatialMesh& mesh,
                                  const std::function<double(Point, double)>& g, double t,
                                  const QuadratureRule& rule) {
    return assemble_reaction(
        mesh, [&](Point p, double) { return g(p, t); }, std::vector<double>(static_cast<std::size_t>(mesh.num_interior()), 0.0),
        rule);
}

std::vector<double> assemble_reaction(const SpatialMesh& mesh,
                                      const std::function<double(Point, double)>& s,
                                      std::span<const double> U, const QuadratureRule& rule) {
    if (static_cast<int>(U.size()) != mesh.num_interior())
        throw std::invalid_argument("assemble_reaction: coefficient vector size mismatch");

    std::vector<double> out(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    const int nv = vertex_count(mesh);
    std::array<double, 3> lambda;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double scale = measure_scale(mesh, e);
        // cache element coefficients (0 on boundary nodes)
        std::array<double, 3> coef = {0.0, 0.0, 0.0};
        std::array<int, 3> dof = {-1, -1, -1};
        for (int a = 0; a < nv; ++a) {
            dof[static_cast<std::size_t>(a)] = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (dof[static_cast<std::size_t>(a)] >= 0)
                coef[static_cast<std::size_t>(a)] = U[static_cast<std::size_t>(dof[static_cast<std::size_t>(a)])];
        }
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            shape_values(mesh.kind(), rule.points[q].xi, rule.points[q].eta, lambda);
            double uh = 0.0;
            for (int a = 0; a < nv; ++a) uh += coef[static_cast<std::size_t>(a)] * lambda[static_cast<std::size_t>(a)];
            const Point p = map_point(mesh, e, rule.points[q].xi, rule.points[q].eta);
            const double sv = s(p, uh) * rule.weights[q] * scale;
            for (int a = 0; a < nv; ++a)
                if (dof[static_cast<std::size_t>(a)] >= 0)
                    out[static_cast<std::size_t>(dof[static_cast<std::size_t>(a)])] +=
                        sv * lambda[static_cast<std::size_t>(a)];
        }
    }
    return out;
}

CsrMatrix assemble_reaction_jacobian(const SpatialMesh& mesh,
                                     const std::function<double(Point, double)>& sprime,
                                     std::span<const double> U, const QuadratureRule& rule) {
    if (static_cast<int>(U.size()) != mesh.num_interior())
        throw std::invalid_argument("assemble_reaction_jacobian: coefficient vector size mismatch");

    CsrMatrix m = pattern_matrix(mesh);
    const int nv = vertex_count(mesh);
    std::array<double, 3> lambda;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double scale = measure_scale(mesh, e);
        std::array<double, 3> coef = {0.0, 0.0, 0.0};
        std::array<int, 3> dof = {-1, -1, -1};
        for (int a = 0; a < nv; ++a) {
            dof[static_cast<std::size_t>(a)] = mesh.interior_index(el[static_cast<std::size_t>(a)]);
            if (dof[static_cast<std::size_t>(a)] >= 0)
                coef[static_cast<std::size_t>(a)] = U[static_cast<std::size_t>(dof[static_cast<std::size_t>(a)])];
        }
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            shape_values(mesh.kind(), rule.points[q].xi, rule.points[q].eta, lambda);
            double uh = 0.0;
            for (int a = 0; a < nv; ++a) uh += coef[static_cast<std::size_t>(a)] * lambda[static_cast<std::size_t>(a)];
            const Point p = map_point(mesh, e, rule.points[q].xi, rule.points[q].eta);
            const double sv = sprime(p, uh) * rule.weights[q] * scale;
            for (int a = 0; a < nv; ++a) {
                if (dof[static_cast<std::size_t>(a)] < 0) continue;
                for (int b = 0; b < nv; ++b)
                    if (dof[static_cast<std::size_t>(b)] >= 0)
                        m.add(dof[static_cast<std::size_t>(a)], dof[static_cast<std::size_t>(b)],
                              sv * lambda[static_cast<std::size_t>(a)] * lambda[static_cast<std::size_t>(b)]);
            }
        }
    }
    return m;
}

std::vector<double> ritz_projection(const SpatialMesh& mesh,
                                    const std::function<Vec2(Point)>& grad_w) {
    const QuadratureRule rule = norm_rule(mesh.kind());
    std::vector<double> rhs(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    const int nv = vertex_count(mesh);
    std::array<Vec2, 3> grad;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const auto& el = mesh.element(e);
        const double scale = measure_scale(mesh, e);
        element_gradients(mesh, e, grad);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Point p = map_point(mesh, e, rule.points[q].xi, rule.points[q].eta);
            const Vec2 gw = grad_w(p);
            const double w = rule.weights[q] * scale;
            for (int a = 0; a < nv; ++a) {
                const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
                if (ia >= 0)
                    rhs[static_cast<std::size_t>(ia)] +=
                        w * (gw.x * grad[static_cast<std::size_t>(a)].x + gw.y * grad[static_cast<std::size_t>(a)].y);
            }
        }
    }
    return solve_sparse(assemble_stiffness(mesh), rhs);
}

double p1_value(const SpatialMesh& mesh, std::span<const double> U, int e, double xi, double eta) {
    const auto& el = mesh.element(e);
    std::array<double, 3> lambda;
    shape_values(mesh.kind(), xi, eta, lambda);
    double v = 0.0;
    const int nv = vertex_count(mesh);
    for (int a = 0; a < nv; ++a) {
        const int ia = mesh.interior_index(el[static_cast<std::size_t>(a)]);
        if (ia >= 0) v += U[static_cast<std::size_t>(ia)] * lambda[static_cast<std::size_t>(a)];
    }
    return v;
}

} // namespace subdiff
