#include "subdiff/analysis.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "subdiff/assembly.hpp"

namespace subdiff {

namespace {

struct ElementGeometry {
    std::array<int, 3> dofs = {-1, -1, -1};
    std::array<double, 3> coef = {0.0, 0.0, 0.0};
};

void gather_coefficients(const SpatialMesh& mesh, std::span<const double> U, int e,
                         ElementGeometry& geo, int nv) {
    const auto& el = mesh.element(e);
    for (int a = 0; a < nv; ++a) {
        const int dof = mesh.interior_index(el[static_cast<std::size_t>(a)]);
        geo.dofs[static_cast<std::size_t>(a)] = dof;
        geo.coef[static_cast<std::size_t>(a)] = dof >= 0 ? U[static_cast<std::size_t>(dof)] : 0.0;
    }
}

} // namespace

double l2_error(const SpatialMesh& mesh, std::span<const double> U,
                const std::function<double(Point)>& exact, const QuadratureRule& rule) {
    if (static_cast<int>(U.size()) != mesh.num_interior())
        throw std::invalid_argument("l2_error: coefficient vector size mismatch");

    const int nv = mesh.kind() == MeshKind::interval ? 2 : 3;
    const double jac = mesh.kind() == MeshKind::interval ? 1.0 : 2.0;
    ElementGeometry geo;
    double acc = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        gather_coefficients(mesh, U, e, geo, nv);
        const double scale = jac * mesh.element_measure(e);
        const auto& el = mesh.element(e);
        const Point& p0 = mesh.node(el[0]);
        const Point& p1 = mesh.node(el[1]);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double xi = rule.points[q].xi;
            const double eta = rule.points[q].eta;
            Point p;
            double uh;
            if (mesh.kind() == MeshKind::interval) {
                p = {p0.x + xi * (p1.x - p0.x), 0.0};
                uh = geo.coef[0] * (1.0 - xi) + geo.coef[1] * xi;
            } else {
                const Point& p2 = mesh.node(el[2]);
                p = {p0.x + xi * (p1.x - p0.x) + eta * (p2.x - p0.x),
                     p0.y + xi * (p1.y - p0.y) + eta * (p2.y - p0.y)};
                uh = geo.coef[0] * (1.0 - xi - eta) + geo.coef[1] * xi + geo.coef[2] * eta;
            }
            const double diff = exact(p) - uh;
            acc += rule.weights[q] * scale * diff * diff;
        }
    }
    return std::sqrt(acc);
}

double h1_semi_error(const SpatialMesh& mesh, std::span<const double> U,
                     const std::function<Vec2(Point)>& grad_exact, const QuadratureRule& rule) {
    if (static_cast<int>(U.size()) != mesh.num_interior())
        throw std::invalid_argument("h1_semi_error: coefficient vector size mismatch");

    const int nv = mesh.kind() == MeshKind::interval ? 2 : 3;
    const double jac = mesh.kind() == MeshKind::interval ? 1.0 : 2.0;
    ElementGeometry geo;
    double acc = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) {
        gather_coefficients(mesh, U, e, geo, nv);
        const double scale = jac * mesh.element_measure(e);
        const auto& el = mesh.element(e);
        const Point& p0 = mesh.node(el[0]);
        const Point& p1 = mesh.node(el[1]);

        // grad U_h is constant per element
        Vec2 guh{0.0, 0.0};
        if (mesh.kind() == MeshKind::interval) {
            const double h = p1.x - p0.x;
            guh.x = (geo.coef[1] - geo.coef[0]) / h;
        } else {
            const Point& p2 = mesh.node(el[2]);
            const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
            const Vec2 g0{(p1.y - p2.y) / det, (p2.x - p1.x) / det};
            const Vec2 g1{(p2.y - p0.y) / det, (p0.x - p2.x) / det};
            const Vec2 g2{(p0.y - p1.y) / det, (p1.x - p0.x) / det};
            guh.x = geo.coef[0] * g0.x + geo.coef[1] * g1.x + geo.coef[2] * g2.x;
            guh.y = geo.coef[0] * g0.y + geo.coef[1] * g1.y + geo.coef[2] * g2.y;
        }
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double xi = rule.points[q].xi;
            const double eta = rule.points[q].eta;
            Point p;
            if (mesh.kind() == MeshKind::interval) {
                p = {p0.x + xi * (p1.x - p0.x), 0.0};
            } else {
                const Point& p2 = mesh.node(el[2]);
                p = {p0.x + xi * (p1.x - p0.x) + eta * (p2.x - p0.x),
                     p0.y + xi * (p1.y - p0.y) + eta * (p2.y - p0.y)};
            }
            const Vec2 ge = grad_exact(p);
            const double dx = ge.x - guh.x;
            const double dy = ge.y - guh.y;
            acc += rule.weights[q] * scale * (dx * dx + dy * dy);
        }
    }
    return std::sqrt(acc);
}

std::string to_string(NormTag tag) {
    switch (tag) {
        case NormTag::linf_time_l2: return "Linf_time_L2";
        case NormTag::l2_final_family: return "L2_final_family";
        case NormTag::h1_semi: return "H1_semi";
    }
    return "?";
}

TimeMaxError max_over_time(const SpatialMesh& mesh,
                           const std::vector<std::vector<double>>& history, const TimeGrid& grid,
                           const std::function<double(Point, double)>& u_exact,
                           const std::function<Vec2(Point, double)>& grad_u_exact, NormTag norm) {
    if (static_cast<int>(history.size()) != grid.N + 1)
        throw std::invalid_argument("max_over_time: history must hold levels 0..N");

    const QuadratureRule rule = norm_rule(mesh.kind());
    TimeMaxError best;
    for (int n = 1; n <= grid.N; ++n) {
        const double t = grid.t(n);
        double err;
        if (norm == NormTag::h1_semi)
            err = h1_semi_error(mesh, history[static_cast<std::size_t>(n)],
                                [&](Point p) { return grad_u_exact(p, t); }, rule);
        else
            err = l2_error(mesh, history[static_cast<std::size_t>(n)],
                           [&](Point p) { return u_exact(p, t); }, rule);
        if (err > best.value) {
            best.value = err;
            best.argmax = n;
        }
    }
    return best;
}

std::vector<std::optional<double>> observed_orders(std::span<const double> errors,
                                                   std::span<const double> resolutions) {
    if (errors.size() != resolutions.size())
        throw std::invalid_argument("observed_orders: size mismatch");
    if (errors.size() < 2) throw std::invalid_argument("observed_orders: need at least 2 points");
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (!(resolutions[i] > resolutions[i - 1]))
            throw std::invalid_argument("observed_orders: resolutions must increase strictly");

    std::vector<std::optional<double>> orders(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (errors[i] > 0.0 && errors[i + 1] > 0.0)
            orders[i] = std::log(errors[i] / errors[i + 1]) / std::log(resolutions[i + 1] / resolutions[i]);
    }
    return orders;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_csv(std::ostream& os, std::span<const ErrorRecord> records) {
    os << "example,alpha,r,N,Ms,norm,error,order\n";
    for (const auto& rec : records) {
        os << rec.example << ',' << format_double(rec.alpha) << ',' << format_double(rec.r) << ','
           << rec.N << ',' << rec.Ms << ',' << to_string(rec.norm) << ','
           << format_double(rec.error) << ',';
        if (rec.order) os << format_double(*rec.order);
        os << '\n';
    }
}

} // namespace subdiff
