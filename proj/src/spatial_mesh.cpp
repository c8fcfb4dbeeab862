#include "subdiff/spatial_mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

SpatialMesh SpatialMesh::interval(double b, int cells) {
    if (!(b > 0.0)) throw std::invalid_argument("SpatialMesh::interval: b must be positive");
    if (cells < 2) throw std::invalid_argument("SpatialMesh::interval: need at least 2 cells for an interior dof");

    SpatialMesh mesh;
    mesh.kind_ = MeshKind::interval;
    mesh.extent_ = b;
    mesh.cells_per_side_ = cells;
    mesh.h_ = b / cells;

    mesh.nodes_.resize(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i)
        mesh.nodes_[static_cast<std::size_t>(i)] = Point{b * (static_cast<double>(i) / cells), 0.0};
    mesh.nodes_.back().x = b;

    mesh.elements_.resize(static_cast<std::size_t>(cells));
    for (int e = 0; e < cells; ++e)
        mesh.elements_[static_cast<std::size_t>(e)] = {e, e + 1, -1};

    mesh.interior_of_node_.assign(mesh.nodes_.size(), -1);
    for (int i = 1; i < cells; ++i) {
        mesh.interior_of_node_[static_cast<std::size_t>(i)] = i - 1;
        mesh.node_of_interior_.push_back(i);
    }
    mesh.num_interior_ = cells - 1;
    return mesh;
}

SpatialMesh SpatialMesh::unit_square(int cells_per_side) {
    if (cells_per_side < 2)
        throw std::invalid_argument("SpatialMesh::unit_square: need at least 2 cells per side");

    SpatialMesh mesh;
    mesh.kind_ = MeshKind::unit_square;
    mesh.extent_ = 1.0;
    mesh.cells_per_side_ = cells_per_side;
    mesh.h_ = 1.0 / cells_per_side;

    const int np = cells_per_side + 1;
    mesh.nodes_.resize(static_cast<std::size_t>(np) * np);
    for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i)
            mesh.nodes_[static_cast<std::size_t>(j) * np + i] =
                Point{static_cast<double>(i) / cells_per_side, static_cast<double>(j) / cells_per_side};

    // Split each square along the diagonal from its lower-left corner
    // to its upper-right corner; vertices counterclockwise.
    mesh.elements_.reserve(2u * static_cast<std::size_t>(cells_per_side) * cells_per_side);
    auto id = [np](int i, int j) { return j * np + i; };
    for (int j = 0; j < cells_per_side; ++j) {
        for (int i = 0; i < cells_per_side; ++i) {
            mesh.elements_.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            mesh.elements_.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }

    mesh.interior_of_node_.assign(mesh.nodes_.size(), -1);
    for (int j = 1; j < cells_per_side; ++j) {
        for (int i = 1; i < cells_per_side; ++i) {
            mesh.interior_of_node_[static_cast<std::size_t>(id(i, j))] =
                static_cast<int>(mesh.node_of_interior_.size());
            mesh.node_of_interior_.push_back(id(i, j));
        }
    }
    mesh.num_interior_ = (cells_per_side - 1) * (cells_per_side - 1);
    return mesh;
}

int SpatialMesh::num_elements() const { return static_cast<int>(elements_.size()); }

double SpatialMesh::element_measure(int e) const {
    const auto& el = elements_[static_cast<std::size_t>(e)];
    if (kind_ == MeshKind::interval)
        return nodes_[static_cast<std::size_t>(el[1])].x - nodes_[static_cast<std::size_t>(el[0])].x;
    const Point& a = nodes_[static_cast<std::size_t>(el[0])];
    const Point& b = nodes_[static_cast<std::size_t>(el[1])];
    const Point& c = nodes_[static_cast<std::size_t>(el[2])];
    return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

} // namespace subdiff
