#pragma once

#include <array>
#include <vector>

namespace subdiff {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

enum class MeshKind { interval, unit_square };

/// P1 mesh with interior-dof numbering (homogeneous Dirichlet dofs
/// eliminated). Interval (0, b) with uniform cells, or the unit square
/// triangulated by splitting each cell along the lower-left to
/// upper-right diagonal.
class SpatialMesh {
public:
    /// Uniform mesh of (0, b) with `cells` subintervals; interior nodes
    /// numbered left to right. Requires b > 0, cells >= 2.
    static SpatialMesh interval(double b, int cells);

    /// Structured triangulation of (0,1)^2 with `cells_per_side`
    /// squares per side, each split into two triangles; interior nodes
    /// numbered lexicographically (x fastest). Requires cells_per_side >= 2.
    static SpatialMesh unit_square(int cells_per_side);

    MeshKind kind() const { return kind_; }
    double extent() const { return extent_; }            ///< b for interval, 1 for square
    int cells_per_side() const { return cells_per_side_; }
    double h() const { return h_; }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_interior() const { return num_interior_; }
    const Point& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    /// Interior dof index of a node, or -1 on the boundary.
    int interior_index(int node) const { return interior_of_node_[static_cast<std::size_t>(node)]; }
    int node_of_interior(int dof) const { return node_of_interior_[static_cast<std::size_t>(dof)]; }

    int num_elements() const;
    /// Element connectivity; entry 2 is -1 for interval cells.
    const std::array<int, 3>& element(int e) const { return elements_[static_cast<std::size_t>(e)]; }
    double element_measure(int e) const;

private:
    MeshKind kind_ = MeshKind::interval;
    double extent_ = 0.0;
    int cells_per_side_ = 0;
    double h_ = 0.0;
    int num_interior_ = 0;
    std::vector<Point> nodes_;
    std::vector<std::array<int, 3>> elements_;
    std::vector<int> interior_of_node_;
    std::vector<int> node_of_interior_;
};

} // namespace subdiff
