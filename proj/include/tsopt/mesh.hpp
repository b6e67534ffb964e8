#pragma once

#include <array>
#include <functional>
#include <vector>

namespace tsopt {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class BoundaryTag { Interior, Dirichlet, Neumann };

struct BoundaryData {
    std::function<bool(const Point&)> is_dirichlet;
    std::function<double(const Point&)> dirichlet_value;
    double neumann_value = 0.0;

    // Dirichlet u = y on the top and bottom edges, homogeneous Neumann on the sides.
    static BoundaryData unit_square_default();
};

struct Mesh {
    int level = 0;
    std::vector<Point> nodes;
    std::vector<std::array<int, 3>> elements;     // counter-clockwise
    std::vector<double> det_jacobian;              // 2 * element area
    std::vector<std::vector<int>> node_elements;   // elements touching a node
    std::vector<std::vector<int>> one_ring;        // sorted, includes the node itself
    std::vector<std::vector<int>> neighbors;       // graph adjacency, sorted, excludes the node

    std::vector<BoundaryTag> boundary;
    std::vector<double> dirichlet_value;
    std::vector<std::array<int, 2>> neumann_edges;
    double neumann_value = 0.0;

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    bool is_tagged() const { return boundary.size() == nodes.size(); }
    bool is_dirichlet(int k) const { return boundary[k] == BoundaryTag::Dirichlet; }

    // Position of node k in element l, or -1.
    int local_index(int l, int k) const;
    // Element vertices rotated so that node k comes first, orientation kept.
    std::array<int, 3> rotated(int l, int k) const;
};

// n x n squares on [0,1]^2, each split into four triangles through its center.
// Lattice nodes come first (row-major), then centers (row-major).
Mesh generate_crossed_mesh(int n);

void build_incidence(Mesh& mesh);

Mesh tag_boundary(Mesh mesh, const BoundaryData& data);

// Crossed mesh with the default boundary tagging.
Mesh unit_square_mesh(int n);

int crossed_mesh_node_count(int n);

}  // namespace tsopt
