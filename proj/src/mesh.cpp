#include "tsopt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tsopt/errors.hpp"

namespace tsopt {

namespace {

bool on_line(double v, double target) { return std::abs(v - target) < 1e-12; }

}  // namespace

BoundaryData BoundaryData::unit_square_default() {
    BoundaryData d;
    d.is_dirichlet = [](const Point& p) { return on_line(p.y, 0.0) || on_line(p.y, 1.0); };
    d.dirichlet_value = [](const Point& p) { return p.y; };
    d.neumann_value = 0.0;
    return d;
}

int Mesh::local_index(int l, int k) const {
    const auto& e = elements[l];
    for (int i = 0; i < 3; ++i)
        if (e[i] == k) return i;
    return -1;
}

std::array<int, 3> Mesh::rotated(int l, int k) const {
    const int i = local_index(l, k);
    if (i < 0) throw std::invalid_argument("node is not a vertex of the element");
    const auto& e = elements[l];
    return {e[i], e[(i + 1) % 3], e[(i + 2) % 3]};
}

int crossed_mesh_node_count(int n) { return (n + 1) * (n + 1) + n * n; }

Mesh generate_crossed_mesh(int n) {
    if (n < 1) throw std::invalid_argument("mesh level must be at least 1");
    Mesh m;
    m.level = n;
    const double h = 1.0 / n;
    m.nodes.reserve(crossed_mesh_node_count(n));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) m.nodes.push_back({i * h, j * h});
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m.nodes.push_back({(i + 0.5) * h, (j + 0.5) * h});

    auto lattice = [n](int i, int j) { return j * (n + 1) + i; };
    const int center0 = (n + 1) * (n + 1);
    m.elements.reserve(4 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = lattice(i, j), v10 = lattice(i + 1, j);
            const int v11 = lattice(i + 1, j + 1), v01 = lattice(i, j + 1);
            const int c = center0 + j * n + i;
            m.elements.push_back({v00, v10, c});
            m.elements.push_back({v10, v11, c});
            m.elements.push_back({v11, v01, c});
            m.elements.push_back({v01, v00, c});
        }
    }
    build_incidence(m);
    return m;
}

void build_incidence(Mesh& mesh) {
    const int nn = mesh.num_nodes();
    mesh.det_jacobian.assign(mesh.num_elements(), 0.0);
    mesh.node_elements.assign(nn, {});
    for (int l = 0; l < mesh.num_elements(); ++l) {
        const auto& e = mesh.elements[l];
        const Point &a = mesh.nodes[e[0]], &b = mesh.nodes[e[1]], &c = mesh.nodes[e[2]];
        const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        if (!(det > 0.0)) throw SingularElement("element with non-positive Jacobian");
        mesh.det_jacobian[l] = det;
        for (int v : e) mesh.node_elements[v].push_back(l);
    }
    mesh.one_ring.assign(nn, {});
    mesh.neighbors.assign(nn, {});
    for (int k = 0; k < nn; ++k) {
        auto& ring = mesh.one_ring[k];
        ring.push_back(k);
        for (int l : mesh.node_elements[k])
            for (int v : mesh.elements[l]) ring.push_back(v);
        std::sort(ring.begin(), ring.end());
        ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
        for (int v : ring)
            if (v != k) mesh.neighbors[k].push_back(v);
    }
}

Mesh tag_boundary(Mesh mesh, const BoundaryData& data) {
    const int nn = mesh.num_nodes();
    mesh.boundary.assign(nn, BoundaryTag::Interior);
    mesh.dirichlet_value.assign(nn, 0.0);
    mesh.neumann_edges.clear();
    mesh.neumann_value = data.neumann_value;

    // Boundary edges belong to exactly one element.
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& e : mesh.elements)
        for (int i = 0; i < 3; ++i) {
            int a = e[i], b = e[(i + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    std::vector<bool> on_boundary(nn, false);
    std::vector<std::array<int, 2>> boundary_edges;
    for (const auto& [edge, count] : edge_count)
        if (count == 1) {
            boundary_edges.push_back({edge.first, edge.second});
            on_boundary[edge.first] = on_boundary[edge.second] = true;
        }

    for (int k = 0; k < nn; ++k) {
        if (!on_boundary[k]) continue;
        if (data.is_dirichlet(mesh.nodes[k])) {
            mesh.boundary[k] = BoundaryTag::Dirichlet;
            mesh.dirichlet_value[k] = data.dirichlet_value(mesh.nodes[k]);
        } else {
            mesh.boundary[k] = BoundaryTag::Neumann;
        }
    }
    for (const auto& e : boundary_edges) {
        Point mid{0.5 * (mesh.nodes[e[0]].x + mesh.nodes[e[1]].x),
                  0.5 * (mesh.nodes[e[0]].y + mesh.nodes[e[1]].y)};
        if (!data.is_dirichlet(mid)) mesh.neumann_edges.push_back(e);
    }
    return mesh;
}

Mesh unit_square_mesh(int n) { return tag_boundary(generate_crossed_mesh(n), BoundaryData::unit_square_default()); }

}  // namespace tsopt
