#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tsopt/mesh.hpp"

using namespace tsopt;

TEST_CASE("crossed mesh sizes") {
    for (int n : {1, 2, 8, 16, 32, 64}) {
        const Mesh m = generate_crossed_mesh(n);
        CHECK(m.num_nodes() == (n + 1) * (n + 1) + n * n);
        CHECK(m.num_nodes() == crossed_mesh_node_count(n));
        CHECK(m.num_elements() == 4 * n * n);
    }
    CHECK(crossed_mesh_node_count(8) == 145);
    CHECK(crossed_mesh_node_count(16) == 545);
    CHECK(crossed_mesh_node_count(32) == 2113);
    CHECK(crossed_mesh_node_count(64) == 8321);
    CHECK(crossed_mesh_node_count(128) == 33025);
}

TEST_CASE("elements are counter-clockwise and tile the square") {
    const Mesh m = generate_crossed_mesh(8);
    double total = 0.0;
    for (int l = 0; l < m.num_elements(); ++l) {
        const auto& e = m.elements[l];
        const Point &a = m.nodes[e[0]], &b = m.nodes[e[1]], &c = m.nodes[e[2]];
        const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        CHECK(det > 0.0);
        CHECK(m.det_jacobian[l] == doctest::Approx(det).epsilon(1e-14));
        total += 0.5 * det;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("incidence of the single-square mesh") {
    const Mesh m = unit_square_mesh(1);
    REQUIRE(m.num_nodes() == 5);
    const int center = 4;
    CHECK(m.node_elements[center].size() == 4);
    CHECK(m.one_ring[center] == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(m.neighbors[center] == std::vector<int>{0, 1, 2, 3});
    for (int corner = 0; corner < 4; ++corner) {
        CHECK(m.node_elements[corner].size() == 2);
        CHECK(m.one_ring[corner].size() == 4);
        CHECK(std::binary_search(m.one_ring[corner].begin(), m.one_ring[corner].end(), corner));
    }
}

TEST_CASE("one-ring is symmetric and contains the node") {
    const Mesh m = unit_square_mesh(4);
    for (int k = 0; k < m.num_nodes(); ++k) {
        CHECK(std::binary_search(m.one_ring[k].begin(), m.one_ring[k].end(), k));
        for (int j : m.neighbors[k]) CHECK(std::binary_search(m.neighbors[j].begin(), m.neighbors[j].end(), k));
        CHECK(m.one_ring[k].size() == m.neighbors[k].size() + 1);
    }
}

TEST_CASE("rotation brings the node first and keeps orientation") {
    const Mesh m = generate_crossed_mesh(2);
    for (int l = 0; l < m.num_elements(); ++l)
        for (int v : m.elements[l]) {
            const auto r = m.rotated(l, v);
            CHECK(r[0] == v);
            const int i = m.local_index(l, v);
            CHECK(r[1] == m.elements[l][(i + 1) % 3]);
            CHECK(r[2] == m.elements[l][(i + 2) % 3]);
        }
    CHECK(m.local_index(0, m.num_nodes() + 3) == -1);
}

TEST_CASE("default boundary tagging") {
    for (int n : {1, 8}) {
        const Mesh m = unit_square_mesh(n);
        int dirichlet = 0;
        for (int k = 0; k < m.num_nodes(); ++k) {
            const Point& p = m.nodes[k];
            const bool on_top_bottom = p.y == 0.0 || p.y == 1.0;
            CHECK(m.is_dirichlet(k) == on_top_bottom);
            if (m.is_dirichlet(k)) {
                ++dirichlet;
                CHECK(m.dirichlet_value[k] == p.y);
            }
        }
        CHECK(dirichlet == 2 * (n + 1));
        CHECK(static_cast<int>(m.neumann_edges.size()) == 2 * n);
        for (const auto& e : m.neumann_edges) {
            const Point &a = m.nodes[e[0]], &b = m.nodes[e[1]];
            CHECK(a.x == b.x);
            CHECK((a.x == 0.0 || a.x == 1.0));
        }
    }
}

TEST_CASE("custom boundary data") {
    BoundaryData data;
    data.is_dirichlet = [](const Point& p) { return p.x == 0.0; };
    data.dirichlet_value = [](const Point& p) { return 2.0 * p.y; };
    data.neumann_value = 0.5;
    const Mesh m = tag_boundary(generate_crossed_mesh(4), data);
    int dirichlet = 0;
    for (int k = 0; k < m.num_nodes(); ++k)
        if (m.is_dirichlet(k)) {
            ++dirichlet;
            CHECK(m.dirichlet_value[k] == 2.0 * m.nodes[k].y);
        }
    CHECK(dirichlet == 5);
    CHECK(m.neumann_value == 0.5);
    // Three remaining sides carry Neumann edges.
    CHECK(m.neumann_edges.size() == 12);
}
