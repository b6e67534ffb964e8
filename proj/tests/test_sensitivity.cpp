#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tsopt/problem.hpp"
#include "tsopt/sensitivity.hpp"
#include "tsopt/verify.hpp"

using namespace tsopt;

namespace {

const CutTag kCutTags[] = {CutTag::APlus, CutTag::AMinus, CutTag::BPlus, CutTag::BMinus, CutTag::CPlus, CutTag::CMinus};

// Random nodal values with the sign pattern of the tag.
std::array<double, 3> sample(CutTag tag, std::mt19937_64& rng) {
    for (;;) {
        std::array<double, 3> v{oracle::nonzero(rng), oracle::nonzero(rng), oracle::nonzero(rng)};
        if (classify_cut(v[0], v[1], v[2]) == tag) return v;
    }
}

// Derivatives with respect to the first nodal value, read off a hyper-dual evaluation.
CutIntegrals<HyperDual> dual_integrals(const std::array<double, 3>& v) {
    return negative_integrals(std::array<HyperDual, 3>{HyperDual(v[0], 1.0, 0.0, 0.0), HyperDual(v[1]), HyperDual(v[2])});
}

// Moving-interface oracle on the reference triangle: the zero line moves with normal speed
// -psi_1 / |grad phi|, so d/dphi_1 of a negative-part integral of g is -int_interface g psi_1 / |grad phi|.
struct InterfaceRates {
    double area = 0.0;
    std::array<double, 3> load{};
    Mat3 mass{};
};

InterfaceRates interface_rates(const std::array<double, 3>& v) {
    const auto poly = oracle::negative_polygon(v);
    // Crossing points are the polygon vertices with a zero interpolated value.
    std::vector<oracle::Bary> cross;
    for (const auto& b : poly) {
        const double val = b[0] * v[0] + b[1] * v[1] + b[2] * v[2];
        if (std::abs(val) < 1e-12 && b[0] != 1.0 && b[1] != 1.0 && b[2] != 1.0) cross.push_back(b);
    }
    REQUIRE(cross.size() == 2);
    const double gx = v[1] - v[0], gy = v[2] - v[0];
    const double grad = std::hypot(gx, gy);
    const double len = std::hypot(cross[1][1] - cross[0][1], cross[1][2] - cross[0][2]);
    const double gp[3] = {-std::sqrt(3.0 / 5.0), 0.0, std::sqrt(3.0 / 5.0)};
    const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    InterfaceRates r;
    for (int q = 0; q < 3; ++q) {
        const double t = 0.5 * (gp[q] + 1.0);
        oracle::Bary b{};
        for (int c = 0; c < 3; ++c) b[c] = (1 - t) * cross[0][c] + t * cross[1][c];
        const double w = -0.5 * gw[q] * len * b[0] / grad;
        r.area += w;
        for (int i = 0; i < 3; ++i) {
            r.load[i] += w * b[i];
            for (int j = 0; j < 3; ++j) r.mass[i][j] += w * b[i] * b[j];
        }
    }
    return r;
}

int mirror_node(const Mesh& m, int k) {
    const Point& p = m.nodes[k];
    for (int j = 0; j < m.num_nodes(); ++j)
        if (std::abs(m.nodes[j].x - (1.0 - p.x)) < 1e-12 && std::abs(m.nodes[j].y - p.y) < 1e-12) return j;
    return -1;
}

}  // namespace

TEST_CASE("published single-element rate examples") {
    const auto b = cut_matrix_rates(CutTag::BPlus, {-1.0, 1.0, -1.0}, 1.0);
    CHECK(b.mass[0][0] == doctest::Approx(-1.0 / 128.0).epsilon(1e-14));
    const auto a = cut_matrix_rates(CutTag::APlus, {1.0, -1.0, -1.0}, 1.0);
    CHECK(a.load[1] == doctest::Approx(-1.0 / 32.0).epsilon(1e-14));
}

TEST_CASE("shape rates match hyper-dual differentiation of the cut integrals") {
    std::mt19937_64 rng(3);
    for (CutTag tag : kCutTags)
        for (int trial = 0; trial < 100; ++trial) {
            const auto v = sample(tag, rng);
            const double det = 0.5 + std::uniform_real_distribution<double>(0.0, 2.0)(rng);
            const auto hd = dual_integrals(v);
            CHECK(element_area_rate(NodeClass::S, tag, v, det) ==
                  doctest::Approx(hd.area.e1 * det).epsilon(1e-10).scale(1.0));
            const auto cm = cut_matrix_rates(tag, v, det);
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(cm.load[i] - hd.load[i].e1 * det) < 1e-10 * std::max(1.0, std::abs(cm.load[i])));
                for (int j = 0; j < 3; ++j)
                    CHECK(std::abs(cm.mass[i][j] - hd.mass[i][j].e1 * det) < 1e-10 * std::max(1.0, std::abs(cm.mass[i][j])));
            }
        }
}

TEST_CASE("shape rates match the moving-interface integrals") {
    std::mt19937_64 rng(5);
    for (CutTag tag : kCutTags)
        for (int trial = 0; trial < 50; ++trial) {
            const auto v = sample(tag, rng);
            const auto ref = interface_rates(v);
            CHECK(element_area_rate(NodeClass::S, tag, v, 1.0) == doctest::Approx(ref.area).epsilon(1e-10));
            const auto cm = cut_matrix_rates(tag, v, 1.0);
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(cm.load[i] - ref.load[i]) < 1e-12);
                for (int j = 0; j < 3; ++j) CHECK(std::abs(cm.mass[i][j] - ref.mass[i][j]) < 1e-12);
            }
        }
}

TEST_CASE("sign structure of the area rates") {
    std::mt19937_64 rng(9);
    for (CutTag tag : kCutTags)
        for (int trial = 0; trial < 50; ++trial) {
            const auto v = sample(tag, rng);
            // Raising a nodal value shrinks the negative region.
            CHECK(element_area_rate(NodeClass::S, tag, v, 1.0) <= 0.0);
        }
    CHECK(element_area_rate(NodeClass::TMinus, CutTag::APlus, {-1.0, -2.0, -0.5}, 1.0) < 0.0);
    CHECK(element_area_rate(NodeClass::TPlus, CutTag::AMinus, {1.0, 2.0, 0.5}, 1.0) > 0.0);
    CHECK_THROWS_AS(element_area_rate(NodeClass::TPlus, CutTag::AMinus, {1.0, 0.0, 0.5}, 1.0), DegenerateDenominator);
}

TEST_CASE("topological area rate is the second-order cap coefficient") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double p2 = -mag(rng), p3 = -mag(rng);
        // Node moved from its value to +h on an otherwise negative element.
        const HyperDual h(0.0, 1.0, 1.0, 0.0);
        const auto r = negative_integrals(std::array<HyperDual, 3>{h, HyperDual(p2), HyperDual(p3)});
        const double second = (r.area.e12 / 2.0) * 2.0;  // det = 2
        CHECK(element_area_rate(NodeClass::TMinus, CutTag::APlus, {-0.3, p2, p3}, 2.0) ==
              doctest::Approx(second).epsilon(1e-12));
    }
}

TEST_CASE("volume derivative is minus one on shape and T- nodes and plus one on T+ nodes") {
    const Mesh m = unit_square_mesh(8);
    const auto phi = interpolate(m, verification_levelset);
    int checked = 0;
    for (int k = 0; k < m.num_nodes(); ++k) {
        const double v = volume_derivative(m, phi, k);
        const double expected = classify_node(m, phi, k) == NodeClass::TPlus ? 1.0 : -1.0;
        CHECK(std::abs(v - expected) <= 1e-12);
        ++checked;
    }
    CHECK(checked == 145);
}

TEST_CASE("derivative field is invariant under positive scaling") {
    const Benchmark bm = make_benchmark(8);
    const auto phi = interpolate(*bm.mesh, verification_levelset);
    const auto base = analytic_solution(*bm.ctx, phi, bm.params);
    auto scaled = phi;
    for (double& v : scaled) v *= 0.37;
    const auto other = analytic_solution(*bm.ctx, scaled, bm.params);
    for (int k = 0; k < bm.mesh->num_nodes(); ++k)
        CHECK(other.field.value[k] == doctest::Approx(base.field.value[k]).epsilon(1e-11).scale(1e-12));
}

TEST_CASE("mirror-symmetric data gives a mirror-symmetric derivative") {
    const Mesh m = unit_square_mesh(8);
    const MeshContext ctx(m);
    ProblemParams prm;  // zero target, data symmetric under x -> 1 - x
    const auto phi = interpolate(m, [](const Point& p) { return std::hypot(p.x - 0.5, p.y - 0.45) - 0.23; });
    const auto sol = analytic_solution(ctx, phi, prm);
    for (int k = 0; k < m.num_nodes(); ++k) {
        const int j = mirror_node(m, k);
        REQUIRE(j >= 0);
        CHECK(sol.field.node_class[k] == sol.field.node_class[j]);
        CHECK(sol.field.value[k] == doctest::Approx(sol.field.value[j]).epsilon(1e-10).scale(1e-12));
    }
}

TEST_CASE("pure area cost has derivative minus c1 on shape and T- nodes") {
    const Mesh m = unit_square_mesh(8);
    const MeshContext ctx(m);
    ProblemParams prm;
    prm.c1 = 1.0;
    prm.c2 = 0.0;
    const auto phi = interpolate(m, verification_levelset);
    const auto sol = analytic_solution(ctx, phi, prm);
    for (int k = 0; k < m.num_nodes(); ++k) {
        const double expected = sol.field.node_class[k] == NodeClass::TPlus ? 1.0 : -1.0;
        CHECK(sol.field.value[k] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("generalized derivative") {
    SensitivityField f;
    f.value = {-2.0, 3.0, -1.0, 4.0, 0.5};
    f.node_class = {NodeClass::TMinus, NodeClass::TMinus, NodeClass::TPlus, NodeClass::TPlus, NodeClass::S};
    const auto g = generalized_derivative(f);
    CHECK(g == std::vector<double>{2.0, 0.0, -1.0, 0.0, -0.5});
    CHECK(f.count(NodeClass::TMinus) == 2);
}

TEST_CASE("continuous shape derivative adds the gradient jump term") {
    const Benchmark bm = make_benchmark(8);
    const Mesh& m = *bm.mesh;
    const auto phi = interpolate(m, verification_levelset);
    const auto sol = analytic_solution(*bm.ctx, phi, bm.params);
    int shape_nodes = 0;
    for (int k = 0; k < m.num_nodes(); ++k) {
        if (sol.field.node_class[k] != NodeClass::S) continue;
        ++shape_nodes;
        const double diff = continuous_shape_derivative(*bm.ctx, phi, sol.state, sol.adjoint, bm.params, k) -
                            sol.field.value[k];
        // Jump term with normals from the zero-line direction.
        const auto ad = area_derivative(m, phi, k);
        double sum = 0.0;
        for (const auto& er : ad.elements) {
            const auto segs = interface_segments(m, phi);
            for (const auto& s : segs) {
                if (s.element != er.element) continue;
                const double len = std::hypot(s.b.x - s.a.x, s.b.y - s.a.y);
                const double nx = -(s.b.y - s.a.y) / len, ny = (s.b.x - s.a.x) / len;
                const auto grads = hat_gradients(m, er.element);
                const auto& e = m.elements[er.element];
                double du = 0.0, dp = 0.0;
                for (int i = 0; i < 3; ++i) {
                    du += sol.state[e[i]] * (grads[i][0] * nx + grads[i][1] * ny);
                    dp += sol.adjoint[e[i]] * (grads[i][0] * nx + grads[i][1] * ny);
                }
                sum += du * dp * er.rate;
            }
        }
        const double expected = -2.0 * bm.params.d_lambda() / ad.total * sum;
        CHECK(std::abs(diff - expected) <= 1e-12);
    }
    CHECK(shape_nodes > 0);
}
