#include "tsopt/fem.hpp"

#include <cmath>
#include <string>

namespace tsopt {

void ProblemParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
    };
    auto non_negative = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be non-negative");
    };
    positive(lambda1, "lambda1");
    positive(lambda2, "lambda2");
    non_negative(alpha1, "alpha1");
    non_negative(alpha2, "alpha2");
    non_negative(atilde1, "atilde1");
    non_negative(atilde2, "atilde2");
    for (double v : {f1, f2, c1, c2})
        if (!std::isfinite(v)) throw ConfigError("coefficients must be finite");
    if (c1 < 0.0 || c2 < 0.0) throw ConfigError("objective weights must be non-negative");
}

std::array<std::array<double, 2>, 3> hat_gradients(const Mesh& mesh, int l) {
    const auto& e = mesh.elements[l];
    const Point &a = mesh.nodes[e[0]], &b = mesh.nodes[e[1]], &c = mesh.nodes[e[2]];
    const double det = mesh.det_jacobian[l];
    // Rotated opposite edge over det.
    return {{{(b.y - c.y) / det, (c.x - b.x) / det},
             {(c.y - a.y) / det, (a.x - c.x) / det},
             {(a.y - b.y) / det, (b.x - a.x) / det}}};
}

Mat3 gradient_pairings(const Mesh& mesh, int l) {
    const auto grad = hat_gradients(mesh, l);
    Mat3 k{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k[i][j] = grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1];
    return k;
}

MeshContext::MeshContext(const Mesh& m) : mesh(&m) {
    if (!m.is_tagged()) throw ConfigError("mesh boundary is not tagged");
    pattern = SparsePattern::from_adjacency(m.neighbors);
    ordering = reverse_cuthill_mckee(*pattern);
    k0.reserve(m.num_elements());
    for (int l = 0; l < m.num_elements(); ++l) k0.push_back(gradient_pairings(m, l));
}

SparseMatrix<double> p1_mass_matrix(const MeshContext& ctx) {
    const Mesh& mesh = *ctx.mesh;
    SparseMatrix<double> m(ctx.pattern);
    for (int l = 0; l < mesh.num_elements(); ++l) {
        const auto& e = mesh.elements[l];
        const double w = mesh.det_jacobian[l] / 24.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(e[i], e[j]) += w * (i == j ? 2.0 : 1.0);
    }
    return m;
}

}  // namespace tsopt
