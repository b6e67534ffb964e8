#pragma once

#include <array>
#include <memory>
#include <vector>

#include "tsopt/levelset.hpp"
#include "tsopt/mesh.hpp"
#include "tsopt/sparse.hpp"

namespace tsopt {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Two-phase coefficients: slot 1 lives inside the subdomain (phi < 0), slot 2 outside.
struct ProblemParams {
    double lambda1 = 1.0, lambda2 = 0.6;
    double alpha1 = 1.0, alpha2 = 0.2;
    double atilde1 = 1.0, atilde2 = 0.9;
    double f1 = 1.0, f2 = 0.5;
    double c1 = 0.0, c2 = 1.0;
    std::vector<double> target;  // nodal values of the reference state; empty means zero

    double d_lambda() const { return lambda1 - lambda2; }
    double d_alpha() const { return alpha1 - alpha2; }
    double d_atilde() const { return atilde1 - atilde2; }
    double d_f() const { return f1 - f2; }

    // Throws ConfigError on non-physical data.
    void validate() const;
};

// Gradients of the three hat functions on element l.
std::array<std::array<double, 2>, 3> hat_gradients(const Mesh& mesh, int l);

// Gradient pairings of the hat functions on element l, without the area factor.
Mat3 gradient_pairings(const Mesh& mesh, int l);

// Per-mesh data shared by every assembly on that mesh.
struct MeshContext {
    const Mesh* mesh = nullptr;
    std::shared_ptr<const SparsePattern> pattern;
    std::vector<int> ordering;
    std::vector<Mat3> k0;

    explicit MeshContext(const Mesh& m);
};

template <class T>
struct AssembledSystem {
    SparseMatrix<T> matrix;       // M + K with Dirichlet rows and columns eliminated
    std::vector<T> rhs;           // load with lifting of the Dirichlet data
    SparseMatrix<T> objective_mass;  // weighted mass matrix of the tracking term, not eliminated
    T area{};                     // measure of the subdomain
};

template <class T>
struct ElementMatrices {
    std::array<std::array<T, 3>, 3> system{};
    std::array<std::array<T, 3>, 3> objective_mass{};
    std::array<T, 3> load{};
    T negative_area{};
};

template <class T>
ElementMatrices<T> element_matrices(const MeshContext& ctx, const LevelSet<T>& phi, const ProblemParams& prm, int l) {
    const Mesh& mesh = *ctx.mesh;
    const double det = mesh.det_jacobian[l];
    const auto cut = negative_integrals(element_values(mesh, phi, l));
    const auto full = full_reference_integrals<double>();

    ElementMatrices<T> em;
    const T area_neg = cut.area * T(det);
    const T area_pos = T(0.5 * det) - area_neg;
    em.negative_area = area_neg;
    const T stiff = T(prm.lambda1) * area_neg + T(prm.lambda2) * area_pos;
    for (int i = 0; i < 3; ++i) {
        const T load_neg = cut.load[i];
        em.load[i] = (T(prm.f1) * load_neg + T(prm.f2) * (T(full.load[i]) - load_neg)) * T(det);
        for (int j = 0; j < 3; ++j) {
            const T m_neg = cut.mass[i][j];
            const T m_pos = T(full.mass[i][j]) - m_neg;
            em.system[i][j] = (T(prm.alpha1) * m_neg + T(prm.alpha2) * m_pos) * T(det) + T(ctx.k0[l][i][j]) * stiff;
            em.objective_mass[i][j] = (T(prm.atilde1) * m_neg + T(prm.atilde2) * m_pos) * T(det);
        }
    }
    return em;
}

template <class T>
AssembledSystem<T> assemble(const MeshContext& ctx, const LevelSet<T>& phi, const ProblemParams& prm) {
    const Mesh& mesh = *ctx.mesh;
    AssembledSystem<T> sys;
    SparseMatrix<T> a(ctx.pattern);
    sys.objective_mass = SparseMatrix<T>(ctx.pattern);
    std::vector<T> f(mesh.num_nodes(), T(0.0));
    T area(0.0);
    for (int l = 0; l < mesh.num_elements(); ++l) {
        const auto em = element_matrices(ctx, phi, prm, l);
        const auto& e = mesh.elements[l];
        for (int i = 0; i < 3; ++i) {
            f[e[i]] = f[e[i]] + em.load[i];
            for (int j = 0; j < 3; ++j) {
                const int pos = ctx.pattern->find(e[i], e[j]);
                a.values[pos] = a.values[pos] + em.system[i][j];
                sys.objective_mass.values[pos] = sys.objective_mass.values[pos] + em.objective_mass[i][j];
            }
        }
        area = area + em.negative_area;
    }
    for (const auto& edge : mesh.neumann_edges) {
        const Point &p = mesh.nodes[edge[0]], &q = mesh.nodes[edge[1]];
        const double half = 0.5 * mesh.neumann_value * std::hypot(q.x - p.x, q.y - p.y);
        f[edge[0]] = f[edge[0]] + T(half);
        f[edge[1]] = f[edge[1]] + T(half);
    }
    // Dirichlet elimination keeping the matrix symmetric.
    const auto& pat = *ctx.pattern;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (mesh.is_dirichlet(i)) continue;
        for (int p = pat.row_start[i]; p < pat.row_start[i + 1]; ++p) {
            const int j = pat.cols[p];
            if (mesh.is_dirichlet(j)) {
                f[i] = f[i] - a.values[p] * T(mesh.dirichlet_value[j]);
                a.values[p] = T(0.0);
            }
        }
    }
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (!mesh.is_dirichlet(i)) continue;
        for (int p = pat.row_start[i]; p < pat.row_start[i + 1]; ++p) a.values[p] = T(pat.cols[p] == i ? 1.0 : 0.0);
        f[i] = T(mesh.dirichlet_value[i]);
    }
    sys.matrix = std::move(a);
    sys.rhs = std::move(f);
    sys.area = area;
    return sys;
}

template <class T>
std::vector<T> target_state(const Mesh& mesh, const ProblemParams& prm) {
    if (prm.target.empty()) return std::vector<T>(mesh.num_nodes(), T(0.0));
    return std::vector<T>(prm.target.begin(), prm.target.end());
}

template <class T>
struct StateAdjoint {
    std::vector<T> state;
    std::vector<T> adjoint;
};

template <class T>
std::vector<T> adjoint_rhs(const Mesh& mesh, const AssembledSystem<T>& sys, const std::vector<T>& u, const ProblemParams& prm) {
    const auto uhat = target_state<T>(mesh, prm);
    std::vector<T> diff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - uhat[i];
    auto rhs = sys.objective_mass.multiply(diff);
    for (int i = 0; i < mesh.num_nodes(); ++i) rhs[i] = mesh.is_dirichlet(i) ? T(0.0) : T(-2.0 * prm.c2) * rhs[i];
    return rhs;
}

template <class T>
std::vector<T> solve_state(const MeshContext& ctx, const AssembledSystem<T>& sys) {
    EnvelopeLdlt<T> ldlt(sys.matrix, ctx.ordering);
    return ldlt.solve(sys.rhs);
}

template <class T>
std::vector<T> solve_adjoint(const MeshContext& ctx, const AssembledSystem<T>& sys, const std::vector<T>& u,
                             const ProblemParams& prm) {
    EnvelopeLdlt<T> ldlt(sys.matrix, ctx.ordering);
    return ldlt.solve(adjoint_rhs(*ctx.mesh, sys, u, prm));
}

// One factorization for both solves.
template <class T>
StateAdjoint<T> solve_state_adjoint(const MeshContext& ctx, const AssembledSystem<T>& sys, const ProblemParams& prm) {
    EnvelopeLdlt<T> ldlt(sys.matrix, ctx.ordering);
    StateAdjoint<T> out;
    out.state = ldlt.solve(sys.rhs);
    out.adjoint = ldlt.solve(adjoint_rhs(*ctx.mesh, sys, out.state, prm));
    return out;
}

template <class T>
T objective(const MeshContext& ctx, const AssembledSystem<T>& sys, const std::vector<T>& u, const ProblemParams& prm) {
    const auto uhat = target_state<T>(*ctx.mesh, prm);
    std::vector<T> diff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - uhat[i];
    return T(prm.c1) * sys.area + T(prm.c2) * sys.objective_mass.quadratic_form(diff);
}

// Assemble, solve and evaluate in one pass.
template <class T>
T evaluate_objective(const MeshContext& ctx, const LevelSet<T>& phi, const ProblemParams& prm) {
    const auto sys = assemble(ctx, phi, prm);
    const auto u = solve_state(ctx, sys);
    return objective(ctx, sys, u, prm);
}

// Unweighted P1 mass matrix on the whole domain.
SparseMatrix<double> p1_mass_matrix(const MeshContext& ctx);

}  // namespace tsopt
