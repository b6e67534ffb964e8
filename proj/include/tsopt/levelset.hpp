#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "tsopt/mesh.hpp"
#include "tsopt/scalar.hpp"

namespace tsopt {

template <class T>
using LevelSet = std::vector<T>;

enum class NodeClass { TMinus, TPlus, S };

enum class PerturbationKind { TopoPlus, TopoMinus, Shape };

// Sign pattern of an element after rotating the pivot node to the first slot.
enum class CutTag { AllNeg, AllPos, APlus, AMinus, BPlus, BMinus, CPlus, CMinus };

std::string_view to_string(NodeClass c);
std::string_view to_string(CutTag t);

inline bool is_cut(CutTag t) { return t != CutTag::AllNeg && t != CutTag::AllPos; }

// Zero counts as positive.
template <class T>
CutTag classify_cut(const T& p1, const T& p2, const T& p3) {
    const bool n1 = is_negative(p1), n2 = is_negative(p2), n3 = is_negative(p3);
    if (n1 && n2 && n3) return CutTag::AllNeg;
    if (!n1 && !n2 && !n3) return CutTag::AllPos;
    if (!n1 && n2 && n3) return CutTag::APlus;
    if (n1 && !n2 && !n3) return CutTag::AMinus;
    if (n1 && !n2 && n3) return CutTag::BPlus;
    if (!n1 && n2 && !n3) return CutTag::BMinus;
    if (n1 && n2 && !n3) return CutTag::CPlus;
    return CutTag::CMinus;
}

template <class T>
NodeClass classify_node(const Mesh& mesh, const LevelSet<T>& phi, int k) {
    bool all_nonpos = true, all_nonneg = true;
    for (int v : mesh.one_ring[k]) {
        const int s = sign_of(phi[v]);
        if (s > 0) all_nonpos = false;
        if (s < 0) all_nonneg = false;
    }
    if (all_nonpos) return NodeClass::TMinus;
    if (all_nonneg) return NodeClass::TPlus;
    return NodeClass::S;
}

template <class T>
std::vector<NodeClass> classify_nodes(const Mesh& mesh, const LevelSet<T>& phi) {
    std::vector<NodeClass> out(mesh.num_nodes());
    for (int k = 0; k < mesh.num_nodes(); ++k) out[k] = classify_node(mesh, phi, k);
    return out;
}

template <class T>
LevelSet<T> perturb(const LevelSet<T>& phi, int k, const T& eps, PerturbationKind kind) {
    LevelSet<T> out = phi;
    switch (kind) {
        case PerturbationKind::TopoPlus: out[k] = eps; break;
        case PerturbationKind::TopoMinus: out[k] = -eps; break;
        case PerturbationKind::Shape: out[k] = out[k] + eps; break;
    }
    return out;
}

// Operator that realizes the derivative at a node of the given class.
inline PerturbationKind perturbation_for(NodeClass c) {
    switch (c) {
        case NodeClass::TMinus: return PerturbationKind::TopoPlus;
        case NodeClass::TPlus: return PerturbationKind::TopoMinus;
        default: return PerturbationKind::Shape;
    }
}

template <class U, class T>
LevelSet<U> promote(const LevelSet<T>& phi) {
    return LevelSet<U>(phi.begin(), phi.end());
}

// Exact integrals of the P1 basis over the negative part of the reference triangle.
template <class T>
struct CutIntegrals {
    T area{};
    std::array<T, 3> load{};
    std::array<std::array<T, 3>, 3> mass{};
};

template <class T>
CutIntegrals<T> full_reference_integrals() {
    CutIntegrals<T> r;
    r.area = T(0.5);
    for (int i = 0; i < 3; ++i) {
        r.load[i] = T(1.0 / 6.0);
        for (int j = 0; j < 3; ++j) r.mass[i][j] = T(i == j ? 2.0 / 24.0 : 1.0 / 24.0);
    }
    return r;
}

// Sub-triangle spanned by vertex a and the two zero crossings on its edges.
template <class T>
CutIntegrals<T> cap_integrals(const std::array<T, 3>& phi, int a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const T tb = phi[a] / (phi[a] - phi[b]);
    const T tc = phi[a] / (phi[a] - phi[c]);
    // Barycentric coordinates of the three cap vertices.
    std::array<std::array<T, 3>, 3> bary{};
    bary[0][a] = T(1.0);
    bary[1][a] = T(1.0) - tb;
    bary[1][b] = tb;
    bary[2][a] = T(1.0) - tc;
    bary[2][c] = tc;

    CutIntegrals<T> r;
    r.area = tb * tc * T(0.5);
    std::array<T, 3> sums{};
    for (int i = 0; i < 3; ++i) sums[i] = bary[0][i] + bary[1][i] + bary[2][i];
    for (int i = 0; i < 3; ++i) {
        r.load[i] = r.area * sums[i] / T(3.0);
        for (int j = 0; j < 3; ++j) {
            T acc = sums[i] * sums[j];
            for (int v = 0; v < 3; ++v) acc = acc + bary[v][i] * bary[v][j];
            r.mass[i][j] = r.area * acc / T(12.0);
        }
    }
    return r;
}

template <class T>
CutIntegrals<T> negative_integrals(const std::array<T, 3>& phi) {
    const std::array<bool, 3> neg{is_negative(phi[0]), is_negative(phi[1]), is_negative(phi[2])};
    const int count = neg[0] + neg[1] + neg[2];
    if (count == 3) return full_reference_integrals<T>();
    if (count == 0) return CutIntegrals<T>{};
    int lone = 0;
    for (int i = 0; i < 3; ++i)
        if ((count == 1) == neg[i]) lone = i;
    CutIntegrals<T> cap = cap_integrals(phi, lone);
    if (count == 1) return cap;
    CutIntegrals<T> r = full_reference_integrals<T>();
    r.area = r.area - cap.area;
    for (int i = 0; i < 3; ++i) {
        r.load[i] = r.load[i] - cap.load[i];
        for (int j = 0; j < 3; ++j) r.mass[i][j] = r.mass[i][j] - cap.mass[i][j];
    }
    return r;
}

template <class T>
std::array<T, 3> element_values(const Mesh& mesh, const LevelSet<T>& phi, int l) {
    const auto& e = mesh.elements[l];
    return {phi[e[0]], phi[e[1]], phi[e[2]]};
}

template <class T>
T element_negative_area(const Mesh& mesh, const LevelSet<T>& phi, int l) {
    const auto v = element_values(mesh, phi, l);
    const bool n0 = is_negative(v[0]), n1 = is_negative(v[1]), n2 = is_negative(v[2]);
    if (n0 && n1 && n2) return T(0.5 * mesh.det_jacobian[l]);
    if (!n0 && !n1 && !n2) return T(0.0);
    return negative_integrals(v).area * T(mesh.det_jacobian[l]);
}

template <class T>
T subdomain_area(const Mesh& mesh, const LevelSet<T>& phi) {
    T total(0.0);
    for (int l = 0; l < mesh.num_elements(); ++l) total = total + element_negative_area(mesh, phi, l);
    return total;
}

// Polygon clipping on real level sets.
using Polygon = std::vector<Point>;

double polygon_area(const Polygon& poly);
Point polygon_centroid(const Polygon& poly);

// Part of element l where phi < 0 (keep_negative) or phi >= 0.
Polygon clip_element(const Mesh& mesh, const LevelSet<double>& phi, int l, bool keep_negative);

// Exact area of the element region where phi_a and phi_b have opposite signs.
double element_symmetric_difference(const Mesh& mesh, const LevelSet<double>& phi_a,
                                    const LevelSet<double>& phi_b, int l);
double symmetric_difference_area(const Mesh& mesh, const LevelSet<double>& phi_a,
                                 const LevelSet<double>& phi_b);

struct Segment {
    int element;
    Point a;
    Point b;
};

// Zero level line per cut element; degenerate (point) crossings are skipped.
std::vector<Segment> interface_segments(const Mesh& mesh, const LevelSet<double>& phi);

template <class F>
LevelSet<double> interpolate(const Mesh& mesh, F&& f) {
    LevelSet<double> out(mesh.num_nodes());
    for (int k = 0; k < mesh.num_nodes(); ++k) out[k] = f(mesh.nodes[k]);
    return out;
}

struct Component {
    double area = 0.0;
    Point centroid;
};

// Connected components of the negative region, joined across shared edges that carry negative values.
std::vector<Component> negative_components(const Mesh& mesh, const LevelSet<double>& phi);

}  // namespace tsopt
