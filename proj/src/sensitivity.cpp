#include "tsopt/sensitivity.hpp"

#include <algorithm>
#include <cmath>

namespace tsopt {

namespace {

std::array<int, 3> rotation(const Mesh& mesh, int l, int k) {
    const int i = mesh.local_index(l, k);
    return {i, (i + 1) % 3, (i + 2) % 3};
}

template <class V>
std::array<double, 3> gather(const Mesh& mesh, const V& values, int l, const std::array<int, 3>& rot) {
    const auto& e = mesh.elements[l];
    return {values[e[rot[0]]], values[e[rot[1]]], values[e[rot[2]]]};
}

double sign_of_tag(CutTag tag) {
    return (tag == CutTag::APlus || tag == CutTag::BPlus || tag == CutTag::CPlus) ? 1.0 : -1.0;
}

double bilinear(const std::array<double, 3>& a, const Mat3& m, const std::array<double, 3>& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i] * m[i][j] * b[j];
    return s;
}

Mat3 rotated_pairings(const MeshContext& ctx, int l, const std::array<int, 3>& rot) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = ctx.k0[l][rot[i]][rot[j]];
    return r;
}

}  // namespace

double element_area_rate(NodeClass cls, CutTag tag, const std::array<double, 3>& phi, double det) {
    const double p1 = phi[0], p2 = phi[1], p3 = phi[2];
    if (cls != NodeClass::S) {
        if (p2 == 0.0 || p3 == 0.0) throw DegenerateDenominator("topological rate with a zero neighbor value");
        const double r = det / (2.0 * p2 * p3);
        return cls == NodeClass::TMinus ? -r : r;
    }
    const double s = sign_of_tag(tag);
    switch (tag) {
        case CutTag::APlus:
        case CutTag::AMinus: {
            const double a = p1 - p2, b = p1 - p3;
            return s * det * p1 * (p1 * (p2 + p3) - 2.0 * p2 * p3) / (2.0 * a * a * b * b);
        }
        case CutTag::BPlus:
        case CutTag::BMinus: {
            const double a = p2 - p1;
            return -s * det / 2.0 * p2 * p2 / ((p2 - p3) * a * a);
        }
        case CutTag::CPlus:
        case CutTag::CMinus: {
            const double b = p3 - p1;
            return -s * det / 2.0 * p3 * p3 / ((p3 - p2) * b * b);
        }
        default: return 0.0;
    }
}

AreaDerivative area_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k) {
    return area_derivative(mesh, phi, k, classify_node(mesh, phi, k));
}

AreaDerivative area_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k, NodeClass cls) {
    AreaDerivative out;
    out.node_class = cls;
    for (int l : mesh.node_elements[k]) {
        const auto v = gather(mesh, phi, l, rotation(mesh, l, k));
        CutTag tag;
        if (cls == NodeClass::TMinus)
            tag = CutTag::APlus;
        else if (cls == NodeClass::TPlus)
            tag = CutTag::AMinus;
        else
            tag = classify_cut(v[0], v[1], v[2]);
        if (!is_cut(tag)) continue;
        const double r = element_area_rate(cls, tag, v, mesh.det_jacobian[l]);
        out.elements.push_back({l, tag, r});
        out.signed_sum += r;
        out.total += std::abs(r);
    }
    return out;
}

CutMatrixRates cut_matrix_rates(CutTag tag, const std::array<double, 3>& phi, double det) {
    const double p1 = phi[0], p2 = phi[1], p3 = phi[2];
    const double s = sign_of_tag(tag);
    CutMatrixRates r;
    Mat3& m = r.mass;
    auto& f = r.load;
    switch (tag) {
        case CutTag::APlus:
        case CutTag::AMinus: {
            const double a = p1 - p2, b = p1 - p3;
            const double a2 = a * a, b2 = b * b, a3 = a2 * a, b3 = b2 * b, a4 = a2 * a2, b4 = b2 * b2;
            const double q1 = p1 * p1, q2 = p2 * p2, q3 = p3 * p3;
            m[0][0] = s *
                      (q1 * q1 * (q2 * p2 + q2 * p3 + p2 * q3 + q3 * p3) - 4.0 * p1 * q2 * p2 * q3 * p3 +
                       6.0 * q1 * q2 * q3 * (p2 + p3) - 4.0 * q1 * p1 * p2 * p3 * (q2 + p2 * p3 + q3)) /
                      (4.0 * a4 * b4);
            m[0][1] = -s * q1 *
                      (3.0 * q1 * q2 + 2.0 * q1 * p2 * p3 + q1 * q3 - 8.0 * p1 * q2 * p3 - 4.0 * p1 * p2 * q3 +
                       6.0 * q2 * q3) /
                      (12.0 * a4 * b3);
            m[0][2] = -s * q1 *
                      (q1 * q2 + 2.0 * q1 * p2 * p3 + 3.0 * q1 * q3 - 4.0 * p1 * q2 * p3 - 8.0 * p1 * p2 * q3 +
                       6.0 * q2 * q3) /
                      (12.0 * a3 * b4);
            m[1][1] = s * q1 * p1 * (3.0 * p1 * p2 + p1 * p3 - 4.0 * p2 * p3) / (12.0 * a4 * b2);
            m[1][2] = s * q1 * p1 * (p1 * p2 + p1 * p3 - 2.0 * p2 * p3) / (12.0 * a3 * b3);
            m[2][2] = s * q1 * p1 * (p1 * p2 + 3.0 * p1 * p3 - 4.0 * p2 * p3) / (12.0 * a2 * b4);
            f[0] = -s * p1 *
                   (q1 * q2 + q1 * p2 * p3 + q1 * q3 - 3.0 * p1 * q2 * p3 - 3.0 * p1 * p2 * q3 + 3.0 * q2 * q3) /
                   (3.0 * a3 * b3);
            f[1] = s * q1 * (2.0 * p1 * p2 + p1 * p3 - 3.0 * p2 * p3) / (6.0 * a3 * b2);
            f[2] = s * q1 * (p1 * p2 + 2.0 * p1 * p3 - 3.0 * p2 * p3) / (6.0 * a2 * b3);
            break;
        }
        case CutTag::BPlus:
        case CutTag::BMinus: {
            const double a = p1 - p2, c = p2 - p3;
            const double a2 = a * a, c2 = c * c, a3 = a2 * a, c3 = c2 * c, a4 = a2 * a2;
            const double q1 = p1 * p1, q2 = p2 * p2, q3 = p3 * p3;
            m[0][0] = -s * q2 * q2 / (4.0 * a4 * c);
            m[0][1] = s * q2 * p2 * (3.0 * p1 * p2 - 4.0 * p1 * p3 + p2 * p3) / (12.0 * a4 * c2);
            m[0][2] = s * q2 * q2 / (12.0 * a3 * c2);
            m[1][1] = -s * q2 *
                      (3.0 * q1 * q2 - 8.0 * q1 * p2 * p3 + 6.0 * q1 * q3 + 2.0 * p1 * q2 * p3 - 4.0 * p1 * p2 * q3 +
                       q2 * q3) /
                      (12.0 * a4 * c3);
            m[1][2] = -s * q2 * p2 * (p1 * p2 - 2.0 * p1 * p3 + p2 * p3) / (12.0 * a3 * c3);
            m[2][2] = -s * q2 * q2 / (12.0 * a2 * c3);
            f[0] = s * q2 * p2 / (3.0 * a3 * c);
            f[1] = -s * q2 * (2.0 * p1 * p2 - 3.0 * p1 * p3 + p2 * p3) / (6.0 * a3 * c2);
            f[2] = -s * q2 * p2 / (6.0 * a2 * c2);
            break;
        }
        case CutTag::CPlus:
        case CutTag::CMinus: {
            const double b = p1 - p3, c = p2 - p3;
            const double b2 = b * b, c2 = c * c, b3 = b2 * b, c3 = c2 * c, b4 = b2 * b2;
            const double q1 = p1 * p1, q2 = p2 * p2, q3 = p3 * p3;
            m[0][0] = s * q3 * q3 / (4.0 * b4 * c);
            m[0][1] = s * q3 * q3 / (12.0 * b3 * c2);
            m[0][2] = s * q3 * p3 * (3.0 * p1 * p3 - 4.0 * p1 * p2 + p2 * p3) / (12.0 * b4 * c2);
            m[1][1] = s * q3 * q3 / (12.0 * b2 * c3);
            m[1][2] = s * q3 * p3 * (p1 * p3 - 2.0 * p1 * p2 + p2 * p3) / (12.0 * b3 * c3);
            m[2][2] = s * q3 *
                      (6.0 * q1 * q2 - 8.0 * q1 * p2 * p3 + 3.0 * q1 * q3 - 4.0 * p1 * q2 * p3 + 2.0 * p1 * p2 * q3 +
                       q2 * q3) /
                      (12.0 * b4 * c3);
            f[0] = -s * q3 * p3 / (3.0 * b3 * c);
            f[1] = -s * q3 * p3 / (6.0 * b2 * c2);
            f[2] = -s * q3 * (2.0 * p1 * p3 - 3.0 * p1 * p2 + p2 * p3) / (6.0 * b3 * c2);
            break;
        }
        default: return r;
    }
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];
    for (auto& row : m)
        for (double& x : row) x *= det;
    for (double& x : f) x *= det;
    return r;
}

NodeSensitivity ts_derivative_at(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                                 const std::vector<double>& p, const ProblemParams& prm, int k) {
    const Mesh& mesh = *ctx.mesh;
    NodeSensitivity out;
    out.node_class = classify_node(mesh, phi, k);
    const auto uhat = target_state<double>(mesh, prm);
    const double track = u[k] - uhat[k];

    if (out.node_class != NodeClass::S) {
        double weighted = 0.0, weights = 0.0;
        for (int l : mesh.node_elements[k]) {
            const auto rot = rotation(mesh, l, k);
            const auto v = gather(mesh, phi, l, rot);
            if (v[1] == 0.0 || v[2] == 0.0) throw DegenerateDenominator("topological derivative with a zero neighbor value");
            const double w = mesh.det_jacobian[l] / (v[1] * v[2]);
            weighted += bilinear(gather(mesh, p, l, rot), rotated_pairings(ctx, l, rot), gather(mesh, u, l, rot)) * w;
            weights += w;
            out.area_rate += std::abs(w) / 2.0;
        }
        if (weights == 0.0) throw DegenerateDenominator("vanishing topological weight sum");
        const double value = -prm.c1 - prm.d_lambda() * weighted / weights - prm.d_alpha() * p[k] * u[k] +
                             prm.d_f() * p[k] - prm.c2 * prm.d_atilde() * track * track;
        out.value = out.node_class == NodeClass::TMinus ? value : -value;
        return out;
    }

    double stiff = 0.0, mass = 0.0, load = 0.0, tracking = 0.0;
    for (int l : mesh.node_elements[k]) {
        const auto rot = rotation(mesh, l, k);
        const auto v = gather(mesh, phi, l, rot);
        const CutTag tag = classify_cut(v[0], v[1], v[2]);
        if (!is_cut(tag)) continue;
        const double det = mesh.det_jacobian[l];
        const double rate = element_area_rate(NodeClass::S, tag, v, det);
        const auto ul = gather(mesh, u, l, rot);
        const auto pl = gather(mesh, p, l, rot);
        const auto hl = gather(mesh, uhat, l, rot);
        const std::array<double, 3> dl{ul[0] - hl[0], ul[1] - hl[1], ul[2] - hl[2]};
        const auto cm = cut_matrix_rates(tag, v, det);
        out.area_rate += std::abs(rate);
        stiff += bilinear(pl, rotated_pairings(ctx, l, rot), ul) * rate;
        mass += bilinear(pl, cm.mass, ul);
        load += pl[0] * cm.load[0] + pl[1] * cm.load[1] + pl[2] * cm.load[2];
        tracking += bilinear(dl, cm.mass, dl);
    }
    if (out.area_rate == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.value = -prm.c1 + (prm.d_lambda() * stiff + prm.d_alpha() * mass - prm.d_f() * load +
                           prm.c2 * prm.d_atilde() * tracking) /
                              out.area_rate;
    return out;
}

int SensitivityField::count(NodeClass c) const {
    return static_cast<int>(std::count(node_class.begin(), node_class.end(), c));
}

SensitivityField ts_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                               const std::vector<double>& p, const ProblemParams& prm) {
    const int nn = ctx.mesh->num_nodes();
    SensitivityField f;
    f.value.assign(nn, 0.0);
    f.node_class.assign(nn, NodeClass::S);
    f.area_rate.assign(nn, 0.0);
    f.degenerate.assign(nn, false);
    for (int k = 0; k < nn; ++k) {
        try {
            const auto s = ts_derivative_at(ctx, phi, u, p, prm, k);
            f.value[k] = s.value;
            f.node_class[k] = s.node_class;
            f.area_rate[k] = s.area_rate;
            f.degenerate[k] = s.degenerate;
        } catch (const DegenerateDenominator&) {
            f.node_class[k] = classify_node(*ctx.mesh, phi, k);
            f.degenerate[k] = true;
        }
    }
    return f;
}

std::vector<double> generalized_derivative(const SensitivityField& field) {
    std::vector<double> g(field.value.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double d = field.value[k];
        switch (field.node_class[k]) {
            case NodeClass::TMinus: g[k] = -std::min(d, 0.0); break;
            case NodeClass::TPlus: g[k] = std::min(d, 0.0); break;
            default: g[k] = -d; break;
        }
    }
    return g;
}

double volume_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k) {
    const auto ad = area_derivative(mesh, phi, k);
    if (ad.total == 0.0) throw DegenerateDenominator("node with no area rate");
    return ad.signed_sum / ad.total;
}

std::array<double, 2> interface_normal(const Mesh& mesh, const LevelSet<double>& phi, int l) {
    const auto grads = hat_gradients(mesh, l);
    const auto& e = mesh.elements[l];
    // Normal of the zero level line, oriented toward larger phi.
    std::array<double, 2> g{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        g[0] += phi[e[i]] * grads[i][0];
        g[1] += phi[e[i]] * grads[i][1];
    }
    const double len = std::hypot(g[0], g[1]);
    if (len == 0.0) throw DegenerateDenominator("flat level set on a cut element");
    return {g[0] / len, g[1] / len};
}

double continuous_shape_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                                   const std::vector<double>& p, const ProblemParams& prm, int k) {
    const Mesh& mesh = *ctx.mesh;
    const auto base = ts_derivative_at(ctx, phi, u, p, prm, k);
    if (base.node_class != NodeClass::S) throw std::invalid_argument("continuous shape derivative needs a shape node");
    const auto ad = area_derivative(mesh, phi, k, NodeClass::S);
    double jump = 0.0;
    for (const auto& er : ad.elements) {
        const int l = er.element;
        const auto grads = hat_gradients(mesh, l);
        const auto n = interface_normal(mesh, phi, l);
        const auto& e = mesh.elements[l];
        double du = 0.0, dp = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double gn = grads[i][0] * n[0] + grads[i][1] * n[1];
            du += u[e[i]] * gn;
            dp += p[e[i]] * gn;
        }
        jump += du * dp * er.rate;
    }
    return base.value - 2.0 * prm.d_lambda() * jump / ad.total;
}

}  // namespace tsopt
