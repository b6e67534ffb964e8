#include "tsopt/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tsopt {

std::string_view to_string(NodeClass c) {
    switch (c) {
        case NodeClass::TMinus: return "T-";
        case NodeClass::TPlus: return "T+";
        default: return "S";
    }
}

std::string_view to_string(CutTag t) {
    switch (t) {
        case CutTag::AllNeg: return "all-";
        case CutTag::AllPos: return "all+";
        case CutTag::APlus: return "A+";
        case CutTag::AMinus: return "A-";
        case CutTag::BPlus: return "B+";
        case CutTag::BMinus: return "B-";
        case CutTag::CPlus: return "C+";
        default: return "C-";
    }
}

namespace {

struct Vertex {
    Point p;
    std::array<double, 2> values;
};

using WorkPolygon = std::vector<Vertex>;

// Keeps the part where values[slot] < 0 (keep_negative) or >= 0.
WorkPolygon clip(const WorkPolygon& poly, int slot, bool keep_negative) {
    WorkPolygon out;
    const std::size_t n = poly.size();
    auto inside = [&](const Vertex& v) { return keep_negative ? v.values[slot] < 0.0 : v.values[slot] >= 0.0; };
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex& cur = poly[i];
        const Vertex& nxt = poly[(i + 1) % n];
        const bool in_cur = inside(cur), in_nxt = inside(nxt);
        if (in_cur) out.push_back(cur);
        if (in_cur != in_nxt) {
            const double t = cur.values[slot] / (cur.values[slot] - nxt.values[slot]);
            Vertex x;
            x.p = {cur.p.x + t * (nxt.p.x - cur.p.x), cur.p.y + t * (nxt.p.y - cur.p.y)};
            for (int s = 0; s < 2; ++s) x.values[s] = cur.values[s] + t * (nxt.values[s] - cur.values[s]);
            x.values[slot] = 0.0;
            out.push_back(x);
        }
    }
    return out;
}

WorkPolygon element_polygon(const Mesh& mesh, const LevelSet<double>& a, const LevelSet<double>& b, int l) {
    WorkPolygon poly;
    for (int v : mesh.elements[l]) poly.push_back({mesh.nodes[v], {a[v], b[v]}});
    return poly;
}

double work_area(const WorkPolygon& poly) {
    Polygon p;
    for (const auto& v : poly) p.push_back(v.p);
    return polygon_area(p);
}

}  // namespace

double polygon_area(const Polygon& poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

Point polygon_centroid(const Polygon& poly) {
    double twice = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        const double cross = a.x * b.y - b.x * a.y;
        twice += cross;
        cx += (a.x + b.x) * cross;
        cy += (a.y + b.y) * cross;
    }
    if (twice == 0.0) return poly.empty() ? Point{} : poly.front();
    return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

Polygon clip_element(const Mesh& mesh, const LevelSet<double>& phi, int l, bool keep_negative) {
    WorkPolygon poly = clip(element_polygon(mesh, phi, phi, l), 0, keep_negative);
    Polygon out;
    for (const auto& v : poly) out.push_back(v.p);
    return out;
}

double element_symmetric_difference(const Mesh& mesh, const LevelSet<double>& phi_a,
                                    const LevelSet<double>& phi_b, int l) {
    const WorkPolygon base = element_polygon(mesh, phi_a, phi_b, l);
    double area = 0.0;
    for (bool a_negative : {true, false}) {
        WorkPolygon part = clip(base, 0, a_negative);
        if (part.size() < 3) continue;
        part = clip(part, 1, !a_negative);
        if (part.size() < 3) continue;
        area += work_area(part);
    }
    return area;
}

double symmetric_difference_area(const Mesh& mesh, const LevelSet<double>& phi_a,
                                 const LevelSet<double>& phi_b) {
    double total = 0.0;
    for (int l = 0; l < mesh.num_elements(); ++l) {
        const auto& e = mesh.elements[l];
        bool same = true;
        for (int v : e)
            if (phi_a[v] != phi_b[v]) same = false;
        if (same) continue;
        total += element_symmetric_difference(mesh, phi_a, phi_b, l);
    }
    return total;
}

std::vector<Segment> interface_segments(const Mesh& mesh, const LevelSet<double>& phi) {
    std::vector<Segment> out;
    for (int l = 0; l < mesh.num_elements(); ++l) {
        const auto v = element_values(mesh, phi, l);
        const std::array<bool, 3> neg{v[0] < 0.0, v[1] < 0.0, v[2] < 0.0};
        const int count = neg[0] + neg[1] + neg[2];
        if (count == 0 || count == 3) continue;
        int lone = 0;
        for (int i = 0; i < 3; ++i)
            if ((count == 1) == neg[i]) lone = i;
        const auto& e = mesh.elements[l];
        const int b = (lone + 1) % 3, c = (lone + 2) % 3;
        const Point& pa = mesh.nodes[e[lone]];
        auto crossing = [&](int other) {
            const double t = v[lone] / (v[lone] - v[other]);
            const Point& po = mesh.nodes[e[other]];
            return Point{pa.x + t * (po.x - pa.x), pa.y + t * (po.y - pa.y)};
        };
        Segment s{l, crossing(b), crossing(c)};
        if (std::hypot(s.b.x - s.a.x, s.b.y - s.a.y) == 0.0) continue;
        out.push_back(s);
    }
    return out;
}

std::vector<Component> negative_components(const Mesh& mesh, const LevelSet<double>& phi) {
    const int ne = mesh.num_elements();
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<Polygon> parts(ne);
    std::vector<double> areas(ne, 0.0);
    for (int l = 0; l < ne; ++l) {
        parts[l] = clip_element(mesh, phi, l, true);
        if (parts[l].size() >= 3) areas[l] = polygon_area(parts[l]);
    }
    std::map<std::pair<int, int>, int> first_owner;
    for (int l = 0; l < ne; ++l) {
        if (areas[l] <= 0.0) continue;
        const auto& e = mesh.elements[l];
        for (int i = 0; i < 3; ++i) {
            const int a = e[i], b = e[(i + 1) % 3];
            if (!(phi[a] < 0.0 || phi[b] < 0.0)) continue;
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = first_owner.find(key);
            if (it == first_owner.end())
                first_owner[key] = l;
            else
                parent[find(l)] = find(it->second);
        }
    }
    std::map<int, Component> groups;
    for (int l = 0; l < ne; ++l) {
        if (areas[l] <= 0.0) continue;
        const Point c = polygon_centroid(parts[l]);
        Component& g = groups[find(l)];
        g.centroid.x += areas[l] * c.x;
        g.centroid.y += areas[l] * c.y;
        g.area += areas[l];
    }
    std::vector<Component> out;
    for (auto& [root, g] : groups) {
        g.centroid.x /= g.area;
        g.centroid.y /= g.area;
        out.push_back(g);
    }
    std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) { return a.area > b.area; });
    return out;
}

}  // namespace tsopt
