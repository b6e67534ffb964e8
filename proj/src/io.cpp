#include "tsopt/io.hpp"

#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace tsopt {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::string cell(double v) { return std::isnan(v) ? std::string("nan") : format_double(v); }

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_verification_csv(const std::string& path, const std::vector<VerificationReport>& reports) {
    auto out = open_output(path);
    out << "method,step,e_S,e_T\n";
    for (const auto& r : reports)
        for (const auto& row : r.rows)
            out << to_string(r.method) << ',' << format_double(row.step) << ',' << format_double(row.error_s) << ','
                << format_double(row.error_t) << '\n';
}

void write_estimates_csv(const std::string& path, const std::vector<VerificationReport>& reports) {
    auto out = open_output(path);
    out << "method,step,node,class,estimate,analytic\n";
    for (const auto& r : reports)
        for (std::size_t s = 0; s < r.rows.size(); ++s)
            for (std::size_t k = 0; k < r.estimates[s].size(); ++k)
                out << to_string(r.method) << ',' << format_double(r.rows[s].step) << ',' << k << ','
                    << to_string(r.analytic.node_class[k]) << ',' << cell(r.estimates[s][k]) << ','
                    << cell(r.analytic.value[k]) << '\n';
}

void write_node_csv(const std::string& path, const NodeComparison& cmp) {
    auto out = open_output(path);
    out << "node,class,analytic,fd_best,cs_best,hd\n";
    const std::size_t n = cmp.analytic.value.size();
    auto at = [](const std::vector<double>& v, std::size_t k) {
        return k < v.size() ? v[k] : std::numeric_limits<double>::quiet_NaN();
    };
    for (std::size_t k = 0; k < n; ++k)
        out << k << ',' << to_string(cmp.analytic.node_class[k]) << ',' << cell(cmp.analytic.value[k]) << ','
            << cell(at(cmp.fd_best, k)) << ',' << cell(at(cmp.cs_best, k)) << ',' << cell(at(cmp.hd, k)) << '\n';
}

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history) {
    auto out = open_output(path);
    out << "iter,J,normG,kappa,theta,nTminus,nTplus,nS\n";
    for (const auto& h : history)
        out << h.iter << ',' << format_double(h.objective) << ',' << format_double(h.norm_g) << ','
            << format_double(h.kappa) << ',' << format_double(h.theta) << ',' << h.n_tminus << ',' << h.n_tplus << ','
            << h.n_s << '\n';
}

void write_vtk(const std::string& path, const Mesh& mesh, const std::vector<NamedField>& fields) {
    auto out = open_output(path);
    out << "# vtk DataFile Version 3.0\nlevel set snapshot\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_nodes() << " double\n";
    for (const auto& p : mesh.nodes) out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
    out << "CELLS " << mesh.num_elements() << ' ' << 4 * mesh.num_elements() << '\n';
    for (const auto& e : mesh.elements) out << "3 " << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
    out << "CELL_TYPES " << mesh.num_elements() << '\n';
    for (int l = 0; l < mesh.num_elements(); ++l) out << "5\n";
    out << "POINT_DATA " << mesh.num_nodes() << '\n';
    for (const auto& [name, values] : fields) {
        if (static_cast<int>(values.size()) != mesh.num_nodes()) throw std::invalid_argument("field size mismatch: " + name);
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (double v : values) out << cell(v) << '\n';
    }
}

void write_interface_vtk(const std::string& path, const std::vector<Segment>& segments) {
    auto out = open_output(path);
    out << "# vtk DataFile Version 3.0\nzero level line\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << 2 * segments.size() << " double\n";
    for (const auto& s : segments)
        out << format_double(s.a.x) << ' ' << format_double(s.a.y) << " 0\n"
            << format_double(s.b.x) << ' ' << format_double(s.b.y) << " 0\n";
    out << "CELLS " << segments.size() << ' ' << 3 * segments.size() << '\n';
    for (std::size_t i = 0; i < segments.size(); ++i) out << "2 " << 2 * i << ' ' << 2 * i + 1 << '\n';
    out << "CELL_TYPES " << segments.size() << '\n';
    for (std::size_t i = 0; i < segments.size(); ++i) out << "3\n";
}

std::vector<double> node_class_codes(const std::vector<NodeClass>& classes) {
    std::vector<double> out;
    out.reserve(classes.size());
    for (auto c : classes) out.push_back(c == NodeClass::TMinus ? -1.0 : c == NodeClass::TPlus ? 1.0 : 0.0);
    return out;
}

}  // namespace tsopt
