#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsopt/levelset.hpp"
#include "tsopt/optimize.hpp"
#include "tsopt/verify.hpp"

namespace tsopt {

// 17 significant digits.
std::string format_double(double v);

void write_verification_csv(const std::string& path, const std::vector<VerificationReport>& reports);

struct NodeComparison {
    SensitivityField analytic;
    std::vector<double> fd_best, cs_best, hd;
};

// One row per method, step and node.
void write_estimates_csv(const std::string& path, const std::vector<VerificationReport>& reports);

void write_node_csv(const std::string& path, const NodeComparison& cmp);

void write_history_csv(const std::string& path, const std::vector<HistoryRow>& history);

using NamedField = std::pair<std::string, std::vector<double>>;

// Legacy ASCII unstructured grid with triangle cells and point data.
void write_vtk(const std::string& path, const Mesh& mesh, const std::vector<NamedField>& fields);

// Zero level line as a set of VTK line cells.
void write_interface_vtk(const std::string& path, const std::vector<Segment>& segments);

std::vector<double> node_class_codes(const std::vector<NodeClass>& classes);

}  // namespace tsopt
