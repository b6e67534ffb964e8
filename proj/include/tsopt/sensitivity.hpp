#pragma once

#include <array>
#include <vector>

#include "tsopt/fem.hpp"
#include "tsopt/levelset.hpp"

namespace tsopt {

struct ElementAreaRate {
    int element = -1;
    CutTag tag = CutTag::AllPos;
    double rate = 0.0;  // derivative of the element's subdomain area
};

struct AreaDerivative {
    NodeClass node_class = NodeClass::S;
    std::vector<ElementAreaRate> elements;
    double signed_sum = 0.0;
    double total = 0.0;  // sum of absolute rates
};

// Area rate of one element; phi is rotated so the perturbed node is first.
double element_area_rate(NodeClass cls, CutTag tag, const std::array<double, 3>& phi, double det);

AreaDerivative area_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k);
AreaDerivative area_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k, NodeClass cls);

struct CutMatrixRates {
    Mat3 mass{};                  // derivative of the subdomain part of the mass integrals
    std::array<double, 3> load{};  // derivative of the subdomain part of the load integrals
};

// Closed-form rates for a shape perturbation of the first vertex of a cut element.
CutMatrixRates cut_matrix_rates(CutTag tag, const std::array<double, 3>& phi, double det);

struct NodeSensitivity {
    double value = 0.0;
    NodeClass node_class = NodeClass::S;
    double area_rate = 0.0;
    bool degenerate = false;
};

NodeSensitivity ts_derivative_at(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                                 const std::vector<double>& p, const ProblemParams& prm, int k);

struct SensitivityField {
    std::vector<double> value;
    std::vector<NodeClass> node_class;
    std::vector<double> area_rate;
    std::vector<bool> degenerate;  // value forced to zero

    int count(NodeClass c) const;
};

// Degenerate nodes are reported as zero and flagged instead of aborting the sweep.
SensitivityField ts_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                               const std::vector<double>& p, const ProblemParams& prm);

// Ascent-free update direction built from the node-wise derivative.
std::vector<double> generalized_derivative(const SensitivityField& field);

// Derivative of the subdomain area with the same normalization as the objective.
double volume_derivative(const Mesh& mesh, const LevelSet<double>& phi, int k);

// Shape derivative of the objective written with the interface jump term of the continuous formula.
double continuous_shape_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const std::vector<double>& u,
                                   const std::vector<double>& p, const ProblemParams& prm, int k);

// Unit normal of the interface in element l pointing out of the subdomain.
std::array<double, 2> interface_normal(const Mesh& mesh, const LevelSet<double>& phi, int l);

}  // namespace tsopt
