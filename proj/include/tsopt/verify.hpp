#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tsopt/fem.hpp"
#include "tsopt/sensitivity.hpp"

namespace tsopt {

enum class Method { FiniteDifference, ComplexStep, HyperDual };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

// (J(O phi) - J(phi)) / |symmetric difference|, with O chosen by the node class.
double fd_quotient(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double eps,
                   double base_objective);

// Complex-step estimate normalized by the area rate.
double cs_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double h,
                     double base_objective, double area_rate);

// Hyper-dual estimate normalized by the area rate; exact up to rounding for any h.
double hd_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double h,
                     double area_rate);

struct StepErrors {
    double step = 0.0;
    double error_s = 0.0;  // Euclidean norm of the error over shape nodes
    double error_t = 0.0;  // same over topological nodes
    int missing = 0;       // nodes whose perturbation fell below the resolution of phi
};

struct VerificationReport {
    Method method = Method::HyperDual;
    SensitivityField analytic;
    std::vector<StepErrors> rows;
    std::vector<std::vector<double>> estimates;  // [step][node]
    std::vector<double> best;                     // estimate closest to the analytic value per node

    // Least-squares slope of log error against log step over rows [first, last).
    double slope_s(std::size_t first, std::size_t last) const;
    double slope_t(std::size_t first, std::size_t last) const;
    double min_error_s() const;
    double min_error_t() const;
    // Rows from the largest step through the smallest error, before rounding takes over.
    std::size_t pre_floor_end(bool shape) const;
};

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> default_steps(Method m);

struct AnalyticSolution {
    std::vector<double> state;
    std::vector<double> adjoint;
    double objective = 0.0;
    SensitivityField field;
};

AnalyticSolution analytic_solution(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm);

VerificationReport run_verification(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm,
                                    Method method, const std::vector<double>& steps, int threads = 1);

}  // namespace tsopt
