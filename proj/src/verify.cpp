#include "tsopt/verify.hpp"

#include <cmath>
#include <limits>

#include "tsopt/parallel.hpp"

namespace tsopt {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::FiniteDifference: return "fd";
        case Method::ComplexStep: return "cs";
        default: return "hd";
    }
}

Method parse_method(std::string_view name) {
    if (name == "fd") return Method::FiniteDifference;
    if (name == "cs") return Method::ComplexStep;
    if (name == "hd") return Method::HyperDual;
    throw ConfigError("unknown verification method: " + std::string(name));
}

double fd_quotient(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double eps,
                   double base_objective) {
    const auto kind = perturbation_for(classify_node(*ctx.mesh, phi, k));
    const auto moved = perturb(phi, k, eps, kind);
    const double area = symmetric_difference_area(*ctx.mesh, moved, phi);
    if (area == 0.0) throw DegenerateDenominator("perturbation does not move the interface");
    return (evaluate_objective(ctx, moved, prm) - base_objective) / area;
}

double cs_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double h,
                     double base_objective, double area_rate) {
    const auto cls = classify_node(*ctx.mesh, phi, k);
    const auto moved = perturb(promote<Complex>(phi), k, Complex(0.0, h), perturbation_for(cls));
    const Complex j = evaluate_objective(ctx, moved, prm);
    if (cls == NodeClass::S) return j.imag() / (h * area_rate);
    return (j.real() - base_objective) / (-h * h * area_rate);
}

double hd_derivative(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm, int k, double h,
                     double area_rate) {
    const auto cls = classify_node(*ctx.mesh, phi, k);
    const auto moved = perturb(promote<HyperDual>(phi), k, HyperDual(0.0, h, h, 0.0), perturbation_for(cls));
    const HyperDual j = evaluate_objective(ctx, moved, prm);
    if (cls == NodeClass::S) return j.e1 / (h * area_rate);
    return j.e12 / (2.0 * h * h * area_rate);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log10(x[i]), ly = std::log10(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double slope_of(const std::vector<StepErrors>& rows, std::size_t first, std::size_t last, bool shape) {
    std::vector<double> x, y;
    for (std::size_t i = first; i < last && i < rows.size(); ++i) {
        x.push_back(rows[i].step);
        y.push_back(shape ? rows[i].error_s : rows[i].error_t);
    }
    return loglog_slope(x, y);
}

}  // namespace

double VerificationReport::slope_s(std::size_t first, std::size_t last) const { return slope_of(rows, first, last, true); }
double VerificationReport::slope_t(std::size_t first, std::size_t last) const { return slope_of(rows, first, last, false); }

double VerificationReport::min_error_s() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) m = std::min(m, r.error_s);
    return m;
}

double VerificationReport::min_error_t() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) m = std::min(m, r.error_t);
    return m;
}

std::size_t VerificationReport::pre_floor_end(bool shape) const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double e = shape ? rows[i].error_s : rows[i].error_t;
        const double b = shape ? rows[best].error_s : rows[best].error_t;
        if (e < b) best = i;
    }
    return best + 1;
}

std::vector<double> default_steps(Method m) {
    std::vector<double> steps;
    switch (m) {
        case Method::FiniteDifference:
            for (int e = 1; e <= 8; ++e) steps.push_back(std::pow(10.0, -e));
            break;
        case Method::ComplexStep:
            for (int e = 1; e <= 12; ++e) steps.push_back(std::pow(10.0, -e));
            break;
        case Method::HyperDual: steps = {1.0, 1e-2, 1e-4}; break;
    }
    return steps;
}

AnalyticSolution analytic_solution(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm) {
    AnalyticSolution s;
    const auto sys = assemble(ctx, phi, prm);
    auto sa = solve_state_adjoint(ctx, sys, prm);
    s.objective = objective(ctx, sys, sa.state, prm);
    s.field = ts_derivative(ctx, phi, sa.state, sa.adjoint, prm);
    s.state = std::move(sa.state);
    s.adjoint = std::move(sa.adjoint);
    return s;
}

VerificationReport run_verification(const MeshContext& ctx, const LevelSet<double>& phi, const ProblemParams& prm,
                                    Method method, const std::vector<double>& steps, int threads) {
    const int nn = ctx.mesh->num_nodes();
    const auto base = analytic_solution(ctx, phi, prm);
    VerificationReport rep;
    rep.method = method;
    rep.analytic = base.field;
    rep.estimates.assign(steps.size(), std::vector<double>(nn, std::numeric_limits<double>::quiet_NaN()));

    for (std::size_t s = 0; s < steps.size(); ++s) {
        const double h = steps[s];
        auto& est = rep.estimates[s];
        parallel_for(nn, threads, [&](int k) {
            if (base.field.degenerate[k]) return;
            const double rate = base.field.area_rate[k];
            try {
                switch (method) {
                    case Method::FiniteDifference: est[k] = fd_quotient(ctx, phi, prm, k, h, base.objective); break;
                    case Method::ComplexStep: est[k] = cs_derivative(ctx, phi, prm, k, h, base.objective, rate); break;
                    case Method::HyperDual: est[k] = hd_derivative(ctx, phi, prm, k, h, rate); break;
                }
            } catch (const DegenerateDenominator&) {
                // Step below the resolution of phi: the interface does not move.
            }
        });
        StepErrors row{h, 0.0, 0.0, 0};
        for (int k = 0; k < nn; ++k) {
            if (base.field.degenerate[k]) continue;
            if (std::isnan(est[k])) {
                ++row.missing;
                continue;
            }
            const double d = est[k] - base.field.value[k];
            (base.field.node_class[k] == NodeClass::S ? row.error_s : row.error_t) += d * d;
        }
        row.error_s = std::sqrt(row.error_s);
        row.error_t = std::sqrt(row.error_t);
        rep.rows.push_back(row);
    }

    rep.best.assign(nn, std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < nn; ++k) {
        double best_err = std::numeric_limits<double>::infinity();
        for (const auto& est : rep.estimates) {
            const double err = std::abs(est[k] - base.field.value[k]);
            if (!std::isnan(err) && err < best_err) {
                best_err = err;
                rep.best[k] = est[k];
            }
        }
    }
    return rep;
}

}  // namespace tsopt
