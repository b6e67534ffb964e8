#include "tsopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsopt {

void OptimizerConfig::validate() const {
    if (max_iter < 0) throw ConfigError("max_iter must be non-negative");
    if (!(kappa_init > 0.0 && kappa_init <= 1.0)) throw ConfigError("kappa_init must lie in (0, 1]");
    if (!(kappa_min > 0.0 && kappa_min < kappa_init)) throw ConfigError("kappa_min must lie in (0, kappa_init)");
    if (!(kappa_growth >= 1.0)) throw ConfigError("kappa_growth must be at least 1");
    if (!(kappa_shrink > 0.0 && kappa_shrink < 1.0)) throw ConfigError("kappa_shrink must lie in (0, 1)");
    if (!(theta_tol >= 0.0)) throw ConfigError("theta_tol must be non-negative");
}

LineSearch parse_line_search(std::string_view name) {
    if (name == "first") return LineSearch::FirstDecrease;
    if (name == "best") return LineSearch::BestDecrease;
    throw ConfigError("unknown line search: " + std::string(name));
}

std::string_view to_string(LineSearch l) { return l == LineSearch::FirstDecrease ? "first" : "best"; }

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::MaxIterations: return "max-iterations";
        case StopReason::Stalled: return "line-search-stalled";
        case StopReason::Aligned: return "aligned";
        default: return "zero-direction";
    }
}

Optimizer::Optimizer(const MeshContext& ctx, ProblemParams params, OptimizerConfig config)
    : ctx_(&ctx), params_(std::move(params)), config_(config), mass_(p1_mass_matrix(ctx)) {
    params_.validate();
    config_.validate();
}

double Optimizer::inner(const std::vector<double>& a, const std::vector<double>& b) const {
    const auto mb = mass_.multiply(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * mb[i];
    return s;
}

double Optimizer::norm(const std::vector<double>& a) const { return std::sqrt(inner(a, a)); }

double Optimizer::angle(const LevelSet<double>& phi, const std::vector<double>& direction) const {
    const double c = inner(phi, direction) / (norm(phi) * norm(direction));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

SlerpStep Optimizer::slerp_update(const LevelSet<double>& phi, const std::vector<double>& direction,
                                  double kappa) const {
    const double gnorm = norm(direction);
    if (gnorm == 0.0) throw DegenerateAngle("zero update direction");
    SlerpStep out;
    out.theta = angle(phi, direction);
    if (out.theta < config_.theta_tol) {
        out.psi = phi;
        return out;
    }
    if (out.theta > std::numbers::pi - config_.theta_tol) throw DegenerateAngle("direction opposite to the level set");
    const double s = std::sin(out.theta);
    const double a = std::sin((1.0 - kappa) * out.theta) / s;
    const double b = std::sin(kappa * out.theta) / (s * gnorm);
    out.psi.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) out.psi[i] = a * phi[i] + b * direction[i];
    return out;
}

LevelSet<double> Optimizer::smooth(const LevelSet<double>& psi) const {
    const Mesh& mesh = *ctx_->mesh;
    LevelSet<double> out = psi;
    for (int k = 0; k < mesh.num_nodes(); ++k) {
        if (classify_node(mesh, psi, k) == NodeClass::S) continue;
        double sum = 0.0;
        for (int v : mesh.one_ring[k]) sum += psi[v];
        out[k] = sum / static_cast<double>(mesh.one_ring[k].size());
    }
    return out;
}

LevelSet<double> Optimizer::initial_levelset() const {
    LevelSet<double> one(ctx_->mesh->num_nodes(), 1.0);
    const double n = norm(one);
    for (double& v : one) v /= n;
    return one;
}

OptimizationResult Optimizer::run(LevelSet<double> phi, const Observer& observer) const {
    const Mesh& mesh = *ctx_->mesh;
    OptimizationResult res;
    {
        const double n = norm(phi);
        for (double& v : phi) v /= n;
    }
    double kappa = config_.kappa_init;
    for (int it = 0; it <= config_.max_iter; ++it) {
        const auto sys = assemble(*ctx_, phi, params_);
        const auto sa = solve_state_adjoint(*ctx_, sys, params_);
        const double j = objective(*ctx_, sys, sa.state, params_);
        const auto field = ts_derivative(*ctx_, phi, sa.state, sa.adjoint, params_);
        const auto g = generalized_derivative(field);

        HistoryRow row;
        row.iter = it;
        row.objective = j;
        row.norm_g = norm(g);
        row.n_tminus = field.count(NodeClass::TMinus);
        row.n_tplus = field.count(NodeClass::TPlus);
        row.n_s = field.count(NodeClass::S);
        if (observer) observer({it, &phi, &sa.state, &sa.adjoint, &field, &g});

        if (it == config_.max_iter) {
            res.history.push_back(row);
            res.reason = StopReason::MaxIterations;
            break;
        }
        if (row.norm_g == 0.0) {
            res.history.push_back(row);
            res.reason = StopReason::ZeroDirection;
            break;
        }
        row.theta = angle(phi, g);
        if (row.theta < config_.theta_tol) {
            res.history.push_back(row);
            res.reason = StopReason::Aligned;
            break;
        }

        bool accepted = false;
        double best_j = j;
        LevelSet<double> next;
        for (double trial = kappa; trial >= config_.kappa_min; trial *= config_.kappa_shrink) {
            SlerpStep step;
            try {
                step = slerp_update(phi, g, trial);
            } catch (const DegenerateAngle&) {
                break;
            }
            row.slerp_norm_deviation = std::max(row.slerp_norm_deviation, std::abs(norm(step.psi) - 1.0));
            LevelSet<double> cand = config_.smoothing ? smooth(step.psi) : step.psi;
            const double cn = norm(cand);
            for (double& v : cand) v /= cn;
            double jc;
            try {
                jc = evaluate_objective(*ctx_, cand, params_);
            } catch (const SolverBreakdown&) {
                if (accepted) break;
                continue;
            }
            if (jc < best_j) {
                accepted = true;
                best_j = jc;
                row.kappa = trial;
                next = std::move(cand);
                if (config_.line_search == LineSearch::FirstDecrease) break;
            } else if (accepted) {
                break;
            }
        }
        if (accepted) kappa = std::min(1.0, config_.kappa_growth * row.kappa);
        res.history.push_back(row);
        if (!accepted) {
            res.reason = StopReason::Stalled;
            break;
        }
        for (int k = 0; k < mesh.num_nodes(); ++k) {
            const int before = sign_of(phi[k]), after = sign_of(next[k]);
            if (before == 0 || after != -before) continue;
            if (field.node_class[k] == NodeClass::S) continue;
            if (!(field.value[k] < 0.0)) ++res.descent_violations;
        }
        phi = std::move(next);
    }
    res.phi = std::move(phi);
    return res;
}

}  // namespace tsopt
