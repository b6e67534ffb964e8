#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "tsopt/fem.hpp"
#include "tsopt/sensitivity.hpp"

namespace tsopt {

// FirstDecrease accepts the first trial below the current objective; BestDecrease keeps
// shrinking while the trials improve and takes the best one.
enum class LineSearch { FirstDecrease, BestDecrease };

LineSearch parse_line_search(std::string_view name);
std::string_view to_string(LineSearch l);

struct OptimizerConfig {
    int max_iter = 800;
    double kappa_init = 1.0;
    double kappa_min = 1e-9;
    double kappa_growth = 2.0;
    double kappa_shrink = 0.5;
    bool smoothing = true;
    double theta_tol = 1e-8;
    LineSearch line_search = LineSearch::BestDecrease;

    void validate() const;
};

struct HistoryRow {
    int iter = 0;
    double objective = 0.0;
    double norm_g = 0.0;
    double kappa = 0.0;  // accepted step, 0 when the line search stalled
    double theta = 0.0;
    int n_tminus = 0, n_tplus = 0, n_s = 0;
    double slerp_norm_deviation = 0.0;  // largest | ||psi|| - 1 | over the trial steps
};

struct IterationState {
    int iter = 0;
    const LevelSet<double>* phi = nullptr;
    const std::vector<double>* state = nullptr;
    const std::vector<double>* adjoint = nullptr;
    const SensitivityField* field = nullptr;
    const std::vector<double>* direction = nullptr;
};

enum class StopReason { MaxIterations, Stalled, Aligned, ZeroDirection };

struct OptimizationResult {
    LevelSet<double> phi;
    std::vector<HistoryRow> history;
    StopReason reason = StopReason::MaxIterations;
    int descent_violations = 0;  // strict sign flips at T nodes against the derivative sign
};

struct SlerpStep {
    LevelSet<double> psi;
    double theta = 0.0;
};

class Optimizer {
public:
    Optimizer(const MeshContext& ctx, ProblemParams params, OptimizerConfig config = {});

    double inner(const std::vector<double>& a, const std::vector<double>& b) const;
    double norm(const std::vector<double>& a) const;
    double angle(const LevelSet<double>& phi, const std::vector<double>& direction) const;

    // Great-circle step from unit phi toward direction / ||direction||.
    SlerpStep slerp_update(const LevelSet<double>& phi, const std::vector<double>& direction, double kappa) const;

    // One-ring average on topological nodes of psi, shape nodes untouched.
    LevelSet<double> smooth(const LevelSet<double>& psi) const;

    LevelSet<double> initial_levelset() const;

    using Observer = std::function<void(const IterationState&)>;
    OptimizationResult run(LevelSet<double> phi, const Observer& observer = {}) const;

private:
    const MeshContext* ctx_;
    ProblemParams params_;
    OptimizerConfig config_;
    SparseMatrix<double> mass_;
};

std::string_view to_string(StopReason r);

}  // namespace tsopt
