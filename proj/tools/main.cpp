#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "tsopt/config.hpp"
#include "tsopt/io.hpp"
#include "tsopt/problem.hpp"

namespace fs = std::filesystem;
using namespace tsopt;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string config_path;
    std::string output;
    int mesh_level = 0;
    std::string method;
    int threads = -1;
};

RunConfig resolve(const Options& opt) {
    RunConfig cfg = opt.config_path.empty() ? parse_config("") : load_config(opt.config_path);
    if (!opt.output.empty()) cfg.output_dir = opt.output;
    if (opt.mesh_level > 0) cfg.mesh_level = opt.mesh_level;
    if (!opt.method.empty()) cfg.verification.methods = {opt.method};
    if (opt.threads >= 0) cfg.threads = opt.threads;
    cfg.validate();
    if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    return cfg;
}

int cmd_mesh_info(int n) {
    const Mesh mesh = unit_square_mesh(n);
    const auto dirichlet = std::count(mesh.boundary.begin(), mesh.boundary.end(), BoundaryTag::Dirichlet);
    std::cout << "level " << n << "\nnodes " << mesh.num_nodes() << "\nelements " << mesh.num_elements()
              << "\ndirichlet_nodes " << dirichlet << "\nneumann_edges " << mesh.neumann_edges.size() << '\n';
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const int n = cfg.mesh_level.value_or(8);
    const Benchmark b = make_benchmark(n, cfg.problem);
    const auto phi = interpolate(*b.mesh, verification_levelset);
    fs::create_directories(cfg.output_dir);

    std::vector<VerificationReport> reports;
    NodeComparison cmp;
    cmp.analytic = analytic_solution(*b.ctx, phi, b.params).field;
    double worst_hd = 0.0;
    for (const auto& name : cfg.verification.methods) {
        const Method m = parse_method(name);
        const auto& custom = m == Method::FiniteDifference ? cfg.verification.fd_steps
                             : m == Method::ComplexStep    ? cfg.verification.cs_steps
                                                           : cfg.verification.hd_steps;
        const auto steps = custom.empty() ? default_steps(m) : custom;
        auto rep = run_verification(*b.ctx, phi, b.params, m, steps, cfg.threads);
        std::cout << name << ":\n";
        for (const auto& row : rep.rows)
            std::cout << "  step " << format_double(row.step) << "  e_S " << format_double(row.error_s) << "  e_T "
                      << format_double(row.error_t) << '\n';
        if (m == Method::FiniteDifference) cmp.fd_best = rep.best;
        if (m == Method::ComplexStep) cmp.cs_best = rep.best;
        if (m == Method::HyperDual) {
            cmp.hd = rep.estimates.front();
            for (const auto& est : rep.estimates)
                for (std::size_t k = 0; k < est.size(); ++k) {
                    if (cmp.analytic.degenerate[k]) continue;
                    const double d = cmp.analytic.value[k];
                    worst_hd = std::max(worst_hd, std::abs(est[k] - d) / std::max(1.0, std::abs(d)));
                }
        }
        reports.push_back(std::move(rep));
    }
    write_verification_csv((fs::path(cfg.output_dir) / "verification.csv").string(), reports);
    write_node_csv((fs::path(cfg.output_dir) / "nodes.csv").string(), cmp);
    write_estimates_csv((fs::path(cfg.output_dir) / "estimates.csv").string(), reports);
    const bool hd_requested = !cmp.hd.empty();
    if (hd_requested) std::cout << "hd max relative deviation " << format_double(worst_hd) << '\n';
    return (!hd_requested || worst_hd <= cfg.verification.hd_tolerance) ? 0 : kExitMismatch;
}

int cmd_optimize(const RunConfig& cfg) {
    const int n = cfg.mesh_level.value_or(16);
    const Benchmark b = make_benchmark(n, cfg.problem);
    fs::create_directories(cfg.output_dir);
    const Optimizer opt(*b.ctx, b.params, cfg.optimizer);
    const auto dir = fs::path(cfg.output_dir);

    auto snapshot = [&](const IterationState& s, const std::string& file) {
        write_vtk((dir / file).string(), *b.mesh,
                  {{"phi", *s.phi},
                   {"u", *s.state},
                   {"p", *s.adjoint},
                   {"uhat", b.params.target},
                   {"dJ", s.field->value},
                   {"G", *s.direction},
                   {"nodeclass", node_class_codes(s.field->node_class)}});
    };
    const auto result = opt.run(opt.initial_levelset(), [&](const IterationState& s) {
        if (cfg.snapshot_every > 0 && s.iter % cfg.snapshot_every == 0) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%04d.vtk", s.iter);
            snapshot(s, name);
        }
    });
    const auto fin = analytic_solution(*b.ctx, result.phi, b.params);
    const auto direction = generalized_derivative(fin.field);
    IterationState last_state;
    last_state.iter = result.history.back().iter;
    last_state.phi = &result.phi;
    last_state.state = &fin.state;
    last_state.adjoint = &fin.adjoint;
    last_state.field = &fin.field;
    last_state.direction = &direction;
    snapshot(last_state, "final.vtk");
    write_history_csv((dir / "history.csv").string(), result.history);
    write_interface_vtk((dir / "interface.vtk").string(), interface_segments(*b.mesh, result.phi));

    const auto& first = result.history.front();
    const auto& last = result.history.back();
    std::cout << "iterations " << last.iter << " (" << to_string(result.reason) << ")\n"
              << "J " << format_double(first.objective) << " -> " << format_double(last.objective) << '\n'
              << "normG " << format_double(first.norm_g) << " -> " << format_double(last.norm_g) << '\n';
    for (const auto& c : negative_components(*b.mesh, result.phi))
        std::cout << "component area " << format_double(c.area) << " centroid (" << format_double(c.centroid.x) << ", "
                  << format_double(c.centroid.y) << ")\n";
    const bool reduced = last.objective <= cfg.required_reduction * first.objective;
    if (!reduced) std::cerr << "objective not reduced by the required factor " << format_double(cfg.required_reduction) << '\n';
    return reduced ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-set topology optimization with numerical topological-shape derivatives"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration");
        sub->add_option("--output", opt.output, "output directory");
        sub->add_option("--mesh-level", opt.mesh_level, "squares per side")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    };
    auto* verify = app.add_subcommand("verify", "compare analytic derivatives with fd, cs and hd estimates");
    add_common(verify);
    verify->add_option("--method", opt.method, "single method")->check(CLI::IsMember({"fd", "cs", "hd"}));
    auto* optimize = app.add_subcommand("optimize", "run the level-set reconstruction");
    add_common(optimize);
    auto* info = app.add_subcommand("mesh-info", "print mesh counts");
    int info_level = 8;
    info->add_option("--mesh-level", info_level, "squares per side")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    try {
        if (info->parsed()) return cmd_mesh_info(info_level);
        const RunConfig cfg = resolve(opt);
        if (verify->parsed()) return cmd_verify(cfg);
        return cmd_optimize(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SolverBreakdown& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
