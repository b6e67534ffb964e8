#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsopt/fem.hpp"
#include "tsopt/optimize.hpp"

namespace tsopt {

struct VerificationConfig {
    std::vector<std::string> methods{"fd", "cs", "hd"};
    std::vector<double> fd_steps;
    std::vector<double> cs_steps;
    std::vector<double> hd_steps;
    double hd_tolerance = 1e-10;
};

struct RunConfig {
    std::optional<int> mesh_level;  // unset: 8 for verify, 16 for optimize
    std::string output_dir = "out";
    int threads = 1;
    int snapshot_every = 100;
    double required_reduction = 1.0;  // optimize succeeds when J_final <= required_reduction * J_initial
    ProblemParams problem;
    OptimizerConfig optimizer;
    VerificationConfig verification;

    void validate() const;
};

// Missing keys keep their defaults; unknown keys and type mismatches raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& cfg);

}  // namespace tsopt
