#pragma once

#include <memory>

#include "tsopt/fem.hpp"

namespace tsopt {

// Product of two circle level sets centered at (0.3, 0.4) r=0.2 and (0.7, 0.7) r=0.1.
double two_circle_target(const Point& p);

// Mesh, assembly context and data of the reconstruction benchmark.
struct Benchmark {
    std::unique_ptr<Mesh> mesh;
    std::unique_ptr<MeshContext> ctx;
    LevelSet<double> target_levelset;
    ProblemParams params;  // target state filled in from one solve at the target level set
};

Benchmark make_benchmark(int n, ProblemParams params = {});

}  // namespace tsopt

namespace tsopt {

// Fixed level set for derivative checks: scaled distance to two circles near the target,
// with radii that keep every node of the n=8 mesh clear of the interface.
double verification_levelset(const Point& p);

}  // namespace tsopt
