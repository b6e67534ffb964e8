#include "tsopt/problem.hpp"

#include <algorithm>
#include <cmath>

namespace tsopt {

double two_circle_target(const Point& p) {
    const double a = (p.x - 0.3) * (p.x - 0.3) + (p.y - 0.4) * (p.y - 0.4) - 0.04;
    const double b = (p.x - 0.7) * (p.x - 0.7) + (p.y - 0.7) * (p.y - 0.7) - 0.01;
    return a * b;
}

Benchmark make_benchmark(int n, ProblemParams params) {
    params.validate();
    Benchmark b;
    b.mesh = std::make_unique<Mesh>(unit_square_mesh(n));
    b.ctx = std::make_unique<MeshContext>(*b.mesh);
    b.target_levelset = interpolate(*b.mesh, two_circle_target);
    params.target.clear();
    const auto sys = assemble(*b.ctx, b.target_levelset, params);
    params.target = solve_state(*b.ctx, sys);
    b.params = std::move(params);
    return b;
}

}  // namespace tsopt

namespace tsopt {

double verification_levelset(const Point& p) {
    const double d1 = std::hypot(p.x - 0.3, p.y - 0.4) - 0.185;
    const double d2 = std::hypot(p.x - 0.7, p.y - 0.7) - 0.125;
    return 10.0 * std::min(d1, d2);
}

}  // namespace tsopt
