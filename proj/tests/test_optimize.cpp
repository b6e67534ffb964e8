#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tsopt/optimize.hpp"
#include "tsopt/problem.hpp"

using namespace tsopt;

namespace {

LevelSet<double> random_unit(const Optimizer& opt, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    LevelSet<double> v(n);
    for (double& x : v) x = g(rng);
    const double s = opt.norm(v);
    for (double& x : v) x /= s;
    return v;
}

}  // namespace

TEST_CASE("mass inner product") {
    const Benchmark bm = make_benchmark(16);
    const Optimizer opt(*bm.ctx, bm.params);
    const std::vector<double> one(bm.mesh->num_nodes(), 1.0);
    CHECK(opt.inner(one, one) == doctest::Approx(1.0).epsilon(1e-14));
    const auto x = interpolate(*bm.mesh, [](const Point& p) { return p.x; });
    CHECK(opt.inner(x, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(opt.norm(opt.initial_levelset()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("slerp endpoints and midpoint") {
    const Benchmark bm = make_benchmark(8);
    const Optimizer opt(*bm.ctx, bm.params);
    const int n = bm.mesh->num_nodes();
    const auto phi = random_unit(opt, n, 1);
    auto g = random_unit(opt, n, 2);
    for (double& v : g) v *= 3.5;
    const auto at0 = opt.slerp_update(phi, g, 0.0).psi;
    const auto at1 = opt.slerp_update(phi, g, 1.0).psi;
    for (int k = 0; k < n; ++k) {
        CHECK(at0[k] == doctest::Approx(phi[k]).epsilon(1e-12).scale(1e-12));
        CHECK(at1[k] == doctest::Approx(g[k] / 3.5).epsilon(1e-12).scale(1e-12));
    }
    const auto half = opt.slerp_update(phi, g, 0.5);
    CHECK(opt.angle(phi, half.psi) == doctest::Approx(0.5 * half.theta).epsilon(1e-10));
}

TEST_CASE("slerp on orthogonal directions") {
    const Mesh m = unit_square_mesh(4);
    const MeshContext ctx(m);
    const Optimizer opt(ctx, ProblemParams{});
    // Constant and a function with zero mean are orthogonal in L2.
    const auto phi = opt.initial_levelset();
    auto g = interpolate(m, [](const Point& p) { return p.x - 0.5; });
    const auto step = opt.slerp_update(phi, g, 0.5);
    CHECK(step.theta == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    const double gn = opt.norm(g);
    for (int k = 0; k < m.num_nodes(); ++k)
        CHECK(step.psi[k] == doctest::Approx(std::sqrt(0.5) * (phi[k] + g[k] / gn)).epsilon(1e-12));
}

TEST_CASE("slerp preserves the norm") {
    const Benchmark bm = make_benchmark(8);
    const Optimizer opt(*bm.ctx, bm.params);
    const int n = bm.mesh->num_nodes();
    for (unsigned seed = 0; seed < 20; ++seed) {
        const auto phi = random_unit(opt, n, 2 * seed + 10);
        const auto g = random_unit(opt, n, 2 * seed + 11);
        for (double kappa : {0.0, 0.1, 0.5, 0.9, 1.0})
            CHECK(std::abs(opt.norm(opt.slerp_update(phi, g, kappa).psi) - 1.0) <= 1e-12);
    }
}

TEST_CASE("slerp degenerate cases") {
    const Benchmark bm = make_benchmark(4);
    const Optimizer opt(*bm.ctx, bm.params);
    const auto phi = opt.initial_levelset();
    CHECK(opt.slerp_update(phi, phi, 0.7).psi == phi);
    auto opposite = phi;
    for (double& v : opposite) v = -v;
    CHECK_THROWS_AS(opt.slerp_update(phi, opposite, 0.5), DegenerateAngle);
    CHECK_THROWS_AS(opt.slerp_update(phi, std::vector<double>(phi.size(), 0.0), 0.5), DegenerateAngle);
}

TEST_CASE("smoothing averages topological nodes only") {
    const Benchmark bm = make_benchmark(8);
    const Optimizer opt(*bm.ctx, bm.params);
    const LevelSet<double> constant(bm.mesh->num_nodes(), -0.4);
    for (double v : opt.smooth(constant)) CHECK(v == doctest::Approx(-0.4).epsilon(1e-15));
    const auto phi = interpolate(*bm.mesh, verification_levelset);
    const auto s = opt.smooth(phi);
    for (int k = 0; k < bm.mesh->num_nodes(); ++k) {
        if (classify_node(*bm.mesh, phi, k) == NodeClass::S) {
            CHECK(s[k] == phi[k]);
        } else {
            double mean = 0.0;
            for (int v : bm.mesh->one_ring[k]) mean += phi[v];
            CHECK(s[k] == doctest::Approx(mean / bm.mesh->one_ring[k].size()));
        }
    }
}

TEST_CASE("configuration checks") {
    OptimizerConfig c;
    CHECK_NOTHROW(c.validate());
    c.kappa_shrink = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.max_iter = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(parse_line_search("first") == LineSearch::FirstDecrease);
    CHECK(to_string(LineSearch::BestDecrease) == "best");
    CHECK_THROWS_AS(parse_line_search("newton"), ConfigError);
}

TEST_CASE("short run decreases the objective monotonically") {
    const Benchmark bm = make_benchmark(8);
    OptimizerConfig cfg;
    cfg.max_iter = 30;
    const Optimizer opt(*bm.ctx, bm.params, cfg);
    int observed = 0;
    const auto res = opt.run(opt.initial_levelset(), [&](const IterationState& s) {
        CHECK(s.iter == observed);
        ++observed;
    });
    REQUIRE(!res.history.empty());
    CHECK(observed == static_cast<int>(res.history.size()));
    for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(res.history[i].objective < res.history[i - 1].objective);
    for (const auto& row : res.history) {
        CHECK(row.slerp_norm_deviation <= 1e-12);
        CHECK(row.n_tminus + row.n_tplus + row.n_s == bm.mesh->num_nodes());
    }
    CHECK(res.history.back().objective < 0.1 * res.history.front().objective);
    CHECK(opt.norm(res.phi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero iterations only record the initial state") {
    const Benchmark bm = make_benchmark(8);
    OptimizerConfig cfg;
    cfg.max_iter = 0;
    const Optimizer opt(*bm.ctx, bm.params, cfg);
    const auto res = opt.run(opt.initial_levelset());
    REQUIRE(res.history.size() == 1);
    CHECK(res.reason == StopReason::MaxIterations);
    const auto start = opt.initial_levelset();
    for (std::size_t k = 0; k < start.size(); ++k) CHECK(res.phi[k] == doctest::Approx(start[k]).epsilon(1e-15));
}

TEST_CASE("runs are deterministic") {
    const Benchmark bm = make_benchmark(8);
    OptimizerConfig cfg;
    cfg.max_iter = 10;
    const Optimizer opt(*bm.ctx, bm.params, cfg);
    const auto a = opt.run(opt.initial_levelset());
    const auto b = opt.run(opt.initial_levelset());
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].objective == b.history[i].objective);
        CHECK(a.history[i].kappa == b.history[i].kappa);
    }
    CHECK(a.phi == b.phi);
}

TEST_CASE("starting at the target stops without moving") {
    const Benchmark bm = make_benchmark(8);
    const Optimizer opt(*bm.ctx, bm.params);
    const auto res = opt.run(bm.target_levelset);
    // Zero tracking error leaves no descent direction.
    CHECK(res.history.size() == 1);
    CHECK(res.history.front().objective < 1e-28);
}
