#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsopt/config.hpp"
#include "tsopt/io.hpp"

using namespace tsopt;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("empty config reproduces the reference experiment") {
    const RunConfig cfg = parse_config("");
    const auto& p = cfg.problem;
    CHECK(p.atilde1 == 1.0);
    CHECK(p.atilde2 == 0.9);
    CHECK(p.alpha1 == 1.0);
    CHECK(p.alpha2 == 0.2);
    CHECK(p.lambda1 == 1.0);
    CHECK(p.lambda2 == 0.6);
    CHECK(p.f1 == 1.0);
    CHECK(p.f2 == 0.5);
    CHECK(p.c1 == 0.0);
    CHECK(p.c2 == 1.0);
    CHECK(cfg.optimizer.max_iter == 800);
    CHECK(cfg.optimizer.kappa_init == 1.0);
    CHECK(cfg.optimizer.smoothing);
    CHECK(!cfg.mesh_level.has_value());
    CHECK(parse_config("{}").problem.lambda2 == 0.6);
}

TEST_CASE("emit, parse, emit is the identity") {
    RunConfig cfg;
    cfg.mesh_level = 12;
    cfg.output_dir = "results/a";
    cfg.threads = 3;
    cfg.problem.lambda2 = 0.1 + 0.2;
    cfg.optimizer.line_search = LineSearch::FirstDecrease;
    cfg.optimizer.kappa_min = 1e-7;
    cfg.verification.methods = {"cs"};
    cfg.verification.cs_steps = {1e-1, 1e-3};
    cfg.required_reduction = 1e-4;
    const std::string once = dump_config(cfg);
    const RunConfig back = parse_config(once);
    CHECK(dump_config(back) == once);
    CHECK(back.problem.lambda2 == cfg.problem.lambda2);
    CHECK(back.mesh_level == 12);
    CHECK(back.optimizer.line_search == LineSearch::FirstDecrease);
    CHECK(dump_config(parse_config(dump_config(parse_config("")))) == dump_config(parse_config("")));
}

TEST_CASE("invalid configs are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"problem": {"lambda2": 0}})").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": {"lambda_2": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"threads": "many"})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"verification": {"methods": ["xx"]}})").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mesh_level": 0})").validate(), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("doubles print with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("report files") {
    const fs::path dir = fs::temp_directory_path() / "tsopt_io_test";
    fs::create_directories(dir);
    const Mesh m = unit_square_mesh(2);

    std::vector<HistoryRow> hist(2);
    hist[0].objective = 0.5;
    hist[1].iter = 1;
    write_history_csv((dir / "history.csv").string(), hist);
    const auto h = slurp(dir / "history.csv");
    CHECK(h.rfind("iter,J,normG,kappa,theta,nTminus,nTplus,nS\n", 0) == 0);
    CHECK(std::count(h.begin(), h.end(), '\n') == 3);

    std::vector<double> field(m.num_nodes(), 1.5);
    write_vtk((dir / "m.vtk").string(), m, {{"phi", field}});
    const auto v = slurp(dir / "m.vtk");
    CHECK(v.find("# vtk DataFile Version") == 0);
    CHECK(v.find("POINTS 13 double") != std::string::npos);
    CHECK(v.find("CELLS 16 64") != std::string::npos);
    CHECK(v.find("SCALARS phi double") != std::string::npos);

    write_interface_vtk((dir / "i.vtk").string(), {{0, {0.0, 0.0}, {1.0, 1.0}}});
    CHECK(slurp(dir / "i.vtk").find("CELL_TYPES 1\n3") != std::string::npos);

    CHECK(node_class_codes({NodeClass::TMinus, NodeClass::S, NodeClass::TPlus}) == std::vector<double>{-1, 0, 1});
    fs::remove_all(dir);
}
