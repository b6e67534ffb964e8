#include "tsopt/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsopt/verify.hpp"

namespace tsopt {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items())
        if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& obj, const char* key, T& target) {
    if (obj.contains(key)) target = obj.at(key).get<T>();
}

std::vector<double> resolved(const std::vector<double>& steps, Method m) {
    return steps.empty() ? default_steps(m) : steps;
}

}  // namespace

void RunConfig::validate() const {
    problem.validate();
    optimizer.validate();
    if (mesh_level && *mesh_level < 1) throw ConfigError("mesh_level must be at least 1");
    if (threads < 0) throw ConfigError("threads must be non-negative");
    if (snapshot_every < 0) throw ConfigError("snapshot_every must be non-negative");
    if (!(required_reduction > 0.0)) throw ConfigError("required_reduction must be positive");
    for (const auto& m : verification.methods) parse_method(m);
    for (const auto* steps : {&verification.fd_steps, &verification.cs_steps, &verification.hd_steps})
        for (double h : *steps)
            if (!(h > 0.0)) throw ConfigError("verification steps must be positive");
    if (!(verification.hd_tolerance > 0.0)) throw ConfigError("hd_tolerance must be positive");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    json doc;
    try {
        doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    try {
        reject_unknown(doc, {"mesh_level", "output_dir", "threads", "snapshot_every", "required_reduction", "problem", "optimizer", "verification"},
                       "config");
        if (doc.contains("mesh_level") && !doc.at("mesh_level").is_null()) cfg.mesh_level = doc.at("mesh_level").get<int>();
        read(doc, "output_dir", cfg.output_dir);
        read(doc, "threads", cfg.threads);
        read(doc, "snapshot_every", cfg.snapshot_every);
        read(doc, "required_reduction", cfg.required_reduction);
        if (doc.contains("problem")) {
            const auto& p = doc.at("problem");
            reject_unknown(p, {"lambda1", "lambda2", "alpha1", "alpha2", "atilde1", "atilde2", "f1", "f2", "c1", "c2"},
                           "problem");
            auto& q = cfg.problem;
            read(p, "lambda1", q.lambda1);
            read(p, "lambda2", q.lambda2);
            read(p, "alpha1", q.alpha1);
            read(p, "alpha2", q.alpha2);
            read(p, "atilde1", q.atilde1);
            read(p, "atilde2", q.atilde2);
            read(p, "f1", q.f1);
            read(p, "f2", q.f2);
            read(p, "c1", q.c1);
            read(p, "c2", q.c2);
        }
        if (doc.contains("optimizer")) {
            const auto& o = doc.at("optimizer");
            reject_unknown(o, {"max_iter", "kappa_init", "kappa_min", "kappa_growth", "kappa_shrink", "smoothing", "theta_tol", "line_search"},
                           "optimizer");
            auto& q = cfg.optimizer;
            read(o, "max_iter", q.max_iter);
            read(o, "kappa_init", q.kappa_init);
            read(o, "kappa_min", q.kappa_min);
            read(o, "kappa_growth", q.kappa_growth);
            read(o, "kappa_shrink", q.kappa_shrink);
            read(o, "smoothing", q.smoothing);
            read(o, "theta_tol", q.theta_tol);
            if (o.contains("line_search")) q.line_search = parse_line_search(o.at("line_search").get<std::string>());
        }
        if (doc.contains("verification")) {
            const auto& v = doc.at("verification");
            reject_unknown(v, {"methods", "fd_steps", "cs_steps", "hd_steps", "hd_tolerance"}, "verification");
            auto& q = cfg.verification;
            read(v, "methods", q.methods);
            read(v, "fd_steps", q.fd_steps);
            read(v, "cs_steps", q.cs_steps);
            read(v, "hd_steps", q.hd_steps);
            read(v, "hd_tolerance", q.hd_tolerance);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
    json doc;
    doc["mesh_level"] = cfg.mesh_level ? json(*cfg.mesh_level) : json(nullptr);
    doc["output_dir"] = cfg.output_dir;
    doc["threads"] = cfg.threads;
    doc["snapshot_every"] = cfg.snapshot_every;
    doc["required_reduction"] = cfg.required_reduction;
    const auto& p = cfg.problem;
    doc["problem"] = {{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"alpha1", p.alpha1}, {"alpha2", p.alpha2},
                      {"atilde1", p.atilde1}, {"atilde2", p.atilde2}, {"f1", p.f1},           {"f2", p.f2},
                      {"c1", p.c1},           {"c2", p.c2}};
    const auto& o = cfg.optimizer;
    doc["optimizer"] = {{"max_iter", o.max_iter},         {"kappa_init", o.kappa_init},     {"kappa_min", o.kappa_min},
                        {"kappa_growth", o.kappa_growth}, {"kappa_shrink", o.kappa_shrink}, {"smoothing", o.smoothing},
                        {"theta_tol", o.theta_tol},       {"line_search", std::string(to_string(o.line_search))}};
    const auto& v = cfg.verification;
    doc["verification"] = {{"methods", v.methods},
                           {"fd_steps", resolved(v.fd_steps, Method::FiniteDifference)},
                           {"cs_steps", resolved(v.cs_steps, Method::ComplexStep)},
                           {"hd_steps", resolved(v.hd_steps, Method::HyperDual)},
                           {"hd_tolerance", v.hd_tolerance}};
    return doc.dump(2);
}

}  // namespace tsopt
