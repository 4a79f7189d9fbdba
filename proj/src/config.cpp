#include "cpwx/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cpwx/errors.hpp"

namespace cpwx {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError("config: missing required key '" + key + "' in " + where);
    }
    return *it;
}

double as_number(const json& v, const std::string& name) {
    if (!v.is_number()) throw ConfigError("config: '" + name + "' must be a number");
    return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& name) {
    if (!v.is_number_unsigned()) {
        throw ConfigError("config: '" + name + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Method parse_method(const std::string& s) {
    if (s == "wilcoxon") return Method::wilcoxon;
    if (s == "cusum") return Method::cusum;
    throw ConfigError("config: unknown method '" + s + "'");
}

Innovation parse_innovation(const std::string& s) {
    if (s == "normal") return Innovation::normal01;
    if (s == "t1") return Innovation::student_t1;
    throw ConfigError("config: unknown innovation '" + s + "'");
}

} // namespace

ExperimentSpec parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: document must be an object");
    reject_unknown_keys(doc, {"schema_version", "experiment", "model"}, "document root");

    const json& ver = require(doc, "schema_version", "document root");
    if (!ver.is_number_integer() || ver.get<int>() != kConfigSchemaVersion) {
        throw ConfigError("config: unsupported schema_version");
    }

    ExperimentSpec spec;

    const json& exp = require(doc, "experiment", "document root");
    if (!exp.is_object()) throw ConfigError("config: 'experiment' must be an object");
    reject_unknown_keys(exp, {"replications", "master_seed", "methods", "histogram_bins"},
                        "experiment");
    spec.replications = as_count(require(exp, "replications", "experiment"), "replications");
    spec.master_seed = static_cast<std::uint64_t>(
        as_count(require(exp, "master_seed", "experiment"), "master_seed"));
    if (exp.contains("histogram_bins")) {
        spec.histogram_bins = as_count(exp["histogram_bins"], "histogram_bins");
    }
    if (exp.contains("methods")) {
        const json& ms = exp["methods"];
        if (!ms.is_array() || ms.empty()) {
            throw ConfigError("config: 'methods' must be a nonempty array");
        }
        spec.methods.clear();
        for (const auto& m : ms) {
            if (!m.is_string()) throw ConfigError("config: method entries must be strings");
            spec.methods.push_back(parse_method(m.get<std::string>()));
        }
    }

    const json& model = require(doc, "model", "document root");
    if (!model.is_object()) throw ConfigError("config: 'model' must be an object");
    reject_unknown_keys(
        model, {"n", "theta", "delta", "rho", "innovation", "mu", "burn_in", "outliers"},
        "model");
    ChangePointConfig& cfg = spec.config;
    cfg.n = as_count(require(model, "n", "model"), "n");
    cfg.theta = as_number(require(model, "theta", "model"), "theta");
    cfg.delta = as_number(require(model, "delta", "model"), "delta");
    cfg.rho = as_number(require(model, "rho", "model"), "rho");
    const json& innov = require(model, "innovation", "model");
    if (!innov.is_string()) throw ConfigError("config: 'innovation' must be a string");
    cfg.innovation = parse_innovation(innov.get<std::string>());
    if (model.contains("mu")) cfg.mu = as_number(model["mu"], "mu");
    if (model.contains("burn_in")) cfg.burn_in = as_count(model["burn_in"], "burn_in");
    if (model.contains("outliers")) {
        const json& out = model["outliers"];
        if (!out.is_object()) throw ConfigError("config: 'outliers' must be an object");
        reject_unknown_keys(out, {"positions", "factor"}, "outliers");
        OutlierPlan plan;
        const json& pos = require(out, "positions", "outliers");
        if (!pos.is_array()) throw ConfigError("config: 'positions' must be an array");
        for (const auto& p : pos) plan.positions.push_back(as_number(p, "positions"));
        plan.factor = as_number(require(out, "factor", "outliers"), "factor");
        cfg.outliers = std::move(plan);
    }

    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return spec;
}

ExperimentSpec load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading config file: " + path);
    return parse_experiment_config(buffer.str());
}

} // namespace cpwx
