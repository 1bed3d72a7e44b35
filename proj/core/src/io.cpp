#include "dspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace dspec {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed JSON");
    return j;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const char* where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
    }
}

double require_number(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ConfigError(std::string(where) + ": missing numeric \"" + key + "\"");
    return obj[key].get<double>();
}

int require_int(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number_integer())
        throw ConfigError(std::string(where) + ": missing integer \"" + key + "\"");
    return obj[key].get<int>();
}

Eigen::VectorXd number_array(const json& arr, const char* where) {
    if (!arr.is_array()) throw ConfigError(std::string(where) + ": expected an array");
    Eigen::VectorXd out(arr.size());
    Eigen::Index i = 0;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ConfigError(std::string(where) + ": non-numeric entry");
        out[i++] = v.get<double>();
    }
    return out;
}

} // namespace

WeightedGraph load_graph_json(const std::string& text) {
    const json j = parse(text);
    check_keys(j, {"vertices", "edges"}, "graph");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigError("graph: missing \"vertices\" array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ConfigError("graph: missing \"edges\" array");

    const int n = static_cast<int>(j["vertices"].size());
    Eigen::VectorXd kill = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd measure = Eigen::VectorXd::Ones(n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& v : j["vertices"]) {
        check_keys(v, {"id", "m", "c"}, "vertex");
        const int id = require_int(v, "id", "vertex");
        if (id < 0 || id >= n) throw IndexOutOfRange("vertex id " + std::to_string(id));
        if (seen[static_cast<std::size_t>(id)])
            throw ConfigError("duplicate vertex id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = true;
        if (v.contains("m")) measure[id] = v["m"].get<double>();
        if (v.contains("c")) kill[id] = v["c"].get<double>();
    }

    std::vector<Edge> edges;
    edges.reserve(j["edges"].size());
    for (const auto& e : j["edges"]) {
        check_keys(e, {"u", "v", "b"}, "edge");
        edges.push_back(
            {require_int(e, "u", "edge"), require_int(e, "v", "edge"), require_number(e, "b", "edge")});
    }
    return build_graph(n, edges, kill, measure);
}

WeightedGraph load_graph_file(const std::string& path) {
    return load_graph_json(read_file(path));
}

std::string graph_to_json(const WeightedGraph& g) {
    json out;
    out["vertices"] = json::array();
    for (int x = 0; x < g.n; ++x) {
        json v;
        v["id"] = x;
        v["m"] = g.measure[x];
        v["c"] = g.kill[x];
        out["vertices"].push_back(std::move(v));
    }
    out["edges"] = json::array();
    for (int x = 0; x < g.n; ++x) {
        for (const auto& [y, w] : g.adj[static_cast<std::size_t>(x)]) {
            if (y <= x) continue;
            json e;
            e["u"] = x;
            e["v"] = y;
            e["b"] = w;
            out["edges"].push_back(std::move(e));
        }
    }
    return out.dump() + "\n";
}

void save_graph_file(const WeightedGraph& g, const std::string& path) {
    atomic_write_file(path, graph_to_json(g));
}

GridSpec parse_grid_json(const std::string& text) {
    const json j = parse(text);
    check_keys(j, {"dim", "extent", "h", "origin"}, "grid");
    GridSpec grid;
    grid.dim = require_int(j, "dim", "grid");
    if (!j.contains("extent") || !j["extent"].is_array())
        throw ConfigError("grid: missing \"extent\" array");
    for (const auto& e : j["extent"]) {
        if (!e.is_number_integer()) throw ConfigError("grid: extent entries must be integers");
        grid.extent.push_back(e.get<int>());
    }
    grid.h = require_number(j, "h", "grid");
    if (j.contains("origin")) {
        const Eigen::VectorXd o = number_array(j["origin"], "grid origin");
        grid.origin.assign(o.data(), o.data() + o.size());
    }
    grid.validate();
    return grid;
}

KernelSpec parse_kernel_json(const std::string& text, const GridSpec& grid) {
    const json j = parse(text);
    if (!j.contains("type") || !j["type"].is_string())
        throw ConfigError("kernel: missing \"type\"");
    const std::string type = j["type"].get<std::string>();

    KernelSpec spec;
    if (type == "fractional") {
        check_keys(j, {"type", "alpha"}, "kernel");
        spec.alpha = require_number(j, "alpha", "kernel");
        spec.lower_const = 0.0;
        spec.kernel = power_law_kernel(grid, spec.alpha);
        return spec;
    }
    if (type == "table") {
        check_keys(j, {"type", "alpha", "pairs", "lower_const"}, "kernel");
        spec.alpha = require_number(j, "alpha", "kernel");
        spec.lower_const = j.contains("lower_const") ? require_number(j, "lower_const", "kernel") : 0.0;
        if (!j.contains("pairs") || !j["pairs"].is_array())
            throw ConfigError("kernel: missing \"pairs\" array");
        auto table = std::make_shared<std::map<std::pair<int, int>, double>>();
        const int n = grid.point_count();
        for (const auto& p : j["pairs"]) {
            check_keys(p, {"u", "v", "j"}, "kernel pair");
            const int u = require_int(p, "u", "kernel pair");
            const int v = require_int(p, "v", "kernel pair");
            const double value = require_number(p, "j", "kernel pair");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw IndexOutOfRange("kernel pair index out of range");
            const auto key = std::make_pair(std::min(u, v), std::max(u, v));
            if (table->count(key)) throw ConfigError("duplicate kernel pair");
            (*table)[key] = value;
        }
        spec.kernel = [table](int a, int b) {
            const auto it = table->find({std::min(a, b), std::max(a, b)});
            return it == table->end() ? 0.0 : it->second;
        };
        return spec;
    }
    throw ConfigError("kernel: unknown type \"" + type + "\"");
}

WeightedGraph build_from_model_json(const std::string& text) {
    const json j = parse(text);
    check_keys(j, {"grid", "kernel"}, "model");
    if (!j.contains("grid") || !j.contains("kernel"))
        throw ConfigError("model: needs \"grid\" and \"kernel\"");
    const GridSpec grid = parse_grid_json(j["grid"].dump());
    const KernelSpec spec = parse_kernel_json(j["kernel"].dump(), grid);
    return general_jump_graph(grid, spec).graph;
}

PerturbationConfig parse_perturbation_json(const std::string& text, int n) {
    const json j = parse(text);
    check_keys(j, {"plus", "minus", "alpha", "override_admissibility"}, "perturbation");
    PerturbationConfig cfg;
    cfg.plus = j.contains("plus") ? number_array(j["plus"], "perturbation plus")
                                  : Eigen::VectorXd::Zero(n).eval();
    cfg.minus = j.contains("minus") ? number_array(j["minus"], "perturbation minus")
                                    : Eigen::VectorXd::Zero(n).eval();
    cfg.alpha = require_number(j, "alpha", "perturbation");
    if (j.contains("override_admissibility")) {
        if (!j["override_admissibility"].is_boolean())
            throw ConfigError("perturbation: override_admissibility must be a bool");
        cfg.override_admissibility = j["override_admissibility"].get<bool>();
    }
    if (cfg.plus.size() != n || cfg.minus.size() != n)
        throw DimensionMismatch("perturbation densities must have length n");
    return cfg;
}

PerturbationConfig load_perturbation_file(const std::string& path, int n) {
    return parse_perturbation_json(read_file(path), n);
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw ConfigError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("rename failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace dspec
