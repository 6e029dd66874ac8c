#pragma once

#include "bstar/coeff.hpp"
#include "bstar/graph.hpp"
#include "bstar/graph_sum.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>

namespace bstar {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

inline json graph_to_json(const PointedMultiDigraph& g) {
    return json{{"n_distinguished", g.n_distinguished},
                {"n_ordinary", g.n_ordinary()},
                {"adj", g.adj}};
}

inline PointedMultiDigraph graph_from_json(const json& j) {
    PointedMultiDigraph g(j.at("n_distinguished").get<int>(),
                          j.at("adj").get<std::vector<std::vector<int>>>());
    if (j.contains("n_ordinary") && j.at("n_ordinary").get<int>() != g.n_ordinary())
        throw std::invalid_argument("inconsistent vertex counts in graph JSON");
    return g;
}

inline json sum_to_json(const GraphSum& s) {
    json terms = json::array();
    for (const auto& [g, c] : s.terms())
        terms.push_back(json{{"graph", graph_to_json(g)}, {"coeff", to_string(c)}});
    return terms;
}

inline json table_to_json(const CoefficientTable& t) {
    json rows = json::array();
    for (const auto& [g, v] : t.rows)
        rows.push_back(json{{"graph", graph_to_json(g)}, {"value", to_string(v)}});
    return json{{"schema_version", kSchemaVersion},
                {"weight", t.weight},
                {"kind", kind_name(t.kind)},
                {"rows", rows}};
}

// Enumeration cache: one file per weight holding the all-stable pointed
// list; mismatched schema versions are ignored, not migrated. Writes go
// through a temp file and a rename.
inline std::optional<std::vector<PointedMultiDigraph>> cache_load(const std::string& dir,
                                                                  int weight) {
    std::ifstream in(dir + "/graphs-w" + std::to_string(weight) + ".json");
    if (!in) return std::nullopt;
    json j;
    try {
        in >> j;
        if (j.at("schema_version").get<int>() != kSchemaVersion) return std::nullopt;
        if (j.at("weight").get<int>() != weight) return std::nullopt;
        std::vector<PointedMultiDigraph> out;
        for (const auto& gj : j.at("graphs")) out.push_back(graph_from_json(gj));
        return out;
    } catch (...) {
        return std::nullopt;
    }
}

inline void cache_store(const std::string& dir, int weight,
                        const std::vector<PointedMultiDigraph>& graphs) {
    json j{{"schema_version", kSchemaVersion}, {"weight", weight}, {"class", "all"}};
    json arr = json::array();
    for (const auto& g : graphs) arr.push_back(graph_to_json(g));
    j["graphs"] = arr;
    std::string path = dir + "/graphs-w" + std::to_string(weight) + ".json";
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;  // cache is best-effort
        out << j.dump(1) << "\n";
    }
    std::rename(tmp.c_str(), path.c_str());
}

}  // namespace bstar
