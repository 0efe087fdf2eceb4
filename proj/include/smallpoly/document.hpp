#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smallpoly/constructions.hpp"
#include "smallpoly/diameter_graph.hpp"
#include "smallpoly/geometry.hpp"
#include "smallpoly/optimize.hpp"

namespace smallpoly {

/// On-disk polygon record. Vertices carry 17 significant digits so the
/// parsed doubles are bit-identical to the originals, which also makes
/// serialize -> parse -> serialize byte-stable.
struct PolygonDocument {
    std::string schema_version = "1";
    std::string family;
    int n = 0;
    std::vector<Point2> vertices;
    double perimeter = 0.0;
    double width = 0.0;
    double diameter = 0.0;
    std::vector<std::pair<int, int>> graph_edges;
    int cycle_length = 0;
    int pendant_count = 0;
};

inline PolygonDocument make_document(const ConstructionReport& r) {
    PolygonDocument d;
    d.family = to_string(r.family);
    d.n = static_cast<int>(r.polygon.size());
    d.vertices = r.polygon.vertices;
    d.perimeter = r.metrics.perimeter;
    d.width = r.metrics.width;
    d.diameter = r.metrics.diameter;
    d.graph_edges = r.diameter_graph.edges;
    d.cycle_length = r.diameter_graph.cycle_length;
    d.pendant_count = r.diameter_graph.pendant_count;
    return d;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string to_json_string(const PolygonDocument& d) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": \"" << d.schema_version << "\",\n";
    os << "  \"family\": \"" << d.family << "\",\n";
    os << "  \"n\": " << d.n << ",\n";
    os << "  \"vertices\": [\n";
    for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        os << "    [" << detail::fmt_double(d.vertices[i].x) << ", "
           << detail::fmt_double(d.vertices[i].y) << "]"
           << (i + 1 < d.vertices.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"metrics\": {\n";
    os << "    \"perimeter\": " << detail::fmt_double(d.perimeter) << ",\n";
    os << "    \"width\": " << detail::fmt_double(d.width) << ",\n";
    os << "    \"diameter\": " << detail::fmt_double(d.diameter) << "\n";
    os << "  },\n";
    os << "  \"diameter_graph\": {\n";
    os << "    \"edges\": [";
    for (std::size_t i = 0; i < d.graph_edges.size(); ++i) {
        os << "[" << d.graph_edges[i].first << ", " << d.graph_edges[i].second << "]"
           << (i + 1 < d.graph_edges.size() ? ", " : "");
    }
    os << "],\n";
    os << "    \"cycle_length\": " << d.cycle_length << ",\n";
    os << "    \"pendant_count\": " << d.pendant_count << "\n";
    os << "  }\n";
    os << "}\n";
    return os.str();
}

/// Parses a PolygonDocument; throws std::runtime_error on malformed input.
inline PolygonDocument parse_document_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        PolygonDocument d;
        d.schema_version = j.at("schema_version").get<std::string>();
        d.family = j.at("family").get<std::string>();
        d.n = j.at("n").get<int>();
        for (const auto& v : j.at("vertices")) {
            d.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        const auto& m = j.at("metrics");
        d.perimeter = m.at("perimeter").get<double>();
        d.width = m.at("width").get<double>();
        d.diameter = m.at("diameter").get<double>();
        const auto& g = j.at("diameter_graph");
        for (const auto& e : g.at("edges")) {
            d.graph_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        d.cycle_length = g.at("cycle_length").get<int>();
        d.pendant_count = g.at("pendant_count").get<int>();
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed polygon document: ") + e.what());
    }
}

inline std::string to_json_string(const OptimizationResult& r, std::uint64_t seed) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": \"1\",\n";
    os << "  \"problem\": \"" << to_string(r.problem) << "\",\n";
    os << "  \"n\": " << r.n << ",\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"alphas\": [\n";
    for (std::size_t i = 0; i < r.alphas.alphas.size(); ++i) {
        os << "    " << detail::fmt_double(r.alphas.alphas[i])
           << (i + 1 < r.alphas.alphas.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"objective\": " << detail::fmt_double(r.objective) << ",\n";
    os << "  \"residual_closure\": " << detail::fmt_double(r.residual_closure) << ",\n";
    os << "  \"residual_anglesum\": " << detail::fmt_double(r.residual_anglesum) << ",\n";
    os << "  \"iterations\": " << r.iterations << ",\n";
    os << "  \"converged\": " << (r.converged ? "true" : "false") << "\n";
    os << "}\n";
    return os.str();
}

inline std::string to_vertex_csv(const std::vector<Point2>& vertices) {
    std::ostringstream os;
    for (const Point2& v : vertices) {
        os << detail::fmt_double(v.x) << "," << detail::fmt_double(v.y) << "\n";
    }
    return os.str();
}

inline std::vector<Point2> parse_vertex_csv(const std::string& text) {
    std::vector<Point2> verts;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        double x = 0.0, y = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2) {
            throw std::runtime_error("bad csv vertex at line " + std::to_string(lineno));
        }
        verts.push_back({x, y});
    }
    if (verts.empty()) throw std::runtime_error("csv contains no vertices");
    return verts;
}

}  // namespace smallpoly
