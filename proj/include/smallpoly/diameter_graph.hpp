#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "smallpoly/geometry.hpp"

namespace smallpoly {

enum class GraphClass { DFamily, BFamily, Other };

/// Unit-distance graph over the polygon's vertices: an edge exists exactly
/// between vertex pairs whose distance is 1 within tolerance.
struct DiameterGraph {
    std::vector<std::pair<int, int>> edges;
    int cycle_length = 0;
    int pendant_count = 0;
    GraphClass classification = GraphClass::Other;
};

inline const char* to_string(GraphClass c) {
    switch (c) {
        case GraphClass::DFamily: return "d-family";
        case GraphClass::BFamily: return "b-family";
        default: return "other";
    }
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Extracts and classifies the diameter graph. Pendant edges are those
/// incident to a degree-1 vertex; the remaining edges must form a single
/// cycle for a family classification. Ambiguous structures come back as
/// GraphClass::Other, never a forced classification.
inline DiameterGraph extract_diameter_graph(const Polygon& p, double tol = 1e-9) {
    validate(p);
    const int n = static_cast<int>(p.size());
    DiameterGraph g;
    std::vector<int> degree(p.size(), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(distance(p.vertices[i], p.vertices[j]) - 1.0) <= tol) {
                g.edges.emplace_back(i, j);
                ++degree[i];
                ++degree[j];
            }
        }
    }

    std::vector<std::pair<int, int>> cycle_edges;
    int pendants = 0;
    for (const auto& [a, b] : g.edges) {
        if (degree[a] == 1 || degree[b] == 1) {
            ++pendants;
        } else {
            cycle_edges.emplace_back(a, b);
        }
    }
    g.pendant_count = pendants;

    // The non-pendant edges must form one cycle: every touched vertex has
    // exactly two incident cycle edges and union-find sees one component.
    std::vector<int> cycle_degree(p.size(), 0);
    detail::UnionFind uf(p.size());
    for (const auto& [a, b] : cycle_edges) {
        ++cycle_degree[a];
        ++cycle_degree[b];
        uf.unite(a, b);
    }
    int cycle_vertices = 0;
    bool valid_cycle = !cycle_edges.empty();
    int root = -1;
    for (int v = 0; v < n; ++v) {
        if (cycle_degree[v] == 0) continue;
        ++cycle_vertices;
        if (cycle_degree[v] != 2) valid_cycle = false;
        if (root < 0) root = uf.find(v);
        if (uf.find(v) != root) valid_cycle = false;
    }
    if (valid_cycle && static_cast<int>(cycle_edges.size()) == cycle_vertices) {
        g.cycle_length = static_cast<int>(cycle_edges.size());
    } else {
        g.cycle_length = 0;
        return g;  // classification stays Other
    }

    if (n >= 16 && g.cycle_length == 3 * n / 4 - 1 && g.pendant_count == n / 4 + 1) {
        g.classification = GraphClass::DFamily;
    } else if (g.cycle_length == n / 2 + 1 && g.pendant_count == n / 2 - 1) {
        g.classification = GraphClass::BFamily;
    }
    return g;
}

}  // namespace smallpoly
