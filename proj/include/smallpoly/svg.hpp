#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "smallpoly/document.hpp"

namespace smallpoly {

/// Writes the polygon in the figure style of this library: boundary edges
/// dashed, diameter-graph edges solid. Scale is 500 px per diameter unit
/// with a 5% padded viewport; SVG y grows downward so y is flipped.
inline void write_svg(const PolygonDocument& d, std::ostream& os) {
    constexpr double kScale = 500.0;
    double min_x = d.vertices[0].x, max_x = d.vertices[0].x;
    double min_y = d.vertices[0].y, max_y = d.vertices[0].y;
    for (const Point2& v : d.vertices) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const double pad = 0.05 * std::max(max_x - min_x, max_y - min_y);
    const double w = (max_x - min_x + 2 * pad) * kScale;
    const double h = (max_y - min_y + 2 * pad) * kScale;
    auto px = [&](Point2 p) {
        return std::pair<double, double>{(p.x - min_x + pad) * kScale,
                                         (max_y + pad - p.y) * kScale};
    };
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.2f\" height=\"%.2f\" viewBox=\"0 0 %.2f %.2f\">\n",
                  w, h, w, h);
    os << buf;
    const std::size_t n = d.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x1, y1] = px(d.vertices[i]);
        const auto [x2, y2] = px(d.vertices[(i + 1) % n]);
        std::snprintf(buf, sizeof buf,
                      "  <line class=\"boundary\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                      "y2=\"%.2f\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n",
                      x1, y1, x2, y2);
        os << buf;
    }
    for (const auto& [a, b] : d.graph_edges) {
        const auto [x1, y1] = px(d.vertices[a]);
        const auto [x2, y2] = px(d.vertices[b]);
        std::snprintf(buf, sizeof buf,
                      "  <line class=\"diameter\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                      "y2=\"%.2f\" stroke=\"black\"/>\n",
                      x1, y1, x2, y2);
        os << buf;
    }
    os << "</svg>\n";
}

}  // namespace smallpoly
