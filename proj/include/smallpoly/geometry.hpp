#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace smallpoly {

/// Absolute tolerance for geometric predicates. All lengths in this library
/// are O(1) because polygons are measured in diameter units, so absolute
/// comparisons are safe.
inline constexpr double kGeomTol = 1e-12;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Vertices in boundary order. Counterclockwise once produced by the
/// construction routines; measurement functions do not assume orientation.
struct Polygon {
    std::vector<Point2> vertices;

    std::size_t size() const { return vertices.size(); }
    Point2 vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
};

struct Metrics {
    double perimeter = 0.0;
    double width = 0.0;
    double diameter = 0.0;
    bool is_convex = false;
    bool is_small = false;
};

/// Throws std::invalid_argument unless the polygon has at least three
/// finite vertices and no two consecutive vertices coincide.
inline void validate(const Polygon& p) {
    const std::size_t n = p.size();
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices, got " +
                                    std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 v = p.vertices[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw std::invalid_argument("polygon vertex " + std::to_string(i) +
                                        " is not finite");
        }
        if (distance(v, p.vertex(i + 1)) <= kGeomTol) {
            throw std::invalid_argument("consecutive vertices " + std::to_string(i) +
                                        " and " + std::to_string((i + 1) % n) +
                                        " coincide");
        }
    }
}

inline double perimeter(const Polygon& p) {
    validate(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += distance(p.vertices[i], p.vertex(i + 1));
    }
    return sum;
}

/// Maximum pairwise vertex distance by exhaustive scan. This is the oracle
/// of record; any accelerated variant must match it exactly.
inline double diameter(const Polygon& p) {
    validate(p);
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            best = std::max(best, distance(p.vertices[i], p.vertices[j]));
        }
    }
    return best;
}

/// True iff all consecutive-edge cross products share one sign. Cross
/// products within kGeomTol of zero (collinear triples) are tolerated.
inline bool is_convex(const Polygon& p) {
    validate(p);
    int sign = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p.vertices[i];
        const Point2 b = p.vertex(i + 1);
        const Point2 c = p.vertex(i + 2);
        const double cr = cross(b - a, c - b);
        if (std::abs(cr) <= kGeomTol) continue;
        const int s = cr > 0.0 ? 1 : -1;
        if (sign == 0) {
            sign = s;
        } else if (s != sign) {
            return false;
        }
    }
    return true;
}

/// Number of vertices whose incident edges are collinear within tolerance.
/// Collinear triples are flagged here rather than treated as fatal.
inline int collinear_vertex_count(const Polygon& p) {
    validate(p);
    int count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p.vertices[i];
        const Point2 b = p.vertex(i + 1);
        const Point2 c = p.vertex(i + 2);
        if (std::abs(cross(b - a, c - b)) <= kGeomTol) ++count;
    }
    return count;
}

/// Minimum over sides of the maximum distance from a vertex to the side's
/// supporting line. Requires a convex polygon.
inline double width(const Polygon& p) {
    if (!is_convex(p)) {
        throw std::invalid_argument("width requires a convex polygon");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 a = p.vertices[i];
        const Point2 e = p.vertex(i + 1) - a;
        const double len = norm(e);
        double height = 0.0;
        for (const Point2& v : p.vertices) {
            height = std::max(height, std::abs(cross(e, v - a)) / len);
        }
        best = std::min(best, height);
    }
    return best;
}

inline Metrics measure(const Polygon& p) {
    Metrics m;
    m.perimeter = perimeter(p);
    m.diameter = diameter(p);
    m.is_convex = is_convex(p);
    m.width = m.is_convex ? width(p) : std::numeric_limits<double>::quiet_NaN();
    m.is_small = std::abs(m.diameter - 1.0) <= kGeomTol;
    return m;
}

}  // namespace smallpoly
