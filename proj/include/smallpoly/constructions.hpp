#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smallpoly/diameter_graph.hpp"
#include "smallpoly/geometry.hpp"
#include "smallpoly/roots.hpp"

namespace smallpoly {

enum class Family { Regular, Reinhardt, Bn, Dn, DnStar, BnStar };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::Regular: return "regular";
        case Family::Reinhardt: return "reinhardt";
        case Family::Bn: return "bn";
        case Family::Dn: return "dn";
        case Family::DnStar: return "dn-star";
        case Family::BnStar: return "bn-star";
    }
    return "?";
}

/// Angle vectors come in two shapes. The d-family drives a half cycle of
/// 3n/8 turning angles whose coefficient is 2 at every index k = 3j-2 and 1
/// elsewhere. The b-family drives a half cycle of n/4+1 angles with
/// coefficient 1 at both ends and 2 in the interior.
enum class AngleFamily { D, B };

struct InfeasibleAnglesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an angle vector produces a non-convex vertex set. Carries the
/// boundary index at which convexity first fails.
struct ConstructionError : std::runtime_error {
    int vertex_index;
    ConstructionError(const std::string& msg, int index)
        : std::runtime_error(msg), vertex_index(index) {}
};

struct AngleVector {
    AngleFamily family = AngleFamily::D;
    int n = 0;
    std::vector<double> alphas;

    static std::size_t expected_size(AngleFamily f, int n) {
        return f == AngleFamily::D ? static_cast<std::size_t>(3 * n / 8)
                                   : static_cast<std::size_t>(n / 4 + 1);
    }

    static std::vector<double> coefficients(AngleFamily f, int n) {
        const std::size_t m = expected_size(f, n);
        std::vector<double> c(m, 2.0);
        if (f == AngleFamily::D) {
            for (std::size_t k = 0; k < m; ++k) c[k] = (k % 3 == 1) ? 2.0 : 1.0;
        } else {
            c.front() = 1.0;
            c.back() = 1.0;
        }
        return c;
    }

    static std::vector<double> upper_bounds(AngleFamily f, int n) {
        const double pi = std::numbers::pi;
        const std::size_t m = expected_size(f, n);
        std::vector<double> ub(m, 0.0);
        if (f == AngleFamily::D) {
            // c_k * alpha_k <= pi/3
            const auto c = coefficients(f, n);
            for (std::size_t k = 0; k < m; ++k) ub[k] = pi / (3.0 * c[k]);
        } else {
            std::fill(ub.begin(), ub.end(), pi / 6.0);
            ub.back() = pi / 3.0;
        }
        return ub;
    }

    std::vector<double> coefficients() const { return coefficients(family, n); }
    std::vector<double> upper_bounds() const { return upper_bounds(family, n); }

    double angle_sum() const {
        const auto c = coefficients();
        double s = 0.0;
        for (std::size_t k = 0; k < alphas.size(); ++k) s += c[k] * alphas[k];
        return s;
    }

    void validate() const {
        const int min_n = family == AngleFamily::D ? 16 : 8;
        detail::require_power_of_two(n, min_n, "angle vector");
        if (alphas.size() != expected_size(family, n)) {
            throw InfeasibleAnglesError("angle vector has " + std::to_string(alphas.size()) +
                                        " entries, expected " +
                                        std::to_string(expected_size(family, n)));
        }
        const auto ub = upper_bounds();
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            if (!(alphas[k] >= 0.0) || alphas[k] > ub[k] + 1e-12) {
                throw InfeasibleAnglesError("angle " + std::to_string(k) +
                                            " violates its bounds");
            }
        }
        if (std::abs(angle_sum() - std::numbers::pi / 2.0) > 1e-12) {
            throw InfeasibleAnglesError("angle sum differs from pi/2 by more than 1e-12");
        }
    }
};

/// The alternating-angle vector alpha_k = pi/n + (-1)^k delta0(n).
inline AngleVector dn_angle_vector(int n) {
    detail::require_power_of_two(n, 16, "dn angles");
    const double d0 = delta0(n).delta0;
    AngleVector av{AngleFamily::D, n, {}};
    av.alphas.resize(AngleVector::expected_size(AngleFamily::D, n));
    for (std::size_t k = 0; k < av.alphas.size(); ++k) {
        av.alphas[k] = std::numbers::pi / n + (k % 2 == 0 ? d0 : -d0);
    }
    return av;
}

/// Closed-form perimeter and width of the prior b-family. This family's
/// vertex parametrization lives in other work; only the scalars are exposed.
struct BnScalars {
    double perimeter = 0.0;
    double width = 0.0;
};

inline BnScalars bn_scalar_metrics(int n) {
    detail::require_power_of_two(n, 4, "bn_scalar_metrics");
    const double pi = std::numbers::pi;
    const double half = 0.5 * std::asin(0.5 * std::sin(2.0 * pi / n));
    BnScalars s;
    s.perimeter = 2.0 * n * std::sin(pi / (2.0 * n)) * std::cos(pi / (2.0 * n) - half);
    s.width = std::cos(pi / n - half);
    return s;
}

struct ConstructionReport {
    Polygon polygon;
    Family family = Family::Regular;
    Metrics metrics;
    DiameterGraph diameter_graph;
    std::optional<double> delta;
};

namespace detail {

inline std::vector<Point2> regular_small_vertices(int n) {
    const double pi = std::numbers::pi;
    // Even n: opposite vertex pairs realize the diameter, circumradius 1/2.
    // Odd n: the longest vertex chords realize it, radius 1/(2 cos(pi/2n)).
    const double radius = n % 2 == 0 ? 0.5 : 1.0 / (2.0 * std::cos(pi / (2.0 * n)));
    std::vector<Point2> v(n);
    for (int k = 0; k < n; ++k) {
        const double ang = -pi / 2.0 + 2.0 * pi * k / n;
        v[k] = {radius * std::cos(ang), radius + radius * std::sin(ang)};
    }
    return v;
}

/// Orders vertices counterclockwise by polar angle about the centroid and
/// rotates the list so the origin vertex comes first.
inline void order_boundary(std::vector<Point2>& verts) {
    Point2 centroid{0.0, 0.0};
    for (const Point2& v : verts) centroid = centroid + v;
    centroid = (1.0 / static_cast<double>(verts.size())) * centroid;
    std::sort(verts.begin(), verts.end(), [&](Point2 a, Point2 b) {
        return std::atan2(a.y - centroid.y, a.x - centroid.x) <
               std::atan2(b.y - centroid.y, b.x - centroid.x);
    });
    std::size_t start = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const double d = std::abs(verts[i].x) + std::abs(verts[i].y);
        if (d < best) {
            best = d;
            start = i;
        }
    }
    std::rotate(verts.begin(), verts.begin() + start, verts.end());
}

inline void abort_if_not_convex(const Polygon& poly, const char* what) {
    if (is_convex(poly)) return;
    // report the first vertex whose turn disagrees in sign
    int sign = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const double cr = cross(poly.vertex(i + 1) - poly.vertices[i],
                                poly.vertex(i + 2) - poly.vertex(i + 1));
        if (std::abs(cr) <= kGeomTol) continue;
        const int s = cr > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) {
            throw ConstructionError(std::string(what) + ": vertex set is not convex at index " +
                                        std::to_string((i + 1) % poly.size()),
                                    static_cast<int>((i + 1) % poly.size()));
        }
    }
    throw ConstructionError(std::string(what) + ": vertex set is not convex", -1);
}

inline ConstructionReport finish_report(std::vector<Point2> verts, Family family,
                                        std::optional<double> delta, const char* what) {
    order_boundary(verts);
    ConstructionReport r;
    r.polygon.vertices = std::move(verts);
    abort_if_not_convex(r.polygon, what);
    r.family = family;
    r.metrics = measure(r.polygon);
    r.diameter_graph = extract_diameter_graph(r.polygon);
    r.delta = delta;
    return r;
}

}  // namespace detail

inline ConstructionReport regular_small_ngon(int n) {
    if (n < 3) {
        throw std::domain_error("regular_small_ngon requires n >= 3, got " +
                                std::to_string(n));
    }
    return detail::finish_report(detail::regular_small_vertices(n), Family::Regular,
                                 std::nullopt, "regular_small_ngon");
}

/// Reuleaux-based construction: blow the edges of the regular small m-gon
/// into unit arcs centered at the opposite vertex, drop n/m - 1 vertices at
/// equal arc-angle increments into each arc, and keep the convex hull.
inline ConstructionReport reinhardt_polygon(int m, int n) {
    if (m < 3 || m % 2 == 0) {
        throw std::domain_error("reinhardt_polygon requires odd m >= 3, got m = " +
                                std::to_string(m));
    }
    if (n < m || n % m != 0) {
        throw std::domain_error("reinhardt_polygon requires n to be a multiple of m");
    }
    const auto base = detail::regular_small_vertices(m);
    const int per_arc = n / m;
    std::vector<Point2> verts;
    verts.reserve(n);
    for (int i = 0; i < m; ++i) {
        const Point2 a = base[i];
        const Point2 b = base[(i + 1) % m];
        const Point2 center = base[(i + (m + 1) / 2) % m];
        verts.push_back(a);
        const double ang_a = std::atan2(a.y - center.y, a.x - center.x);
        const double ang_b = std::atan2(b.y - center.y, b.x - center.x);
        const double span = std::fmod(ang_b - ang_a + 2.0 * std::numbers::pi,
                                      2.0 * std::numbers::pi);
        for (int j = 1; j < per_arc; ++j) {
            const double ang = ang_a + span * j / per_arc;
            verts.push_back({center.x + std::cos(ang), center.y + std::sin(ang)});
        }
    }
    return detail::finish_report(std::move(verts), Family::Reinhardt, std::nullopt,
                                 "reinhardt_polygon");
}

/// Realizes an angle vector as a convex small polygon: the half cycle by
/// alternating partial-angle sums from the origin, the second half mirrored
/// across the y-axis, and one pendant vertex at unit distance along the
/// interior bisector of each attachment vertex.
inline ConstructionReport build_from_angles(const AngleVector& av,
                                            std::optional<Family> label = std::nullopt) {
    av.validate();
    const std::size_t half = av.alphas.size();
    const auto c = av.coefficients();

    // cumulative turning angles; edge k of the half cycle heads along
    // (+/- sin, +/- cos) of theta[k-1]
    std::vector<double> theta(half);
    double acc = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        acc += c[k] * av.alphas[k];
        theta[k] = acc;
    }

    const std::size_t cycle_len = 2 * half - 1;
    std::vector<Point2> cycle(cycle_len);
    cycle[0] = {0.0, 0.0};
    for (std::size_t k = 1; k < half; ++k) {
        const double s = (k % 2 == 1) ? 1.0 : -1.0;
        cycle[k] = {cycle[k - 1].x + s * std::sin(theta[k - 1]),
                    cycle[k - 1].y + s * std::cos(theta[k - 1])};
    }
    // the last computed cycle vertex must land on |x| = 1/2 so that the
    // axis-crossing edge is horizontal with unit length
    const double target = (half - 1) % 2 == 1 ? 0.5 : -0.5;
    const double closure = cycle[half - 1].x - target;
    if (std::abs(closure) > 1e-9) {
        throw InfeasibleAnglesError("cycle closure residual " + std::to_string(closure) +
                                    " exceeds 1e-9");
    }
    for (std::size_t k = half; k < cycle_len; ++k) {
        cycle[k] = {-cycle[cycle_len - k].x, cycle[cycle_len - k].y};
    }

    // pendant attachments: the d-family hangs one pendant off the origin and
    // off every cycle vertex with a doubled angle (index 1 mod 3); the
    // b-family off every cycle vertex except the two flanking the
    // axis-crossing edge
    std::vector<std::size_t> attachments{0};
    for (std::size_t k = 1; k < cycle_len; ++k) {
        const bool attach = av.family == AngleFamily::D ? (k % 3 == 1)
                                                        : (k != half - 1 && k != half);
        if (attach) attachments.push_back(k);
    }

    std::vector<Point2> verts(cycle.begin(), cycle.end());
    for (std::size_t a : attachments) {
        const Point2 v = cycle[a];
        Point2 u = cycle[(a + 1) % cycle_len] - v;
        Point2 w = cycle[(a + cycle_len - 1) % cycle_len] - v;
        u = (1.0 / norm(u)) * u;
        w = (1.0 / norm(w)) * w;
        Point2 bisector = u + w;
        bisector = (1.0 / norm(bisector)) * bisector;
        verts.push_back(v + bisector);
    }

    const Family fam = label.value_or(av.family == AngleFamily::D ? Family::Dn
                                                                  : Family::BnStar);
    return detail::finish_report(std::move(verts), fam, std::nullopt, "build_from_angles");
}

/// The closed-form alternating-angle n-gon: alpha_k = pi/n + (-1)^k delta0(n).
inline ConstructionReport build_dn(int n) {
    const double d0 = delta0(n).delta0;
    ConstructionReport r = build_from_angles(dn_angle_vector(n), Family::Dn);
    r.delta = d0;
    return r;
}

}  // namespace smallpoly
