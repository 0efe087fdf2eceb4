#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "smallpoly/constructions.hpp"
#include "smallpoly/optimize.hpp"
#include "smallpoly/roots.hpp"

namespace smallpoly {

inline double upper_bound_perimeter(int n) {
    return 2.0 * n * std::sin(std::numbers::pi / (2.0 * n));
}

inline double upper_bound_width(int n) {
    return std::cos(std::numbers::pi / (2.0 * n));
}

inline double dn_perimeter(int n) {
    return 2.0 * n * std::sin(std::numbers::pi / (2.0 * n)) * std::cos(delta0(n).delta0 / 2.0);
}

inline double dn_width(int n) {
    return std::cos(std::numbers::pi / (2.0 * n) + delta0(n).delta0 / 2.0);
}

inline double regular_perimeter(int n) {  // even n
    return n * std::sin(std::numbers::pi / n);
}

inline double regular_width(int n) {  // even n
    return std::cos(std::numbers::pi / n);
}

/// Perimeter gap to the upper bound, 4n sin(pi/2n) sin^2(delta0/4).
/// Algebraically equal to 2n sin(pi/2n)(1 - cos(delta0/2)) but free of the
/// catastrophic cancellation that direct subtraction hits once the gap drops
/// below the ulp of values near pi (n >= 128).
inline double gap_perimeter_dn(int n) {
    const double d0 = delta0(n).delta0;
    const double s = std::sin(d0 / 4.0);
    return 4.0 * n * std::sin(std::numbers::pi / (2.0 * n)) * s * s;
}

/// Width gap cos(pi/2n) - cos(pi/2n + delta0/2) in product form.
inline double gap_width_dn(int n) {
    const double d0 = delta0(n).delta0;
    return 2.0 * std::sin(d0 / 4.0) * std::sin(std::numbers::pi / (2.0 * n) + d0 / 4.0);
}

/// Ratio of the perimeter gap to its leading term pi^9 / (8 n^8); tends to 1
/// with deviation ~ 25 pi^2 / (8 n^2) from the next series term.
inline double asymptotic_ratio_perimeter(int n) {
    const double pi = std::numbers::pi;
    return gap_perimeter_dn(n) * 8.0 * std::pow(static_cast<double>(n), 8) / std::pow(pi, 9);
}

/// Ratio of the width gap to its leading term pi^5 / (4 n^5); deviation
/// ~ 37 pi^2 / (24 n^2).
inline double asymptotic_ratio_width(int n) {
    const double pi = std::numbers::pi;
    return gap_width_dn(n) * 4.0 * std::pow(static_cast<double>(n), 5) / std::pow(pi, 5);
}

struct GapReport {
    int n = 0;
    double ub_perimeter = 0.0;
    double ub_width = 0.0;
    double gap_perimeter = 0.0;
    double gap_width = 0.0;
    double fraction_perimeter = 0.0;  // (L(Dn) - L(Bn)) / (ubL - L(Bn))
    double lambda_star = 0.0;         // (L(Dn*) - L(Dn)) / (ubL - L(Dn))
};

namespace detail {

// Objective difference evaluated pairwise per angle so that tiny optimality
// gaps (3e-12 at n = 64) survive in full precision:
// 4c (sin(a/2) - sin(b/2)) = 8c cos((a+b)/4) sin((a-b)/4).
inline double objective_difference(const HalfPolygonProblem& p,
                                   std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        s += 8.0 * p.coeff[k] * std::cos((a[k] + b[k]) / 4.0) *
             std::sin((a[k] - b[k]) / 4.0);
    }
    return s;
}

}  // namespace detail

/// Gap fraction lambda* of the optimized perimeter within [L(Dn), ubL].
inline double lambda_star(int n, const SolverOptions& opt = {}) {
    const OptimizationResult r = solve_dn_star(n, opt);
    const HalfPolygonProblem p = HalfPolygonProblem::dn_star(n);
    const auto warm = dn_angle_vector(n).alphas;
    return detail::objective_difference(p, r.alphas.alphas, warm) / gap_perimeter_dn(n);
}

inline GapReport gap_report(int n, const SolverOptions& opt = {}) {
    GapReport g;
    g.n = n;
    g.ub_perimeter = upper_bound_perimeter(n);
    g.ub_width = upper_bound_width(n);
    g.gap_perimeter = gap_perimeter_dn(n);
    g.gap_width = gap_width_dn(n);
    const BnScalars bn = bn_scalar_metrics(n);
    g.fraction_perimeter = (dn_perimeter(n) - bn.perimeter) / (g.ub_perimeter - bn.perimeter);
    g.lambda_star = lambda_star(n, opt);
    return g;
}

enum class ColumnKind { Integer, Value, Ratio };

struct TableColumn {
    std::string header;
    ColumnKind kind = ColumnKind::Value;
};

struct TableData {
    int which = 0;
    std::string title;
    std::vector<TableColumn> columns;
    std::vector<std::vector<double>> rows;
};

/// Regenerates the four reference tables from the library. Tables 3 and 4
/// run the optimizer; rows propagate solver failures as exceptions.
inline TableData make_table(int which, const SolverOptions& opt = {}) {
    TableData t;
    t.which = which;
    switch (which) {
        case 1: {
            t.title = "dn perimeters";
            t.columns = {{"n", ColumnKind::Integer},    {"L_regular", ColumnKind::Value},
                         {"L_bn", ColumnKind::Value},   {"L_dn", ColumnKind::Value},
                         {"L_upper", ColumnKind::Value}, {"fraction", ColumnKind::Ratio}};
            for (int n : {16, 32, 64, 128}) {
                const BnScalars bn = bn_scalar_metrics(n);
                const double ld = dn_perimeter(n);
                const double ub = upper_bound_perimeter(n);
                t.rows.push_back({static_cast<double>(n), regular_perimeter(n),
                                  bn.perimeter, ld, ub,
                                  (ld - bn.perimeter) / (ub - bn.perimeter)});
            }
            break;
        }
        case 2: {
            t.title = "dn widths";
            t.columns = {{"n", ColumnKind::Integer},    {"W_regular", ColumnKind::Value},
                         {"W_bn", ColumnKind::Value},   {"W_dn", ColumnKind::Value},
                         {"W_upper", ColumnKind::Value}, {"fraction", ColumnKind::Ratio}};
            for (int n : {16, 32, 64, 128, 256}) {
                const BnScalars bn = bn_scalar_metrics(n);
                const double wd = dn_width(n);
                const double ub = upper_bound_width(n);
                t.rows.push_back({static_cast<double>(n), regular_width(n), bn.width, wd,
                                  ub, (wd - bn.width) / (ub - bn.width)});
            }
            break;
        }
        case 3: {
            t.title = "optimized perimeters";
            t.columns = {{"n", ColumnKind::Integer},       {"L_bn_star", ColumnKind::Value},
                         {"L_dn", ColumnKind::Value},      {"L_dn_star", ColumnKind::Value},
                         {"L_upper", ColumnKind::Value},   {"lambda", ColumnKind::Ratio}};
            for (int n : {16, 32, 64}) {
                const OptimizationResult bs = solve_bn_star(n, opt);
                const OptimizationResult ds = solve_dn_star(n, opt);
                if (!bs.converged || !ds.converged) {
                    throw std::runtime_error("optimizer failed to converge for n = " +
                                             std::to_string(n));
                }
                const HalfPolygonProblem p = HalfPolygonProblem::dn_star(n);
                const auto warm = dn_angle_vector(n).alphas;
                const double lam =
                    detail::objective_difference(p, ds.alphas.alphas, warm) /
                    gap_perimeter_dn(n);
                t.rows.push_back({static_cast<double>(n), bs.objective, dn_perimeter(n),
                                  ds.objective, upper_bound_perimeter(n), lam});
            }
            break;
        }
        case 4: {
            t.title = "optimized angles (dn-star)";
            t.columns = {{"n", ColumnKind::Integer}, {"i", ColumnKind::Integer}};
            for (int j = 0; j < 6; ++j) {
                t.columns.push_back({"alpha_6i+" + std::to_string(j), ColumnKind::Value});
            }
            for (int n : {16, 32, 64}) {
                const OptimizationResult ds = solve_dn_star(n, opt);
                if (!ds.converged) {
                    throw std::runtime_error("optimizer failed to converge for n = " +
                                             std::to_string(n));
                }
                const auto& a = ds.alphas.alphas;
                for (std::size_t i = 0; 6 * i < a.size(); ++i) {
                    std::vector<double> row{static_cast<double>(n), static_cast<double>(i)};
                    for (std::size_t j = 0; j < 6; ++j) row.push_back(a[6 * i + j]);
                    t.rows.push_back(std::move(row));
                }
            }
            break;
        }
        default:
            throw std::domain_error("make_table expects 1, 2, 3, or 4; got " +
                                    std::to_string(which));
    }
    return t;
}

}  // namespace smallpoly
