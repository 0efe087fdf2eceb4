#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smallpoly {

enum class RootMethod { ClosedForm, Bisection };

/// Root delta0 of the coordinate-closure equation for the alternating-angle
/// family: the amplitude of the alternation alpha_k = pi/n + (-1)^k * delta
/// that makes the half-polygon cycle close at abscissa 1/2.
struct RootResult {
    int n = 0;
    double delta0 = 0.0;
    double residual = 0.0;
    RootMethod method = RootMethod::ClosedForm;
};

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void require_power_of_two(int n, int min, const char* what) {
    if (!is_power_of_two(n) || n < min) {
        throw std::domain_error(std::string(what) + " requires n = 2^s with n >= " +
                                std::to_string(min) + ", got n = " + std::to_string(n));
    }
}

// Valid for n >= 8; the public delta0() restricts to n >= 16.
inline double alternation_closed_form(int n) {
    const double pi = std::numbers::pi;
    const double s1 = std::sin(pi / n);
    const double s2 = std::sin(2.0 * pi / n);
    return std::atan(std::tan(2.0 * pi / n) * std::tan(pi / n)) -
           std::asin(s2 * s1 / std::sqrt(4.0 * s1 * s1 + std::cos(4.0 * pi / n)));
}

}  // namespace detail

/// Residual of the closure equation
///   sin(pi/n) cos d / cos(2pi/n) - cos(pi/n) sin d / sin(2pi/n)
///     = sin(2pi/n) / (2 cos(2pi/n))
/// evaluated in a half-angle form that avoids the cancellation between the
/// constant terms, so |residual| stays meaningful down to ~1e-17.
inline double closure_equation_residual(int n, double delta) {
    const double pi = std::numbers::pi;
    const double s1 = std::sin(pi / n);
    const double sh = std::sin(pi / (2.0 * n));
    const double sd = std::sin(delta / 2.0);
    return 2.0 * s1 * (sh * sh - sd * sd) / std::cos(2.0 * pi / n) -
           std::sin(delta) * std::cos(pi / n) / std::sin(2.0 * pi / n);
}

inline double closure_equation_derivative(int n, double delta) {
    const double pi = std::numbers::pi;
    return -std::sin(pi / n) * std::sin(delta) / std::cos(2.0 * pi / n) -
           std::cos(pi / n) * std::cos(delta) / std::sin(2.0 * pi / n);
}

inline RootResult delta0(int n, RootMethod method = RootMethod::ClosedForm) {
    detail::require_power_of_two(n, 16, "delta0");
    const double pi = std::numbers::pi;
    RootResult r;
    r.n = n;
    r.method = method;
    if (method == RootMethod::ClosedForm) {
        r.delta0 = detail::alternation_closed_form(n);
    } else {
        double lo = 1e-18;
        double hi = pi / n - 1e-18;
        if (!(closure_equation_residual(n, lo) > 0.0) ||
            !(closure_equation_residual(n, hi) < 0.0)) {
            throw std::runtime_error("delta0 bisection bracket failed for n = " +
                                     std::to_string(n));
        }
        // The residual is strictly decreasing on (0, pi/n).
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (closure_equation_residual(n, mid) > 0.0 ? lo : hi) = mid;
        }
        double d = 0.5 * (lo + hi);
        d -= closure_equation_residual(n, d) / closure_equation_derivative(n, d);
        r.delta0 = d;
    }
    r.residual = closure_equation_residual(n, r.delta0);
    return r;
}

}  // namespace smallpoly
