#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "smallpoly/constructions.hpp"
#include "smallpoly/roots.hpp"

namespace smallpoly {

enum class ProblemKind { DnStar, BnStar };

inline const char* to_string(ProblemKind k) {
    return k == ProblemKind::DnStar ? "dn-star" : "bn-star";
}

/// Perimeter maximization over the turning angles of a symmetric half
/// polygon: maximize sum 4 c_k sin(alpha_k / 2) subject to the cycle-closure
/// equality, the angle-sum equality (= pi/2), and per-angle bounds.
struct HalfPolygonProblem {
    ProblemKind kind = ProblemKind::DnStar;
    int n = 0;
    AngleFamily family = AngleFamily::D;
    std::vector<double> coeff;
    std::vector<double> upper;
    double closure_target = 0.5;

    std::size_t size() const { return coeff.size(); }

    static HalfPolygonProblem dn_star(int n) {
        detail::require_power_of_two(n, 16, "solve_dn_star");
        HalfPolygonProblem p;
        p.kind = ProblemKind::DnStar;
        p.family = AngleFamily::D;
        p.n = n;
        p.coeff = AngleVector::coefficients(AngleFamily::D, n);
        p.upper = AngleVector::upper_bounds(AngleFamily::D, n);
        p.closure_target = 0.5;
        return p;
    }

    static HalfPolygonProblem bn_star(int n) {
        detail::require_power_of_two(n, 8, "solve_bn_star");
        HalfPolygonProblem p;
        p.kind = ProblemKind::BnStar;
        p.family = AngleFamily::B;
        p.n = n;
        p.coeff = AngleVector::coefficients(AngleFamily::B, n);
        p.upper = AngleVector::upper_bounds(AngleFamily::B, n);
        p.closure_target = -0.5;
        return p;
    }

    std::vector<double> warm_start() const {
        if (kind == ProblemKind::DnStar) return dn_angle_vector(n).alphas;
        return std::vector<double>(size(), std::numbers::pi / n);
    }

    double objective(std::span<const double> a) const {
        double s = 0.0;
        for (std::size_t k = 0; k < size(); ++k) s += 4.0 * coeff[k] * std::sin(a[k] / 2.0);
        return s;
    }

    std::vector<double> objective_gradient(std::span<const double> a) const {
        std::vector<double> g(size());
        for (std::size_t k = 0; k < size(); ++k) g[k] = 2.0 * coeff[k] * std::cos(a[k] / 2.0);
        return g;
    }

    // cumulative turning angles theta[j] = sum_{i<=j} c_i a_i
    std::vector<double> turning(std::span<const double> a) const {
        std::vector<double> th(size());
        double acc = 0.0;
        for (std::size_t k = 0; k < size(); ++k) {
            acc += coeff[k] * a[k];
            th[k] = acc;
        }
        return th;
    }

    /// Signed closure residual: horizontal coordinate reached by the half
    /// cycle minus its target (+1/2 for the d-family, -1/2 for the b-family).
    double closure(std::span<const double> a) const {
        const auto th = turning(a);
        double x = 0.0;
        for (std::size_t j = 0; j + 1 < size(); ++j) {
            x += (j % 2 == 0 ? 1.0 : -1.0) * std::sin(th[j]);
        }
        return x - closure_target;
    }

    std::vector<double> closure_gradient(std::span<const double> a) const {
        const auto th = turning(a);
        const std::size_t m = size();
        // suffix sums of signed cos(theta): csuf[i] = sum_{j>=i, j<=m-2}
        std::vector<double> csuf(m + 1, 0.0);
        for (std::size_t j = m - 1; j-- > 0;) {
            csuf[j] = csuf[j + 1] + (j % 2 == 0 ? 1.0 : -1.0) * std::cos(th[j]);
        }
        std::vector<double> g(m);
        for (std::size_t i = 0; i < m; ++i) g[i] = coeff[i] * csuf[i];
        return g;
    }

    double angle_sum_residual(std::span<const double> a) const {
        double s = 0.0;
        for (std::size_t k = 0; k < size(); ++k) s += coeff[k] * a[k];
        return s - std::numbers::pi / 2.0;
    }
};

struct SolverOptions {
    std::uint64_t seed = 0;
    int multistarts = 5;
    int iteration_cap = 10000;
    double gradient_tol = 1e-12;
    double closure_tol = 1e-10;
};

struct OptimizationResult {
    int n = 0;
    ProblemKind problem = ProblemKind::DnStar;
    AngleVector alphas;
    double objective = 0.0;
    double residual_closure = 0.0;
    double residual_anglesum = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace detail {

struct SplitMix64 {
    std::uint64_t state;
    double uniform() {  // in [0, 1)
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double symmetric() { return 2.0 * uniform() - 1.0; }
};

// Solves A x = b for small dense symmetric A (row-major), adding a ridge
// until the Cholesky factorization succeeds. Returns false if hopeless.
inline bool solve_spd_with_ridge(std::vector<double> A, std::vector<double> b,
                                 std::size_t m, std::vector<double>& x) {
    double ridge = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(A[i * m + i]));
    if (scale == 0.0) scale = 1.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<double> L = A;
        if (ridge > 0.0) {
            for (std::size_t i = 0; i < m; ++i) L[i * m + i] += ridge;
        }
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = L[i * m + j];
                for (std::size_t k = 0; k < j; ++k) s -= L[i * m + k] * L[j * m + k];
                if (i == j) {
                    if (s <= 0.0) {
                        ok = false;
                        break;
                    }
                    L[i * m + i] = std::sqrt(s);
                } else {
                    L[i * m + j] = s / L[j * m + j];
                }
            }
        }
        if (ok) {
            x = std::move(b);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < i; ++k) x[i] -= L[i * m + k] * x[k];
                x[i] /= L[i * m + i];
            }
            for (std::size_t i = m; i-- > 0;) {
                for (std::size_t k = i + 1; k < m; ++k) x[i] -= L[k * m + i] * x[k];
                x[i] /= L[i * m + i];
            }
            return true;
        }
        ridge = ridge == 0.0 ? 1e-12 * scale : ridge * 10.0;
    }
    return false;
}

// Gaussian elimination with partial pivoting for the (indefinite) KKT system.
inline bool solve_lu(std::vector<double> A, std::vector<double> b, std::size_t m,
                     std::vector<double>& x) {
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
        }
        if (A[piv * m + col] == 0.0) return false;
        if (piv != col) {
            for (std::size_t k = 0; k < m; ++k) std::swap(A[piv * m + k], A[col * m + k]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < m; ++r) {
            const double f = A[r * m + col] / A[col * m + col];
            if (f == 0.0) continue;
            A[r * m + col] = 0.0;
            for (std::size_t k = col + 1; k < m; ++k) A[r * m + k] -= f * A[col * m + k];
            b[r] -= f * b[col];
        }
    }
    x.assign(m, 0.0);
    for (std::size_t i = m; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < m; ++k) s -= A[i * m + k] * x[k];
        x[i] = s / A[i * m + i];
    }
    return true;
}

/// Augmented-Lagrangian machinery on the reduced problem where the linear
/// angle-sum equality is eliminated by substituting the last angle (whose
/// coefficient is 1 in both families).
class ReducedProblem {
  public:
    explicit ReducedProblem(const HalfPolygonProblem& p) : p_(p), m_(p.size() - 1) {}

    std::size_t dim() const { return m_; }

    std::vector<double> to_full(std::span<const double> x) const {
        std::vector<double> a(m_ + 1);
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            a[i] = x[i];
            s += p_.coeff[i] * x[i];
        }
        a[m_] = std::numbers::pi / 2.0 - s;
        return a;
    }

    bool last_within_bounds(std::span<const double> x, double slack) const {
        const auto a = to_full(x);
        return a[m_] >= -slack && a[m_] <= p_.upper[m_] + slack;
    }

    double closure_of(std::span<const double> x) const { return p_.closure(to_full(x)); }

    double phi(std::span<const double> x, double lam, double mu) const {
        const auto a = to_full(x);
        const double g = p_.closure(a);
        return -p_.objective(a) + lam * g + 0.5 * mu * g * g;
    }

    // reduced gradient of phi; also reports the closure value
    void gradient(std::span<const double> x, double lam, double mu,
                  std::vector<double>& grad, double& g_out) const {
        const auto a = to_full(x);
        const double g = p_.closure(a);
        const auto dg = p_.closure_gradient(a);
        const double w = lam + mu * g;
        const double last = 2.0 * std::cos(a[m_] / 2.0);  // d(objective)/d(alpha_last)
        grad.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            grad[i] = -2.0 * p_.coeff[i] * std::cos(a[i] / 2.0) + w * dg[i] +
                      p_.coeff[i] * last;
        }
        g_out = g;
    }

    // reduced Hessian of phi (row-major m x m)
    void hessian(std::span<const double> x, double lam, double mu,
                 std::vector<double>& H) const {
        const auto a = to_full(x);
        const double g = p_.closure(a);
        const auto th = p_.turning(a);
        const std::size_t M = p_.size();
        std::vector<double> ssuf(M + 1, 0.0);
        std::vector<double> csuf(M + 1, 0.0);
        for (std::size_t j = M - 1; j-- > 0;) {
            const double sgn = j % 2 == 0 ? 1.0 : -1.0;
            ssuf[j] = ssuf[j + 1] + sgn * std::sin(th[j]);
            csuf[j] = csuf[j + 1] + sgn * std::cos(th[j]);
        }
        const double w = lam + mu * g;
        const double hy_last = std::sin(a[m_] / 2.0);  // -d2(objective)/d(alpha_last)^2
        H.assign(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const double dgi = p_.coeff[i] * csuf[i];
            for (std::size_t l = 0; l <= i; ++l) {
                const double dgl = p_.coeff[l] * csuf[l];
                double v = w * (-p_.coeff[i] * p_.coeff[l] * ssuf[std::max(i, l)]) +
                           mu * dgi * dgl + p_.coeff[i] * p_.coeff[l] * hy_last;
                if (i == l) v += p_.coeff[i] * std::sin(a[i] / 2.0);
                H[i * m_ + l] = v;
                H[l * m_ + i] = v;
            }
        }
    }

    double projected_gradient_norm(std::span<const double> x,
                                   std::span<const double> grad) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            double gi = grad[i];
            if (x[i] <= 1e-14 && gi > 0.0) gi = 0.0;
            if (x[i] >= p_.upper[i] - 1e-14 && gi < 0.0) gi = 0.0;
            worst = std::max(worst, std::abs(gi));
        }
        return worst;
    }

    void clip(std::vector<double>& x) const {
        for (std::size_t i = 0; i < m_; ++i) x[i] = std::clamp(x[i], 0.0, p_.upper[i]);
    }

    const HalfPolygonProblem& problem() const { return p_; }

  private:
    const HalfPolygonProblem& p_;
    std::size_t m_;
};

// Minimizes phi(., lam, mu) over the box with a projected Newton iteration.
// Returns the number of iterations consumed.
inline int projected_newton(const ReducedProblem& rp, std::vector<double>& x, double lam,
                            double mu, double tol, int max_iter) {
    const std::size_t m = rp.dim();
    std::vector<double> grad, H, d, rhs;
    double g = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        rp.gradient(x, lam, mu, grad, g);
        if (rp.projected_gradient_norm(x, grad) <= tol) break;

        std::vector<bool> active(m, false);
        for (std::size_t i = 0; i < m; ++i) {
            active[i] = (x[i] <= 1e-14 && grad[i] > 0.0) ||
                        (x[i] >= rp.problem().upper[i] - 1e-14 && grad[i] < 0.0);
        }
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < m; ++i) {
            if (!active[i]) free.push_back(i);
        }
        if (free.empty()) break;

        rp.hessian(x, lam, mu, H);
        const std::size_t f = free.size();
        std::vector<double> Hf(f * f);
        rhs.assign(f, 0.0);
        for (std::size_t a = 0; a < f; ++a) {
            rhs[a] = -grad[free[a]];
            for (std::size_t b = 0; b < f; ++b) Hf[a * f + b] = H[free[a] * m + free[b]];
        }
        if (!solve_spd_with_ridge(Hf, rhs, f, d)) break;

        const double phi0 = rp.phi(x, lam, mu);
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            std::vector<double> cand = x;
            for (std::size_t a = 0; a < f; ++a) cand[free[a]] += t * d[a];
            rp.clip(cand);
            if (!rp.last_within_bounds(cand, 1e-12)) {
                t *= 0.5;
                continue;
            }
            double pred = 0.0;  // directional derivative along the realized move
            for (std::size_t i = 0; i < m; ++i) pred += grad[i] * (cand[i] - x[i]);
            if (rp.phi(cand, lam, mu) <= phi0 + 1e-4 * pred && pred < 0.0) {
                x = std::move(cand);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;  // step underflow near machine precision
    }
    return it;
}

struct SingleRun {
    std::vector<double> full;
    double objective = 0.0;
    double closure = 0.0;
    double anglesum = 0.0;
    double stationarity = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Newton iteration on the stationarity + feasibility system in the reduced
// free variables and the closure multiplier. Quadratic near the solution;
// the augmented-Lagrangian phase supplies the starting basin.
inline void kkt_polish(const ReducedProblem& rp, std::vector<double>& x, double& lam,
                       int& iterations) {
    const std::size_t m = rp.dim();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] > 1e-11 && x[i] < rp.problem().upper[i] - 1e-11) free.push_back(i);
    }
    const std::size_t f = free.size();
    if (f == 0) return;

    auto residual = [&](const std::vector<double>& xv, double lv,
                        std::vector<double>& R) {
        std::vector<double> grad;
        double g = 0.0;
        rp.gradient(xv, lv, 0.0, grad, g);
        R.assign(f + 1, 0.0);
        for (std::size_t a = 0; a < f; ++a) R[a] = grad[free[a]];
        R[f] = g;
    };
    auto norm_inf = [](const std::vector<double>& v) {
        double w = 0.0;
        for (double e : v) w = std::max(w, std::abs(e));
        return w;
    };

    std::vector<double> R, Rtrial, H, J, dz, xtrial;
    residual(x, lam, R);
    for (int it = 0; it < 30; ++it) {
        const double r0 = norm_inf(R);
        if (r0 <= 1e-15) break;
        rp.hessian(x, lam, 0.0, H);
        const auto a = rp.to_full(x);
        const auto dg_full = rp.problem().closure_gradient(a);
        // reduced closure gradient (last component of dg is zero)
        J.assign((f + 1) * (f + 1), 0.0);
        for (std::size_t r = 0; r < f; ++r) {
            for (std::size_t c = 0; c < f; ++c) J[r * (f + 1) + c] = H[free[r] * m + free[c]];
            J[r * (f + 1) + f] = dg_full[free[r]];
            J[f * (f + 1) + r] = dg_full[free[r]];
        }
        std::vector<double> rhs(f + 1);
        for (std::size_t i = 0; i <= f; ++i) rhs[i] = -R[i];
        if (!solve_lu(J, rhs, f + 1, dz)) break;
        ++iterations;

        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            xtrial = x;
            for (std::size_t i = 0; i < f; ++i) xtrial[free[i]] += t * dz[i];
            const double ltrial = lam + t * dz[f];
            bool in_box = rp.last_within_bounds(xtrial, 1e-12);
            for (std::size_t i = 0; i < f && in_box; ++i) {
                in_box = xtrial[free[i]] >= 0.0 &&
                         xtrial[free[i]] <= rp.problem().upper[free[i]];
            }
            if (in_box) {
                residual(xtrial, ltrial, Rtrial);
                if (norm_inf(Rtrial) < r0) {
                    x = xtrial;
                    lam = ltrial;
                    R = Rtrial;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
}

inline SingleRun run_single(const ReducedProblem& rp, std::vector<double> x,
                            const SolverOptions& opt) {
    rp.clip(x);
    SingleRun out;
    double lam = 0.0;
    double mu = 100.0;
    double inner_tol = 1e-8;
    double g_prev = std::numeric_limits<double>::infinity();
    std::vector<double> grad;
    double g = 0.0;

    for (int outer = 0; outer < 40 && out.iterations < opt.iteration_cap; ++outer) {
        out.iterations += projected_newton(rp, x, lam, mu, inner_tol,
                                           opt.iteration_cap - out.iterations);
        g = rp.closure_of(x);
        lam += mu * g;
        rp.gradient(x, lam, 0.0, grad, g);
        if (std::abs(g) <= 0.1 * opt.closure_tol &&
            rp.projected_gradient_norm(x, grad) <= 10.0 * opt.gradient_tol) {
            break;
        }
        if (std::abs(g) > 0.25 * g_prev) mu = std::min(mu * 10.0, 1e8);
        g_prev = std::abs(g);
        inner_tol = std::max(inner_tol * 0.1, 1e-13);
    }

    kkt_polish(rp, x, lam, out.iterations);
    rp.clip(x);

    out.full = rp.to_full(x);
    const auto& p = rp.problem();
    out.objective = p.objective(out.full);
    out.closure = p.closure(out.full);
    out.anglesum = p.angle_sum_residual(out.full);
    rp.gradient(x, lam, 0.0, grad, g);
    out.stationarity = rp.projected_gradient_norm(x, grad);
    out.converged = std::abs(out.closure) <= opt.closure_tol &&
                    std::abs(out.anglesum) <= 1e-12 &&
                    out.stationarity <= opt.gradient_tol &&
                    out.iterations < opt.iteration_cap;
    return out;
}

inline OptimizationResult solve(const HalfPolygonProblem& p, const SolverOptions& opt) {
    const ReducedProblem rp(p);
    const std::vector<double> warm = p.warm_start();
    const std::size_t m = rp.dim();
    const double scale = alternation_closed_form(p.n);

    SplitMix64 rng{opt.seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL};
    SingleRun best;
    bool have_best = false;
    for (int s = 0; s < std::max(1, opt.multistarts); ++s) {
        std::vector<double> x(warm.begin(), warm.begin() + m);
        if (s > 0) {
            std::vector<double> bump(m);
            for (std::size_t i = 0; i < m; ++i) bump[i] = scale * rng.symmetric();
            double shrink = 1.0;
            for (int attempt = 0; attempt < 60; ++attempt) {
                std::vector<double> cand = x;
                for (std::size_t i = 0; i < m; ++i) cand[i] += shrink * bump[i];
                rp.clip(cand);
                if (rp.last_within_bounds(cand, 0.0)) {
                    x = std::move(cand);
                    break;
                }
                shrink *= 0.5;
            }
        }
        SingleRun run = run_single(rp, std::move(x), opt);
        const bool better =
            !have_best || (run.converged && !best.converged) ||
            (run.converged == best.converged && run.objective > best.objective);
        if (better) {
            best = std::move(run);
            have_best = true;
        }
    }

    OptimizationResult res;
    res.n = p.n;
    res.problem = p.kind;
    res.alphas = AngleVector{p.family, p.n, best.full};
    res.objective = best.objective;
    res.residual_closure = std::abs(best.closure);
    res.residual_anglesum = std::abs(best.anglesum);
    res.iterations = best.iterations;
    res.converged = best.converged;
    return res;
}

}  // namespace detail

/// Maximize the perimeter of the alternating-angle family at fixed n,
/// warm-started at the closed-form d-family angles.
inline OptimizationResult solve_dn_star(int n, const SolverOptions& opt = {}) {
    return detail::solve(HalfPolygonProblem::dn_star(n), opt);
}

/// Maximize the perimeter over the prior family's diameter-graph pattern,
/// warm-started at uniform angles pi/n.
inline OptimizationResult solve_bn_star(int n, const SolverOptions& opt = {}) {
    return detail::solve(HalfPolygonProblem::bn_star(n), opt);
}

}  // namespace smallpoly
