#pragma once

// Invariant-metric computations on G_n: the functions f_lambda and m_{G_n},
// rho_n, extremal discs, non-convexity witnesses, torus maxima and the
// gamma_{G_n}(0; e_2) estimates, Pick matrices, Blaschke discs, and the
// product property of the disc Lempert function.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "circle.hpp"
#include "core.hpp"
#include "linalg.hpp"
#include "sympoly.hpp"

namespace symdisc {

// ---------------------------------------------------------------------------
// f_lambda, m_{G_n}, rho_n

/// f_lambda(z) = sum_j j z_j lambda^{j-1} / (n + sum_{j<n} (n-j) z_j lambda^j).
inline Complex f_lambda(const ComplexPoint& z, Complex lambda) {
    const std::size_t n = z.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "f_lambda: empty point");
    Complex num{0.0, 0.0}, den{static_cast<double>(n), 0.0};
    Complex pw{1.0, 0.0};  // lambda^{j-1}
    for (std::size_t j = 1; j <= n; ++j) {
        num += static_cast<double>(j) * z[j - 1] * pw;
        pw *= lambda;
        if (j < n) den += static_cast<double>(n - j) * z[j - 1] * pw;
    }
    if (std::abs(den) <= 1e-12) throw Error(ErrorKind::DenominatorVanishes, "f_lambda: denominator vanishes");
    return num / den;
}

/// sup over the unit circle of |f_lambda(z)|.
inline CircleMaximum f_lambda_circle_sup(const ComplexPoint& z, const CircleScanOptions& opt = {}) {
    return circle_max([&](double t) { return std::abs(f_lambda(z, unit(t))); }, opt);
}

/// m_{G_n}(z, w) = max over the circle of m_D(f_lambda(z), f_lambda(w)).
inline CircleMaximum m_Gn(const ComplexPoint& z, const ComplexPoint& w, const CircleScanOptions& opt = {}) {
    if (z.size() != w.size()) throw Error(ErrorKind::InvalidArgument, "m_Gn: dimension mismatch");
    if (!in_Gn(z) || !in_Gn(w)) throw Error(ErrorKind::DomainError, "m_Gn: points must lie in G_n");
    return circle_max([&](double t) {
        const Complex l = unit(t);
        return mobius_distance(f_lambda(z, l), f_lambda(w, l));
    }, opt);
}

/// rho_n(X) = max over the circle of |sum_j j X_j lambda^{j-1}| / n.
inline CircleMaximum rho_n(const ComplexPoint& X, const CircleScanOptions& opt = {}) {
    const std::size_t n = X.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "rho_n: empty vector");
    return circle_max([&](double t) {
        const Complex l = unit(t);
        Complex acc{0.0, 0.0}, pw{1.0, 0.0};
        for (std::size_t j = 1; j <= n; ++j) {
            acc += static_cast<double>(j) * X[j - 1] * pw;
            pw *= l;
        }
        return std::abs(acc) / static_cast<double>(n);
    }, opt);
}

// ---------------------------------------------------------------------------
// Extremal discs through 0 in the direction e_k

inline double binomial(double a, int b) {
    double r = 1.0;
    for (int i = 0; i < b; ++i) r *= (a - i) / (i + 1);
    return r;
}

/// phi_j(zeta) = binom(n/k, j/k) zeta^{j/k} when k | j, else 0. Then
/// phi(0) = 0, phi'(0) = (n/k) e_k, and sigma^{-1}(phi(zeta)) are the roots
/// of (t^k + zeta)^{n/k}.
inline std::vector<PowerPoly> extremal_disc_ek(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "extremal_disc_ek: need 1 <= k <= n");
    if (n % k != 0) throw Error(ErrorKind::DivisibilityViolation, "extremal_disc_ek: k must divide n");
    std::vector<PowerPoly> phi(static_cast<std::size_t>(n));
    for (int j = k; j <= n; j += k) {
        auto& c = phi[static_cast<std::size_t>(j - 1)].c;
        c.assign(static_cast<std::size_t>(j / k + 1), Complex{0.0, 0.0});
        c.back() = binomial(static_cast<double>(n / k), j / k);
    }
    return phi;
}

inline ComplexPoint eval_disc(const std::vector<PowerPoly>& phi, Complex z) {
    ComplexPoint p(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) p[j] = phi[j](z);
    return p;
}

/// Upper bound k/n for kappa_{G_n}(0; e_k), read off the extremal disc.
inline double kobayashi_ek_upper(int n, int k) {
    const auto phi = extremal_disc_ek(n, k);
    const double speed = std::abs(phi[static_cast<std::size_t>(k - 1)].coeff(1));
    return 1.0 / speed;
}

// ---------------------------------------------------------------------------
// Non-convexity of the slices of G_3 and G_4

/// Boundary function of {(p, q) : zeta^3 + p zeta + q has its roots in D}.
inline double r3(Complex p, Complex q) {
    const double w = 1.0 - std::norm(q);
    return std::abs(std::conj(p) * q * w - p * p * std::conj(q)) + std::norm(p) - w * w;
}

/// Boundary function of {(p, q) : zeta^4 + p zeta + q has its roots in D}.
inline double s4(Complex p, Complex q) {
    const double w = 1.0 - std::norm(q);
    const double v = w * w - std::norm(p);
    return w * std::abs(std::conj(p) * q * v - p * p * p * std::conj(q) * std::conj(q)) +
           std::norm(p) * std::norm(p) * std::norm(q) - v * v;
}

struct NonconvexWitness {
    int n = 0;
    Complex p1, q1, p2, q2;  // boundary points
    Complex p0, q0;          // their midpoint
    double value1 = 0.0, value2 = 0.0, value0 = 0.0;  // boundary function at the three points
    double abs_sum = 0.0;                             // |p0| + |q0|
    double abs_sum_closed = 0.0;                      // closed-form value of |p0| + |q0|
};

/// Two boundary points of the slice whose midpoint lies outside its closure.
inline NonconvexWitness nonconvex_witness(int n) {
    NonconvexWitness w;
    w.n = n;
    if (n == 3) {
        const double qp = 0.5, pp = 1.0 - qp * qp;
        w.p1 = pp * unit(2.0 * kPi / 3.0);
        w.q1 = qp;
        w.p2 = pp * unit(kPi / 3.0);
        w.q2 = qp * unit(kPi / 2.0);
        w.abs_sum_closed = (3.0 * std::sqrt(3.0) + 2.0 * std::sqrt(2.0)) / 8.0;
    } else if (n == 4) {
        const double qp = 0.4, pp = (1.0 - qp) * std::sqrt(1.0 + qp);
        w.p1 = pp * unit(kPi / 2.0);
        w.q1 = qp;
        w.p2 = pp * unit(kPi / 4.0);
        w.q2 = qp * unit(kPi / 3.0);
        w.abs_sum_closed = (3.0 * std::sqrt(7.0 * (2.0 + std::sqrt(2.0)) / 5.0) + 2.0 * std::sqrt(3.0)) / 10.0;
    } else {
        throw Error(ErrorKind::InvalidArgument, "nonconvex_witness: n must be 3 or 4");
    }
    w.p0 = 0.5 * (w.p1 + w.p2);
    w.q0 = 0.5 * (w.q1 + w.q2);
    auto F = [n](Complex p, Complex q) { return n == 3 ? r3(p, q) : s4(p, q); };
    w.value1 = F(w.p1, w.q1);
    w.value2 = F(w.p2, w.q2);
    w.value0 = F(w.p0, w.q0);
    w.abs_sum = std::abs(w.p0) + std::abs(w.q0);
    return w;
}

/// The point of C^n whose polynomial is zeta^n + p zeta + q.
inline ComplexPoint slice_point(int n, Complex p, Complex q) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "slice_point: n >= 3");
    ComplexPoint z(static_cast<std::size_t>(n));
    // Coefficient of zeta^{n-j} is (-1)^j z_j.
    z[static_cast<std::size_t>(n - 2)] = (n % 2 == 1 ? 1.0 : -1.0) * p;
    z[static_cast<std::size_t>(n - 1)] = (n % 2 == 0 ? 1.0 : -1.0) * q;
    return z;
}

// ---------------------------------------------------------------------------
// Quadratic forms on the torus and gamma_{G_n}(0; e_2) for odd n

/// alpha sum t_j^2 + beta (sum t_j)^2.
inline Complex torus_quadratic(const std::vector<Complex>& t, double alpha, double beta) {
    Complex Q{0.0, 0.0}, S{0.0, 0.0};
    for (const auto& x : t) {
        Q += x * x;
        S += x;
    }
    return alpha * Q + beta * S * S;
}

/// g_n(t) = sum t_j^2 / 2 - (sum t_j)^2 / (n+1).
inline Complex gn_torus(const std::vector<Complex>& t) {
    const double n = static_cast<double>(t.size());
    return torus_quadratic(t, 0.5, -1.0 / (n + 1.0));
}

struct TorusMaximum {
    double value = 0.0;
    std::vector<double> angles;
};

struct TorusSearchOptions {
    int restarts = 200;
    std::uint64_t seed = 0x746f7275ULL;
    int max_iterations = 5000;
    double grad_tol = 1e-12;
};

namespace detail {

/// Re(alpha Q + beta S^2) and its gradient in the angles.
inline double torus_re(const std::vector<double>& th, double alpha, double beta, std::vector<double>* grad) {
    const std::size_t n = th.size();
    Complex S{0.0, 0.0}, Q{0.0, 0.0};
    std::vector<Complex> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = unit(th[j]);
        S += e[j];
        Q += e[j] * e[j];
    }
    if (grad) {
        grad->resize(n);
        const Complex I{0.0, 1.0};
        for (std::size_t j = 0; j < n; ++j)
            (*grad)[j] = std::real(alpha * 2.0 * I * e[j] * e[j] + beta * 2.0 * S * I * e[j]);
    }
    return std::real(alpha * Q + beta * S * S);
}

inline double torus_ascent(std::vector<double>& th, double alpha, double beta, const TorusSearchOptions& opt) {
    std::vector<double> g, trial(th.size());
    double f = torus_re(th, alpha, beta, &g);
    double step = 0.5;
    for (int it = 0; it < opt.max_iterations; ++it) {
        double gn = 0.0;
        for (double x : g) gn = std::max(gn, std::abs(x));
        if (gn < opt.grad_tol) break;
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t j = 0; j < th.size(); ++j) trial[j] = th[j] + step * g[j];
            const double ft = torus_re(trial, alpha, beta, nullptr);
            if (ft > f) {
                th = trial;
                f = torus_re(th, alpha, beta, &g);
                step = std::min(step * 2.0, 4.0);
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return f;
}

}  // namespace detail

/// max over T^n of |alpha Q + beta S^2|. By the rotation t -> e^{i theta} t this
/// equals the max of the real part; multi-start gradient ascent with the
/// split configuration (floor(n/2) or floor(n/2)+1 coordinates at 1, the rest
/// at -1) always included as a start.
inline TorusMaximum max_torus_quadratic(int n, double alpha, double beta, const TorusSearchOptions& opt = {}) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "max_torus_quadratic: n >= 1");
    const auto N = static_cast<std::size_t>(n);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    TorusMaximum best;
    best.value = -std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<double> th) {
        const double f = detail::torus_ascent(th, alpha, beta, opt);
        if (f > best.value) {
            best.value = f;
            best.angles = th;
        }
    };
    for (int m : {n / 2, n / 2 + 1}) {
        std::vector<double> th(N, 0.0);
        for (int j = m; j < n; ++j) th[static_cast<std::size_t>(j)] = kPi;
        consider(th);
        // Slightly off the split point, so that a saddle is left if it is one.
        for (auto& x : th) x += 1e-3 * (u(rng) / kPi - 1.0);
        consider(th);
    }
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<double> th(N);
        for (auto& x : th) x = u(rng);
        consider(th);
    }
    // Report the true modulus at the maximizer.
    std::vector<Complex> t(N);
    for (std::size_t j = 0; j < N; ++j) t[j] = unit(best.angles[j]);
    best.value = std::abs(torus_quadratic(t, alpha, beta));
    return best;
}

inline TorusMaximum max_gn_torus(int n, const TorusSearchOptions& opt = {}) {
    return max_torus_quadratic(n, 0.5, -1.0 / (n + 1.0), opt);
}

/// M_n = (n-1)(n+2) / (2(n+1)).
inline double M_n(int n) { return (n - 1.0) * (n + 2.0) / (2.0 * (n + 1.0)); }

/// Closed-form bounds (2/n)(1 + 2/((n-1)(n+2))) and (2/n)(1 + 2/((n-1)(n+1))) for gamma_{G_n}(0; e_2).
inline double gamma_e2_lower_closed(int n) { return 2.0 / n * (1.0 + 2.0 / ((n - 1.0) * (n + 2.0))); }
inline double gamma_e2_upper_closed(int n) { return 2.0 / n * (1.0 + 2.0 / ((n - 1.0) * (n + 1.0))); }

struct GammaLowerWitness {
    double eps = 0.0;
    double torus_max = 0.0;  // max over T^n of |g_{n,eps}|
    double value = 0.0;      // (1 + 2 eps) / torus_max
};

/// Lower bound for gamma_{G_n}(0; e_2) from the perturbed polynomial
/// P_{n,eps} = (n-1-2n(n+1)eps)/(2(n+1)) z_1^2 - (1+2 eps) z_2, whose sup over
/// G_n is the torus max of g_n + eps Q - eps (n+1) S^2. Best over the eps list.
inline GammaLowerWitness gamma_e2_lower_witness(int n, const std::vector<double>& eps_list = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2},
                                                const TorusSearchOptions& opt = {}) {
    GammaLowerWitness best;
    for (double eps : eps_list) {
        const auto m = max_torus_quadratic(n, 0.5 + eps, -1.0 / (n + 1.0) - eps * (n + 1.0), opt);
        const double v = (1.0 + 2.0 * eps) / m.value;
        if (v > best.value) best = {eps, m.value, v};
    }
    return best;
}

/// The three boundary points of G_n (n odd) coming from (t-1)^n,
/// (t-1)(t^2-1)^{(n-1)/2} and (t-i)(t-1)^{n-1}: (z_1, z_2) pairs.
inline std::array<std::array<Complex, 2>, 3> m_nc_points(int n) {
    const double N = n;
    return {{{Complex{N, 0.0}, Complex{N * (N - 1.0) / 2.0, 0.0}},
             {Complex{1.0, 0.0}, Complex{(1.0 - N) / 2.0, 0.0}},
             {Complex{N - 1.0, 1.0}, Complex{(N - 1.0) * (N - 2.0) / 2.0, N - 1.0}}}};
}

/// Lower bound for max over the boundary of G_n of |z_2 + c z_1^2|: the max over the three points.
inline double m_nc_lower(int n, Complex c) {
    if (n < 3 || n % 2 == 0) throw Error(ErrorKind::InvalidArgument, "m_nc_lower: n must be odd and >= 3");
    double m = 0.0;
    for (const auto& p : m_nc_points(n)) m = std::max(m, std::abs(p[1] + c * p[0] * p[0]));
    return m;
}

/// max over the boundary of G_n of |z_2 + c z_1^2|. The function is a
/// polynomial in the roots, so the max sits on the torus, where
/// z_2 + c z_1^2 = -Q/2 + (1/2 + c) S^2.
/// Only real c, where the rotation argument of max_torus_quadratic applies.
inline double m_nc_torus(int n, double c, const TorusSearchOptions& opt = {}) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "m_nc_torus: n >= 2");
    return max_torus_quadratic(n, -0.5, 0.5 + c, opt).value;
}

struct GammaUpperWitness {
    Complex c_opt;
    double min_max = 0.0;  // min over c of the boundary maximum used
    double value = 0.0;    // 1 / min_max, an upper bound for gamma_{G_n}(0; e_2)
};

/// Minimizes the convex function c -> m_nc_lower(n, c) over complex c by nested golden sections.
inline GammaUpperWitness gamma_e2_upper_witness(int n) {
    auto inner = [&](double x, double& ybest) {
        double y = 0.0;
        const double v = -golden_max([&](double yy) { return -m_nc_lower(n, Complex{x, yy}); }, -2.0, 2.0, 1e-12, y);
        ybest = y;
        return v;
    };
    double x = 0.0, ydummy = 0.0;
    golden_max([&](double xx) { return -inner(xx, ydummy); }, -2.0, 2.0, 1e-12, x);
    double y = 0.0;
    const double v = inner(x, y);
    return {Complex{x, y}, v, 1.0 / v};
}

/// Same with the torus maximum in place of the three boundary points, over real c.
inline GammaUpperWitness gamma_e2_upper_witness_torus(int n, const TorusSearchOptions& opt = {40}) {
    double x = 0.0;
    const double c_star = -(n - 1.0) * (n - 1.0) / (2.0 * (n * n + 1.0));
    const double v = -golden_max([&](double cc) { return -m_nc_torus(n, cc, opt); }, c_star - 0.1, c_star + 0.1, 1e-9, x);
    return {Complex{x, 0.0}, v, 1.0 / v};
}

// ---------------------------------------------------------------------------
// gamma_{G_3}(0; e_2) upper constant C_0 and the lower constant C_1

/// g(c) = (3c-1)^3 / (c(4c-1)) on Delta = (1/6, (5 - sqrt 17)/4).
inline double g_of_c(double c) { return std::pow(3.0 * c - 1.0, 3) / (c * (4.0 * c - 1.0)); }

/// f_c(x) = 4c(4c-1) x^2 + 4(2c-1)(5c-1) x + 25c^2 - 22c + 5.
inline double f_c(double c, double x) {
    return 4.0 * c * (4.0 * c - 1.0) * x * x + 4.0 * (2.0 * c - 1.0) * (5.0 * c - 1.0) * x + 25.0 * c * c - 22.0 * c + 5.0;
}

inline double delta_lo() { return 1.0 / 6.0; }
inline double delta_hi() { return (5.0 - std::sqrt(17.0)) / 4.0; }
inline double c0_closed() { return (std::sqrt(13.0) - 1.0) / 12.0; }
inline double C0_closed() { return std::sqrt(8.0 / (13.0 * std::sqrt(13.0) - 35.0)); }

struct C0Result {
    double C0 = 0.0;
    double argmin = 0.0;
    double min_g = 0.0;
};

/// C_0 = 1 / sqrt(min over Delta of g).
inline C0Result gamma3_e2_upper() {
    double c = 0.0;
    const double m = -golden_max([](double x) { return -g_of_c(x); }, delta_lo(), delta_hi(), 1e-12, c);
    return {1.0 / std::sqrt(m), c, m};
}

/// 0.675 * 24 + 0.291 * 72 + 0.033 * 216.
inline double appendixC_lipschitz() { return 0.675 * 24.0 + 0.291 * 72.0 + 0.033 * 216.0; }

// ---------------------------------------------------------------------------
// Nevanlinna-Pick solvability

struct PickProblem {
    std::vector<Complex> nodes;
    std::vector<Complex> targets;
};

/// PSD test after Hermitian symmetrization: pivoted LDL^T, with diagonal
/// entries down to -tol * trace accepted as zero.
inline bool is_psd(const Matrix& M, double rel_tol = tol::psd) {
    const Matrix H = 0.5 * (M + M.adjoint());
    const double tr = std::max(H.trace().real(), 0.0);
    Eigen::LDLT<Matrix> ldlt(H);
    const auto d = ldlt.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d(i).real() < -rel_tol * tr) return false;
    // LDL^T may break down on indefinite input; fall back to the spectrum.
    if (ldlt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(H);
        return es.eigenvalues().minCoeff() >= -rel_tol * tr;
    }
    return true;
}

/// Classical Pick matrix [(1 - w_j conj w_k) / (1 - z_j conj z_k)].
inline Matrix pick_matrix(const PickProblem& prob) {
    const auto n = static_cast<Eigen::Index>(prob.nodes.size());
    if (prob.targets.size() != prob.nodes.size() || n == 0)
        throw Error(ErrorKind::InvalidArgument, "pick: nodes and targets must have the same nonzero length");
    for (std::size_t j = 0; j < prob.nodes.size(); ++j) {
        if (!(std::abs(prob.nodes[j]) < 1.0) || !(std::abs(prob.targets[j]) < 1.0))
            throw Error(ErrorKind::DomainError, "pick: nodes and targets must lie in the unit disc");
        for (std::size_t k = 0; k < j; ++k)
            if (prob.nodes[j] == prob.nodes[k]) throw Error(ErrorKind::InvalidArgument, "pick: nodes must be distinct");
    }
    Matrix P(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(k);
            P(j, k) = (1.0 - prob.targets[J] * std::conj(prob.targets[K])) / (1.0 - prob.nodes[J] * std::conj(prob.nodes[K]));
        }
    return P;
}

inline bool np_solvable(const PickProblem& prob, double rel_tol = tol::psd) { return is_psd(pick_matrix(prob), rel_tol); }

/// Matrix [(1 - nu_j conj nu_k) / (1 - delta_j conj delta_k |beta|^2)] for the
/// nodes delta_j beta and targets nu_j.
inline Matrix pick_matrix_circle(Complex beta, const std::vector<Complex>& deltas, const std::vector<Complex>& nus) {
    if (deltas.size() != nus.size() || deltas.empty())
        throw Error(ErrorKind::InvalidArgument, "pick circle: deltas and nus must have the same nonzero length");
    if (!(std::abs(beta) < 1.0)) throw Error(ErrorKind::DomainError, "pick circle: |beta| must be < 1");
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (std::abs(std::abs(deltas[j]) - 1.0) > 1e-12) throw Error(ErrorKind::DomainError, "pick circle: deltas must lie on the circle");
        if (!(std::abs(nus[j]) < 1.0)) throw Error(ErrorKind::DomainError, "pick circle: targets must lie in the disc");
        for (std::size_t k = 0; k < j; ++k)
            if (std::abs(deltas[j] - deltas[k]) < 1e-12) throw Error(ErrorKind::InvalidArgument, "pick circle: deltas must be distinct");
    }
    const auto n = static_cast<Eigen::Index>(deltas.size());
    const double b2 = std::norm(beta);
    Matrix A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(k);
            A(j, k) = (1.0 - nus[J] * std::conj(nus[K])) / (1.0 - deltas[J] * std::conj(deltas[K]) * b2);
        }
    return A;
}

inline bool np_solvable_circle(Complex beta, const std::vector<Complex>& deltas, const std::vector<Complex>& nus,
                               double rel_tol = tol::psd) {
    return is_psd(pick_matrix_circle(beta, deltas, nus), rel_tol);
}

// ---------------------------------------------------------------------------
// Blaschke products and the discs f_B

/// rotation * prod (z - a) / (1 - conj(a) z).
inline Complex blaschke_eval(const std::vector<Complex>& zeros, Complex rotation, Complex z) {
    Complex v = rotation;
    for (const auto& a : zeros) {
        if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::DomainError, "blaschke_eval: zeros must lie in the unit disc");
        v *= mobius_map(a, z);
    }
    return v;
}

/// f_B(lambda) = sigma(B(r), B(eps r), ..., B(eps^{n-1} r)) with r^n = lambda.
/// Every branch of r is evaluated; they must agree.
inline ComplexPoint f_B_disc(const std::vector<Complex>& zeros, Complex rotation, int n, Complex lambda,
                             double branch_tol = 1e-10) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "f_B_disc: n >= 1");
    if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::DomainError, "f_B_disc: |lambda| must be < 1");
    const Complex r0 = std::pow(lambda, 1.0 / n);
    const Complex eps = unit(2.0 * kPi / n);
    auto eval_branch = [&](Complex r) {
        ComplexPoint v(static_cast<std::size_t>(n));
        Complex w = r;
        for (int j = 0; j < n; ++j) {
            v[static_cast<std::size_t>(j)] = blaschke_eval(zeros, rotation, w);
            w *= eps;
        }
        return elem_sym(v);
    };
    const ComplexPoint ref = eval_branch(r0);
    Complex r = r0;
    for (int k = 1; k < n; ++k) {
        r *= eps;
        if (distance(eval_branch(r), ref) > branch_tol * std::max(1.0, ref.max_abs()))
            throw Error(ErrorKind::BranchInconsistency, "f_B_disc: value depends on the choice of root");
    }
    return ref;
}

// ---------------------------------------------------------------------------
// Lempert function of the disc with several poles, and the product property

/// prod over poles c of m_D(c, z).
inline double l_disc_poles(const std::vector<Complex>& poles, Complex z) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::DomainError, "l_disc_poles: z must lie in the unit disc");
    double v = 1.0;
    for (const auto& c : poles) {
        if (!(std::abs(c) < 1.0)) throw Error(ErrorKind::DomainError, "l_disc_poles: poles must lie in the unit disc");
        v *= mobius_distance(c, z);
    }
    return v;
}

struct ProductPropertyRecord {
    double lhs_upper = 0.0;  // product of |zeta_j| over the interpolation points of the rotated disc
    double rhs = 0.0;        // |a_1 a_2| = l_D(A, 0) = l_D(B, 0)
    double interpolation_error = 0.0;
    bool equal = false;
};

/// For A = {a_1, a_2} and B = e^{i theta} A, the disc zeta -> (e^{i phi} zeta,
/// e^{i(phi+theta)} zeta) hits (a_j, e^{i theta} a_j) at zeta_j = e^{-i phi} a_j.
inline ProductPropertyRecord product_property_check(Complex a1, Complex a2, double theta, double phi = 0.0) {
    for (Complex a : {a1, a2})
        if (!(std::abs(a) < 1.0) || a == Complex{0.0, 0.0})
            throw Error(ErrorKind::DomainError, "product_property_check: poles must lie in the punctured disc");
    if (a1 == a2) throw Error(ErrorKind::InvalidArgument, "product_property_check: poles must be distinct");
    const Complex r1 = unit(phi), r2 = unit(phi + theta);
    ProductPropertyRecord rec;
    rec.lhs_upper = 1.0;
    for (Complex a : {a1, a2}) {
        const Complex zeta = std::conj(r1) * a;
        const Complex hit1 = r1 * zeta, hit2 = r2 * zeta;
        rec.interpolation_error = std::max({rec.interpolation_error, std::abs(hit1 - a), std::abs(hit2 - unit(theta) * a)});
        rec.lhs_upper *= std::abs(zeta);
    }
    rec.rhs = l_disc_poles({a1, a2}, Complex{0.0, 0.0});
    rec.equal = std::abs(rec.lhs_upper - rec.rhs) <= 1e-12 && rec.interpolation_error <= 1e-12;
    return rec;
}

}  // namespace symdisc
