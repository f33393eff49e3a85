#pragma once

// Elementary symmetric maps, the Cohn root-location rule, membership in the
// symmetrized polydisc G_n and its generalized Minkowski function.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core.hpp"
#include "roots.hpp"

namespace symdisc {

/// (sigma_1(xs), ..., sigma_n(xs)), obtained by multiplying out prod_j (t + x_j).
inline ComplexPoint elem_sym(const ComplexPoint& xs) {
    const std::size_t n = xs.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "elem_sym: empty point");
    // e[k] holds sigma_k of the coordinates processed so far.
    std::vector<Complex> e(n + 1, Complex{0.0, 0.0});
    e[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k >= 1; --k) e[k] += xs[j] * e[k - 1];
    return ComplexPoint(std::vector<Complex>(e.begin() + 1, e.end()));
}

/// zeta^n + sum_j (-1)^j z_j zeta^{n-j}; its roots are the sigma-preimage of z.
inline Polynomial poly_from_point(const ComplexPoint& z) {
    std::vector<Complex> c;
    c.reserve(z.size() + 1);
    c.emplace_back(1.0, 0.0);
    for (std::size_t j = 1; j <= z.size(); ++j) c.push_back((j % 2 == 0 ? 1.0 : -1.0) * z[j - 1]);
    return Polynomial(std::move(c));
}

/// Weighted dilation pi_lambda(z) = (lambda z_1, lambda^2 z_2, ..., lambda^n z_n).
inline ComplexPoint pi_lambda(const ComplexPoint& z, Complex lambda) {
    ComplexPoint out(z.size());
    Complex power = lambda;
    for (std::size_t j = 0; j < z.size(); ++j) {
        out[j] = power * z[j];
        power *= lambda;
    }
    return out;
}

/// Relative Cohn margin (|a_0| - |a_n|) / max_j |a_j|.
inline double cohn_margin(const Polynomial& p) {
    return (std::abs(p.leading()) - std::abs(p[p.degree()])) / p.max_coeff_abs();
}

/// One Cohn reduction step f -> f*, of degree exactly one less.
/// Throws DegenerateStep when |a_0| <= |a_n| up to the relative tolerance.
inline Polynomial cohn_reduce(const Polynomial& p, double tolerance = tol::boundary) {
    const std::size_t n = p.degree();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "cohn_reduce: degree must be at least 1");
    if (cohn_margin(p) <= tolerance)
        throw Error(ErrorKind::DegenerateStep, "|a_0| <= |a_n|: roots not strictly inside the disc");
    const Complex a0c = std::conj(p[0]);
    const Complex an = p[n];
    std::vector<Complex> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = a0c * p[j] - an * std::conj(p[n - j]);
    // |a_0|^2 - |a_n|^2 can still round to zero when the margin is tiny.
    if (c[0] == Complex{0.0, 0.0}) throw Error(ErrorKind::DegenerateStep, "cohn_reduce: leading coefficient cancelled");
    return Polynomial(std::move(c));
}

enum class RootLocation { Inside, Boundary, Outside };

struct RootLocationReport {
    bool inside = false;
    RootLocation location = RootLocation::Outside;
    double margin = 0.0;  // min over Cohn steps of the relative margin
    int steps = 0;        // reductions actually performed
};

/// Full Cohn test with diagnostics. Margins within the tolerance band are
/// reported as Boundary and never as inside.
inline RootLocationReport root_location(const Polynomial& p, double tolerance = tol::boundary) {
    if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "root_location: degree must be at least 1");
    RootLocationReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    std::vector<Complex> c = p.coeffs();
    while (c.size() >= 2) {
        // Rescale each step; roots are unchanged and the coefficients stay O(1).
        double s = 0.0;
        for (const auto& x : c) s = std::max(s, std::abs(x));
        for (auto& x : c) x /= s;
        Polynomial f(c);
        const double m = cohn_margin(f);
        rep.margin = std::min(rep.margin, m);
        if (m <= tolerance) {
            rep.location = m < -tolerance ? RootLocation::Outside : RootLocation::Boundary;
            rep.inside = false;
            return rep;
        }
        try {
            c = cohn_reduce(f, tolerance).coeffs();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateStep) throw;
            rep.location = RootLocation::Boundary;
            return rep;
        }
        ++rep.steps;
    }
    rep.inside = true;
    rep.location = RootLocation::Inside;
    return rep;
}

/// True iff every root of p lies in the open unit disc.
inline bool all_roots_in_disc(const Polynomial& p, double tolerance = tol::boundary) {
    return root_location(p, tolerance).inside;
}

inline bool in_Gn(const ComplexPoint& z, double tolerance = tol::boundary) {
    if (z.empty()) throw Error(ErrorKind::InvalidArgument, "in_Gn: empty point");
    return all_roots_in_disc(poly_from_point(z), tolerance);
}

/// Closed-form description of G_2: |s - conj(s) p| + |p|^2 < 1.
inline bool in_G2_closed(Complex s, Complex p, double tolerance = tol::boundary) {
    return std::abs(s - std::conj(s) * p) + std::norm(p) < 1.0 - tolerance;
}

/// Generalized Minkowski function of G_n: the largest root modulus of the
/// polynomial attached to z.
inline double minkowski_h(const ComplexPoint& z) {
    if (z.empty()) throw Error(ErrorKind::InvalidArgument, "minkowski_h: empty point");
    if (z.max_abs() == 0.0) return 0.0;
    return max_root_modulus(poly_from_point(z));
}

/// Same quantity by bisection on t -> [pi_{1/t}(z) in G_n], using only the Cohn test.
inline double minkowski_h_bisect(const ComplexPoint& z, int iterations = 200) {
    if (z.empty()) throw Error(ErrorKind::InvalidArgument, "minkowski_h_bisect: empty point");
    // Fujiwara bound on the root moduli.
    double hi = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        hi = std::max(hi, 2.0 * std::pow(std::abs(z[j]), 1.0 / static_cast<double>(j + 1)));
    if (hi == 0.0) return 0.0;
    hi *= 1.0 + 1e-9;
    double lo = 0.0;
    for (int it = 0; it < iterations && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (in_Gn(pi_lambda(z, Complex{1.0 / mid, 0.0}), 0.0))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace symdisc
