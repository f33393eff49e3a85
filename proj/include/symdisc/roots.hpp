#pragma once

// Simultaneous (Aberth-Ehrlich) polynomial root finder. Degrees here are small
// (at most 8 in practice), so no deflation is used: every root is iterated
// against the full polynomial.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "core.hpp"

namespace symdisc {

struct RootFinderOptions {
    int max_iterations = 500;
    int max_restarts = 6;
    double residual_tol = 1e-10;  // accepted |p(r)| relative to p's Horner scale at r
    std::uint64_t seed = 0x5eed5eedULL;
};

namespace detail {

inline double cauchy_radius(const Polynomial& p) {
    // max_k |a_k/a_0|^{1/k}: within a factor 2 of the largest root modulus.
    const auto n = p.degree();
    double r = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double c = std::abs(p[k] / p.leading());
        if (c > 0.0) r = std::max(r, std::pow(c, 1.0 / static_cast<double>(k)));
    }
    return r;
}

inline bool aberth_sweeps(const Polynomial& p, std::vector<Complex>& z, int max_iterations) {
    const std::size_t n = z.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<char> done(n, 0);
    int extra = 2;  // polishing sweeps after every root has reached rounding level
    for (int it = 0; it < max_iterations; ++it) {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            const auto [pk, dpk] = p.eval_with_derivative(z[k]);
            const double scale = p.scale_at(z[k]);
            if (std::abs(pk) <= 4.0 * eps * scale) {
                done[k] = 1;
                if (extra <= 0) continue;
            } else {
                done[k] = 0;
                all_done = false;
            }
            if (pk == Complex{0.0, 0.0}) continue;
            Complex s{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += Complex{1.0, 0.0} / (z[k] - z[j]);
            const Complex ratio = pk / dpk;
            Complex w = ratio / (Complex{1.0, 0.0} - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[k] -= w;
        }
        if (all_done) {
            if (extra-- <= 0) return true;
        }
    }
    return false;
}

}  // namespace detail

/// All roots of p with multiplicity. Throws ConvergenceFailure when the
/// restart budget is exhausted without meeting the residual bound.
inline std::vector<Complex> roots(const Polynomial& p, const RootFinderOptions& opt = {}) {
    const std::size_t n = p.degree();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "roots: degree must be at least 1");
    if (n == 1) return {-p[1] / p[0]};

    // Trailing zero coefficients are exact roots at the origin.
    std::size_t zeros_at_origin = 0;
    while (zeros_at_origin < n && p[n - zeros_at_origin] == Complex{0.0, 0.0}) ++zeros_at_origin;
    if (zeros_at_origin > 0) {
        std::vector<Complex> out(zeros_at_origin, Complex{0.0, 0.0});
        if (zeros_at_origin < n) {
            std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end() - static_cast<long>(zeros_at_origin));
            auto rest = roots(Polynomial(std::move(c)), opt);
            out.insert(out.end(), rest.begin(), rest.end());
        }
        return out;
    }

    const Complex centroid = -p[1] / (static_cast<double>(n) * p[0]);
    const double radius = std::max(detail::cauchy_radius(p), 1e-300);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);

    auto within_residual = [&](const std::vector<Complex>& z) {
        for (const auto& r : z) {
            if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
            if (std::abs(p(r)) > opt.residual_tol * p.scale_at(r)) return false;
        }
        return true;
    };

    std::vector<Complex> z(n);
    for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
        const double offset = 0.4 + 0.7 * attempt;
        const double r = radius * (attempt == 0 ? 1.0 : 1.0 + 0.25 * jitter(rng));
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n) + offset;
            z[k] = centroid + std::polar(r, angle);
            if (attempt > 0) z[k] += Complex{jitter(rng), jitter(rng)} * (1e-3 * radius);
        }
        // A stalled run on a root cluster is still accepted once the residual is small.
        detail::aberth_sweeps(p, z, opt.max_iterations);
        if (within_residual(z)) return z;
    }
    throw Error(ErrorKind::ConvergenceFailure, "Aberth iteration did not converge");
}

/// Largest root modulus.
inline double max_root_modulus(const Polynomial& p) {
    double m = 0.0;
    for (const auto& r : roots(p)) m = std::max(m, std::abs(r));
    return m;
}

}  // namespace symdisc
