#pragma once

// Bergman kernel of G_n through the preimage determinant formula, the closed
// G_2 form, the mu_3 = 0 reduction for G_3, and an explicit zero of K_{G_3}.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"
#include "sympoly.hpp"

namespace symdisc {

namespace detail {

inline void require_in_disc(const ComplexPoint& p, const char* who) {
    for (const auto& c : p)
        if (!(std::abs(c) < 1.0)) throw Error(ErrorKind::DomainError, std::string(who) + ": coordinate outside the unit disc");
}

inline double min_separation(const ComplexPoint& p) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t k = j + 1; k < p.size(); ++k) m = std::min(m, std::abs(p[j] - p[k]));
    return m;
}

inline Complex inv_sq(Complex w) { return Complex{1.0, 0.0} / (w * w); }

}  // namespace detail

/// det[(1 - lam_j conj(mu_k))^{-2}].
inline Complex delta_n(const ComplexPoint& lam, const ComplexPoint& mu) {
    if (lam.size() != mu.size() || lam.empty()) throw Error(ErrorKind::InvalidArgument, "delta_n: dimension mismatch");
    const auto n = static_cast<Eigen::Index>(lam.size());
    Matrix M(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            M(j, k) = detail::inv_sq(Complex{1.0, 0.0} - lam[j] * std::conj(mu[k]));
    return determinant(M);
}

/// K_{G_n}(sigma(lam), sigma(mu)) from the preimage determinant formula.
/// Refuses (SeparationTooSmall) where the formula is only removably defined.
inline Complex kernel_Gn(const ComplexPoint& lam, const ComplexPoint& mu, double separation = tol::separation) {
    if (lam.size() != mu.size() || lam.empty()) throw Error(ErrorKind::InvalidArgument, "kernel_Gn: dimension mismatch");
    detail::require_in_disc(lam, "kernel_Gn");
    detail::require_in_disc(mu, "kernel_Gn");
    if (detail::min_separation(lam) < separation || detail::min_separation(mu) < separation)
        throw Error(ErrorKind::SeparationTooSmall, "kernel_Gn: preimage coordinates nearly coincide");
    const std::size_t n = lam.size();
    Complex den = std::pow(kPi, static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) den *= (lam[j] - lam[k]) * std::conj(mu[j] - mu[k]);
    return delta_n(lam, mu) / den;
}

/// Closed form of K_{G_2}; regular at coincident coordinates.
inline Complex kernel_G2_closed(Complex l1, Complex l2, Complex m1, Complex m2) {
    for (Complex c : {l1, l2, m1, m2})
        if (!(std::abs(c) < 1.0)) throw Error(ErrorKind::DomainError, "kernel_G2_closed: coordinate outside the unit disc");
    const Complex c1 = std::conj(m1), c2 = std::conj(m2);
    const Complex num = 2.0 - (l1 + l2) * (c1 + c2) + 2.0 * l1 * l2 * c1 * c2;
    Complex den = kPi * kPi;
    for (Complex l : {l1, l2})
        for (Complex c : {c1, c2}) {
            const Complex w = 1.0 - l * c;
            den *= w * w;
        }
    return num / den;
}

struct ABC {
    Complex a, b, c;
};

/// Coefficients of the quadratic a z^2 - b z + 2c governing the zeros of K_{G_3}
/// on the slice mu_3 = 0.
inline ABC abc(const ComplexPoint& nu) {
    if (nu.size() != 3) throw Error(ErrorKind::InvalidArgument, "abc: expected three coordinates");
    const ComplexPoint s = elem_sym(nu);
    const Complex s1 = s[0], s2 = s[1], s3 = s[2];
    return {s2 * (2.0 - s1) + s3 * (2.0 * s1 - 3.0),
            (s1 - 2.0) * (s2 - 2.0 * s1 + 3.0) + 3.0 * (s3 - s1 + 2.0),
            s2 - 2.0 * s1 + 3.0};
}

/// |a z^2 - b z + 2c| / max(|a|, |b|, |c|).
inline double quad_residual(const ABC& q, Complex z) {
    const double scale = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    return std::abs(q.a * z * z - q.b * z + 2.0 * q.c) / scale;
}

/// Roots of a z^2 - b z + 2c = 0 (a single root when a is negligible).
inline std::vector<Complex> quad_zero_z(const ABC& q) {
    const double scale = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    if (scale == 0.0) throw Error(ErrorKind::AllCoefficientsZero, "quad_zero_z: a = b = c = 0");
    constexpr double tiny = 1e-14;
    std::vector<Complex> out;
    if (std::abs(q.a) <= tiny * scale) {
        if (std::abs(q.b) <= tiny * scale) return out;
        out.push_back(2.0 * q.c / q.b);
    } else {
        // Cancellation-free form: t = (b +- sqrt(b^2 - 8ac)) / 2 with the larger modulus.
        const Complex d = std::sqrt(q.b * q.b - 8.0 * q.a * q.c);
        const Complex t = 0.5 * (std::abs(q.b + d) >= std::abs(q.b - d) ? q.b + d : q.b - d);
        out.push_back(t / q.a);
        if (t != Complex{0.0, 0.0}) out.push_back(2.0 * q.c / t);
        else out.push_back(t / q.a);
    }
    for (auto& z : out) {
        const Complex f = q.a * z * z - q.b * z + 2.0 * q.c;
        const Complex df = 2.0 * q.a * z - q.b;
        if (df != Complex{0.0, 0.0}) z -= f / df;
    }
    return out;
}

inline std::vector<Complex> quad_zero_z(const ComplexPoint& nu) { return quad_zero_z(abc(nu)); }

/// K_{G_3}(sigma(lam), sigma(mu1, mu2, 0)) via z = conj(mu2)/conj(mu1), nu_j = lam_j conj(mu1).
inline Complex kernel_G3_mu3zero(const ComplexPoint& lam, Complex mu1, Complex mu2) {
    if (lam.size() != 3) throw Error(ErrorKind::InvalidArgument, "kernel_G3_mu3zero: expected three lambda coordinates");
    detail::require_in_disc(lam, "kernel_G3_mu3zero");
    detail::require_in_disc(ComplexPoint{mu1, mu2}, "kernel_G3_mu3zero");
    if (mu1 == Complex{0.0, 0.0}) throw Error(ErrorKind::Mu1Zero, "kernel_G3_mu3zero: mu_1 = 0");
    const Complex c1 = std::conj(mu1), c2 = std::conj(mu2);
    const Complex z = c2 / c1;
    const ComplexPoint nu{lam[0] * c1, lam[1] * c1, lam[2] * c1};
    const ABC q = abc(nu);
    Complex den = kPi * kPi * kPi;
    for (std::size_t j = 0; j < 3; ++j)
        for (Complex c : {c1, c2}) {
            const Complex w = 1.0 - lam[j] * c;
            den *= w * w;
        }
    return (q.a * z * z - q.b * z + 2.0 * q.c) / den;
}

/// Left side of the reduction identity: the 3x3 determinant with columns
/// (1 - nu_j)^{-2}, (1 - z nu_j)^{-2}, 1.
inline Complex reduction_det(const ComplexPoint& nu, Complex z) {
    if (nu.size() != 3) throw Error(ErrorKind::InvalidArgument, "reduction_det: expected three coordinates");
    Matrix M(3, 3);
    for (Eigen::Index j = 0; j < 3; ++j) {
        M(j, 0) = detail::inv_sq(1.0 - nu[j]);
        M(j, 1) = detail::inv_sq(1.0 - z * nu[j]);
        M(j, 2) = 1.0;
    }
    return determinant(M);
}

/// Coefficients A, B, C of the factored reduction, read off the expanded
/// cubic bracket (coefficients of z^3, z^0 and z^1).
inline ABC reduction_coefficients(const ComplexPoint& nu) {
    const Complex n1 = nu[0], n2 = nu[1], n3 = nu[2];
    const Complex u1 = (1.0 - n1) * (1.0 - n1), u2 = (1.0 - n2) * (1.0 - n2);
    const Complex A = (n1 + n3 - 2.0) * (n2 + n3) * n1 * n1 * u2 - (n2 + n3 - 2.0) * (n1 + n3) * n2 * n2 * u1;
    const Complex minus2C = 2.0 * (n2 + n3 - 2.0) * u1 - 2.0 * (n1 + n3 - 2.0) * u2;
    const Complex BplusC2 = (n1 + n3 - 2.0) * (n2 + n3 + 4.0 * n1) * u2 - (n2 + n3 - 2.0) * (n1 + n3 + 4.0 * n2) * u1;
    const Complex C = -0.5 * minus2C;
    return {A, BplusC2 - 2.0 * C, C};
}

/// Right side of the reduction identity in factored form.
inline Complex reduction_factored(const ComplexPoint& nu, Complex z) {
    const ABC q = reduction_coefficients(nu);
    Complex den = 1.0;
    for (std::size_t j = 0; j < 3; ++j) den *= (1.0 - nu[j]) * (1.0 - nu[j]) * (1.0 - z * nu[j]) * (1.0 - z * nu[j]);
    return (nu[0] - nu[2]) * (nu[1] - nu[2]) * z * (z - 1.0) * (q.a * z * z - q.b * z + 2.0 * q.c) / den;
}

/// The base point nu_0 = (e^{i pi/6}, e^{i pi/3}, e^{-i pi/6}).
inline ComplexPoint nu0() { return ComplexPoint{unit(kPi / 6.0), unit(kPi / 3.0), unit(-kPi / 6.0)}; }

/// z_0 = e^{-i pi/4} (6 - 3 sqrt3 - sqrt(40 sqrt3 - 69)) / (sqrt2 (3 sqrt3 - 5)).
inline Complex z0_closed() {
    const double s3 = std::sqrt(3.0);
    const double x = (6.0 - 3.0 * s3 - std::sqrt(40.0 * s3 - 69.0)) / (std::sqrt(2.0) * (3.0 * s3 - 5.0));
    return unit(-kPi / 4.0) * x;
}

struct KernelZeroOptions {
    std::vector<double> eps_schedule{1e-2, 2e-2, 5e-3, 5e-2, 1e-1};
    int ball_samples = 64;
    double ball_radius = 1e-2;
    double min_separation = 1e-3;
    double circle_radius = 1e-3;  // for the f_3 non-degeneracy check
    std::uint64_t seed = 20240611;
};

struct KernelZeroWitness {
    ComplexPoint lam;
    ComplexPoint mu;
    Complex kernel_value;
    double quad_residual = 0.0;
    double local_scale = 0.0;        // median |K| over the sampling ball
    double normalized_abs = 0.0;     // |kernel_value| / local_scale
    double min_separation = 0.0;
    double f3_circle_max = 0.0;      // max |Delta_3(., lam_2, lam_3, mu)| on a small circle around lam_1
    double eps = 0.0;
};

/// Explicit zero of K_{G_3}: shrink nu_0 into D^3, solve for z in D, and
/// lift through mu_1 real with |mu_1| > max |nu_j|.
inline KernelZeroWitness construct_kernel_zero_G3(const KernelZeroOptions& opt = {}) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ComplexPoint base = nu0();
    for (const double eps : opt.eps_schedule) {
        ComplexPoint nu(3);
        for (std::size_t j = 0; j < 3; ++j) nu[j] = (1.0 - eps) * base[j];
        std::vector<Complex> zs;
        try {
            zs = quad_zero_z(nu);
        } catch (const Error&) {
            continue;
        }
        std::optional<Complex> z;
        for (const auto& r : zs)
            if (std::abs(r) < 1.0 && (!z || std::abs(r) < std::abs(*z))) z = r;
        if (!z) continue;

        const Complex mu1{1.0 - 0.5 * eps, 0.0};
        ComplexPoint lam(3);
        for (std::size_t j = 0; j < 3; ++j) lam[j] = nu[j] / std::conj(mu1);
        const ComplexPoint mu{mu1, std::conj(*z) * mu1, Complex{0.0, 0.0}};
        const double sep = std::min(detail::min_separation(lam), detail::min_separation(mu));
        if (sep < opt.min_separation) continue;

        KernelZeroWitness w;
        w.lam = lam;
        w.mu = mu;
        w.eps = eps;
        w.min_separation = sep;
        w.kernel_value = kernel_Gn(lam, mu);
        w.quad_residual = quad_residual(abc(nu), *z);

        // Scale-free quality: compare against kernel magnitudes nearby.
        std::vector<double> mags;
        mags.reserve(static_cast<std::size_t>(opt.ball_samples));
        int guard = 0;
        while (static_cast<int>(mags.size()) < opt.ball_samples && guard++ < 100 * opt.ball_samples) {
            ComplexPoint l2 = lam, m2 = mu;
            bool ok = true;
            for (auto* p : {&l2, &m2})
                for (auto& c : *p) {
                    c += opt.ball_radius * Complex{u(rng), u(rng)} / std::sqrt(2.0);
                    ok = ok && std::abs(c) < 1.0;
                }
            if (!ok || detail::min_separation(l2) < opt.min_separation || detail::min_separation(m2) < opt.min_separation)
                continue;
            mags.push_back(std::abs(kernel_Gn(l2, m2)));
        }
        if (mags.empty()) continue;
        std::nth_element(mags.begin(), mags.begin() + static_cast<long>(mags.size() / 2), mags.end());
        w.local_scale = mags[mags.size() / 2];
        w.normalized_abs = std::abs(w.kernel_value) / w.local_scale;

        for (int k = 0; k < 64; ++k) {
            ComplexPoint l2 = lam;
            l2[0] += std::polar(opt.circle_radius, 2.0 * kPi * k / 64.0);
            w.f3_circle_max = std::max(w.f3_circle_max, std::abs(delta_n(l2, mu)));
        }
        return w;
    }
    throw Error(ErrorKind::ConstructionFailed, "no admissible kernel zero found on the eps schedule");
}

}  // namespace symdisc
