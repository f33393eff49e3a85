#pragma once

// Core value types shared by every module: complex points, polynomials,
// the error type, and the default tolerance policy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symdisc {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorKind {
    InvalidArgument,
    DomainError,
    DegenerateStep,
    ConvergenceFailure,
    SeparationTooSmall,
    Mu1Zero,
    AllCoefficientsZero,
    ConstructionFailed,
    SingularResolvent,
    CriteriaDisagreement,
    Order3Violation,
    OutOfRange,
    DivisibilityViolation,
    DenominatorVanishes,
    BranchInconsistency,
    BudgetExceeded,
    Inconclusive,
    CertificateMissing,
    VerificationFailed,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateStep: return "DegenerateStep";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::SeparationTooSmall: return "SeparationTooSmall";
        case ErrorKind::Mu1Zero: return "Mu1Zero";
        case ErrorKind::AllCoefficientsZero: return "AllCoefficientsZero";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::SingularResolvent: return "SingularResolvent";
        case ErrorKind::CriteriaDisagreement: return "CriteriaDisagreement";
        case ErrorKind::Order3Violation: return "Order3Violation";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::DivisibilityViolation: return "DivisibilityViolation";
        case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
        case ErrorKind::BranchInconsistency: return "BranchInconsistency";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::Inconclusive: return "Inconclusive";
        case ErrorKind::CertificateMissing: return "CertificateMissing";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Default numerical tolerances. Every operation that depends on one takes it
/// as a defaulted argument so callers (the CLI in particular) can override.
namespace tol {
inline constexpr double boundary = 1e-12;   // relative margin for open-domain membership
inline constexpr double separation = 1e-6;  // pairwise preimage separation for the determinant kernel
inline constexpr double rank = 1e-8;        // singular-value threshold, relative to the largest
inline constexpr double psd = 1e-10;        // Pick matrix PSD test, relative to the trace
inline constexpr double refine = 1e-10;     // angular refinement on the circle
}  // namespace tol

/// Ordered tuple of complex coordinates. A point of C^n, of G_n, or a tangent vector.
class ComplexPoint {
public:
    ComplexPoint() = default;
    explicit ComplexPoint(std::size_t n) : coords_(n, Complex{0.0, 0.0}) {}
    explicit ComplexPoint(std::vector<Complex> coords) : coords_(std::move(coords)) { check_finite(); }
    ComplexPoint(std::initializer_list<Complex> coords) : coords_(coords) { check_finite(); }

    std::size_t size() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }

    Complex& operator[](std::size_t i) { return coords_[i]; }
    const Complex& operator[](std::size_t i) const { return coords_[i]; }

    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }
    auto begin() noexcept { return coords_.begin(); }
    auto end() noexcept { return coords_.end(); }

    std::span<const Complex> view() const noexcept { return coords_; }
    const std::vector<Complex>& coords() const noexcept { return coords_; }

    double max_abs() const noexcept {
        double m = 0.0;
        for (const auto& c : coords_) m = std::max(m, std::abs(c));
        return m;
    }

    friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

private:
    void check_finite() const {
        for (const auto& c : coords_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw Error(ErrorKind::InvalidArgument, "ComplexPoint with non-finite coordinate");
    }

    std::vector<Complex> coords_;
};

inline double distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Polynomial a_0 z^n + a_1 z^{n-1} + ... + a_n, stored leading coefficient first.
class Polynomial {
public:
    explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial needs at least one coefficient");
        if (std::abs(coeffs_.front()) == 0.0)
            throw Error(ErrorKind::InvalidArgument, "leading coefficient must be nonzero");
        for (const auto& c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw Error(ErrorKind::InvalidArgument, "non-finite polynomial coefficient");
    }
    Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

    /// Monic polynomial with the given roots.
    static Polynomial from_roots(std::span<const Complex> roots) {
        std::vector<Complex> c{Complex{1.0, 0.0}};
        for (const auto& r : roots) {
            c.push_back(Complex{0.0, 0.0});
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= r * c[k - 1];
        }
        return Polynomial(std::move(c));
    }

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    const Complex& operator[](std::size_t j) const { return coeffs_[j]; }
    const Complex& leading() const noexcept { return coeffs_.front(); }

    Complex operator()(Complex z) const noexcept {
        Complex acc = coeffs_.front();
        for (std::size_t j = 1; j < coeffs_.size(); ++j) acc = acc * z + coeffs_[j];
        return acc;
    }

    /// Value and first derivative by a single Horner sweep.
    std::pair<Complex, Complex> eval_with_derivative(Complex z) const noexcept {
        Complex p = coeffs_.front();
        Complex dp{0.0, 0.0};
        for (std::size_t j = 1; j < coeffs_.size(); ++j) {
            dp = dp * z + p;
            p = p * z + coeffs_[j];
        }
        return {p, dp};
    }

    /// sum_j |a_j| |z|^{n-j}: the rounding-error scale of a Horner evaluation at z.
    double scale_at(Complex z) const noexcept {
        const double r = std::abs(z);
        double acc = std::abs(coeffs_.front());
        for (std::size_t j = 1; j < coeffs_.size(); ++j) acc = acc * r + std::abs(coeffs_[j]);
        return acc;
    }

    double max_coeff_abs() const noexcept {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

private:
    std::vector<Complex> coeffs_;
};

/// Polynomial in zeta stored by ascending powers; the zero polynomial is allowed.
/// Used for holomorphic discs zeta -> (phi_1(zeta), ..., phi_n(zeta)).
struct PowerPoly {
    std::vector<Complex> c;  // c[k] multiplies zeta^k

    Complex operator()(Complex z) const noexcept {
        Complex acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Complex coeff(std::size_t k) const noexcept { return k < c.size() ? c[k] : Complex{0.0, 0.0}; }

    /// Order of vanishing at 0; SIZE_MAX for the zero polynomial.
    std::size_t order() const noexcept {
        std::size_t k = 0;
        while (k < c.size() && c[k] == Complex{0.0, 0.0}) ++k;
        return k == c.size() ? std::numeric_limits<std::size_t>::max() : k;
    }
};

/// Moebius (pseudo-hyperbolic) distance on the unit disc.
inline double mobius_distance(Complex a, Complex b) noexcept {
    return std::abs(a - b) / std::abs(Complex{1.0, 0.0} - std::conj(a) * b);
}

/// z -> (z - a) / (1 - conj(a) z).
inline Complex mobius_map(Complex a, Complex z) noexcept {
    return (z - a) / (Complex{1.0, 0.0} - std::conj(a) * z);
}

inline Complex unit(double theta) noexcept { return std::polar(1.0, theta); }

}  // namespace symdisc
