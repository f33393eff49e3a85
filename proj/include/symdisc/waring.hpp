#pragma once

// Power sums t_1^m + ... + t_n^m written as exact polynomials in the
// elementary symmetric functions sigma_1, ..., sigma_n (Newton's identities).

#include <complex>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core.hpp"

namespace symdisc {

using Rational = boost::multiprecision::cpp_rational;

/// Exponent vector (k_1, ..., k_n) of sigma_1^{k_1} ... sigma_n^{k_n}.
using Monomial = std::vector<int>;

/// Polynomial with rational coefficients in sigma_1, ..., sigma_n.
class SymPoly {
public:
    explicit SymPoly(std::size_t n) : n_(n) {}

    static SymPoly constant(std::size_t n, const Rational& c) {
        SymPoly p(n);
        p.add_term(Monomial(n, 0), c);
        return p;
    }

    /// The single variable sigma_k (1-based).
    static SymPoly sigma(std::size_t n, std::size_t k) {
        SymPoly p(n);
        Monomial m(n, 0);
        m[k - 1] = 1;
        p.add_term(m, Rational(1));
        return p;
    }

    std::size_t nvars() const noexcept { return n_; }
    const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.size() != n_) throw Error(ErrorKind::InvalidArgument, "monomial arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SymPoly& operator+=(const SymPoly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    SymPoly operator*(const SymPoly& o) const {
        check_arity(o);
        SymPoly out(n_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                Monomial m(n_);
                for (std::size_t i = 0; i < n_; ++i) m[i] = m1[i] + m2[i];
                out.add_term(m, c1 * c2);
            }
        return out;
    }

    SymPoly operator*(const Rational& s) const {
        SymPoly out(n_);
        for (const auto& [m, c] : terms_) out.add_term(m, c * s);
        return out;
    }

    friend bool operator==(const SymPoly&, const SymPoly&) = default;

    /// Floating-point evaluation at sigma = (s_1, ..., s_n).
    Complex evaluate(const ComplexPoint& s) const {
        if (s.size() != n_) throw Error(ErrorKind::InvalidArgument, "evaluate: arity mismatch");
        Complex acc{0.0, 0.0};
        for (const auto& [m, c] : terms_) {
            Complex t{static_cast<double>(c), 0.0};
            for (std::size_t i = 0; i < n_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= s[i];
            acc += t;
        }
        return acc;
    }

    /// Exact evaluation at rational sigma values.
    Rational evaluate_exact(const std::vector<Rational>& s) const {
        if (s.size() != n_) throw Error(ErrorKind::InvalidArgument, "evaluate_exact: arity mismatch");
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < n_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= s[i];
            acc += t;
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // Highest total degree first reads closer to the usual way of writing these.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = c;
            if (a < 0) {
                os << (first ? "-" : " - ");
                a = -a;
            } else if (!first) {
                os << " + ";
            }
            first = false;
            bool has_var = false;
            for (std::size_t i = 0; i < n_; ++i) has_var = has_var || m[i] > 0;
            if (a != 1 || !has_var) os << a << (has_var ? "*" : "");
            bool first_var = true;
            for (std::size_t i = 0; i < n_; ++i) {
                if (m[i] == 0) continue;
                if (!first_var) os << "*";
                first_var = false;
                os << "s" << (i + 1);
                if (m[i] > 1) os << "^" << m[i];
            }
        }
        return os.str();
    }

private:
    void check_arity(const SymPoly& o) const {
        if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "SymPoly arity mismatch");
    }

    std::size_t n_;
    std::map<Monomial, Rational> terms_;
};

/// p_0, ..., p_m for n variables, with p_0 = n.
/// p_k = sum_{i=1}^{k-1} (-1)^{i-1} sigma_i p_{k-i} + (-1)^{k-1} k sigma_k,
/// where sigma_i = 0 for i > n.
inline std::vector<SymPoly> power_sums_upto(std::size_t n, std::size_t m) {
    if (n < 1 || n > 8) throw Error(ErrorKind::InvalidArgument, "power sums: need 1 <= n <= 8");
    if (m < 1 || m > 2 * n + 2) throw Error(ErrorKind::InvalidArgument, "power sums: need 1 <= m <= 2n+2");
    std::vector<SymPoly> p;
    p.reserve(m + 1);
    p.push_back(SymPoly::constant(n, Rational(static_cast<long>(n))));
    for (std::size_t k = 1; k <= m; ++k) {
        SymPoly pk(n);
        for (std::size_t i = 1; i < k && i <= n; ++i) {
            const Rational sign = (i % 2 == 1) ? 1 : -1;
            pk += SymPoly::sigma(n, i) * p[k - i] * sign;
        }
        if (k <= n) {
            const Rational sign = (k % 2 == 1) ? 1 : -1;
            pk += SymPoly::sigma(n, k) * (sign * static_cast<long>(k));
        }
        p.push_back(std::move(pk));
    }
    return p;
}

inline SymPoly power_sums_in_elem(std::size_t n, std::size_t m) { return power_sums_upto(n, m).back(); }

/// Coefficient of sigma_1 sigma_n in (t_1^{n+1} + ... + t_n^{n+1}) / n.
inline Rational waring_z1zn_coefficient(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "waring_z1zn_coefficient: need n >= 2");
    Monomial m(n, 0);
    m[0] += 1;
    m[n - 1] += 1;
    return power_sums_in_elem(n, n + 1).coefficient(m) / static_cast<long>(n);
}

}  // namespace symdisc
