#pragma once

// Text forms of complex numbers: "a+bi" with optional sign and no spaces,
// e.g. "0.5", "-2i", "1e-3-0.25i", "i". Lists are comma-separated.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace symdisc {

namespace detail {
inline bool parse_real(std::string_view s, double& out) {
    if (s.empty()) return false;
    const std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
}
}  // namespace detail

inline Complex parse_complex(std::string_view s) {
    const auto fail = [&]() -> Complex { throw Error(ErrorKind::InvalidArgument, "cannot parse complex number '" + std::string(s) + "'"); };
    if (s.empty()) return fail();
    if (s.back() != 'i') {
        double re = 0.0;
        if (!detail::parse_real(s, re)) return fail();
        return {re, 0.0};
    }
    const std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not a leading sign or part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    double re = 0.0, im = 0.0;
    if (!re_part.empty() && !detail::parse_real(re_part, re)) return fail();
    if (im_part.empty() || im_part == "+") {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else if (!detail::parse_real(im_part, im)) {
        return fail();
    }
    return {re, im};
}

inline std::vector<Complex> parse_complex_list(std::string_view s) {
    std::vector<Complex> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        out.push_back(parse_complex(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Fixed 15-significant-digit form used in every report.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline std::string format_complex(Complex z) {
    std::string s = format_real(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) s += '+';
    return s + format_real(z.imag()) + 'i';
}

}  // namespace symdisc
