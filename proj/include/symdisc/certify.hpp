#pragma once

// Certified global maximum of |g| on the torus for the quartic
// g = 0.675 g2^2 - 0.291 g2 g1^2 + 0.033 g1^4, by a flat grid scan and by
// branch-and-bound with a recorded Lipschitz ledger.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "core.hpp"
#include "metrics.hpp"

namespace symdisc {

inline constexpr double kAppendixCCoeffs[3] = {0.675, -0.291, 0.033};
inline constexpr double kAppendixCLipschitz = 44.28;
inline constexpr double kAppendixCPeriod = 6.2832;

/// Throws VerificationFailed unless 0.675*24 + 0.291*72 + 0.033*216 == 44.28.
inline double checked_appendixC_lipschitz() {
    const double L = appendixC_lipschitz();
    if (std::abs(L - kAppendixCLipschitz) > 1e-12)
        throw Error(ErrorKind::VerificationFailed, "Lipschitz constant does not re-derive to 44.28");
    return kAppendixCLipschitz;
}

namespace detail {
inline Complex appendixC_from(Complex e1, Complex e2, Complex e12) {
    const Complex g0 = e1 + e2;
    const Complex g1 = g0 + 1.0;
    const Complex g2 = g0 + e12;
    const Complex g1s = g1 * g1;
    return kAppendixCCoeffs[0] * g2 * g2 + kAppendixCCoeffs[1] * g2 * g1s + kAppendixCCoeffs[2] * g1s * g1s;
}
}  // namespace detail

/// g(theta) with g1 = 1 + e^{i t1} + e^{i t2}, g2 = e^{i(t1+t2)} + e^{i t1} + e^{i t2}.
inline Complex appendixC_g(double theta1, double theta2) {
    return detail::appendixC_from(unit(theta1), unit(theta2), unit(theta1 + theta2));
}

struct CertifiedMaximum {
    double grid_max = 0.0;
    double theta1 = 0.0, theta2 = 0.0;  // argmax
    double lipschitz = kAppendixCLipschitz;
    double step = 0.0;  // grid step, or the smallest box width for branch-and-bound
    double global_upper_bound = 0.0;
    std::optional<double> certified_below;
    std::uint64_t evaluations = 0;
};

struct GridOptions {
    unsigned workers = 0;  // 0: hardware concurrency
    std::uint64_t budget = 30'000'000'000ULL;
    double target = 1.0;
};

inline unsigned resolve_workers(unsigned w) {
    if (w != 0) return w;
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

/// Scan of theta in [0, 6.2832]^2 at t = i * step, first index outermost,
/// strict '>' so the first maximum in scan order wins. Rows are split across
/// workers; the reduction keeps the lexicographically smallest argmax on ties,
/// so the result does not depend on the schedule.
inline CertifiedMaximum grid_search_appendixC(double step, const GridOptions& opt = {}) {
    if (!(step > 0.0) || step > 1e-2) throw Error(ErrorKind::InvalidArgument, "grid_search_appendixC: need 0 < step <= 1e-2");
    const double L = checked_appendixC_lipschitz();
    const auto N = static_cast<std::int64_t>(kAppendixCPeriod / step);
    const auto count = static_cast<std::uint64_t>(N + 1) * static_cast<std::uint64_t>(N + 1);
    if (count > opt.budget) throw Error(ErrorKind::BudgetExceeded, "grid_search_appendixC: grid exceeds the evaluation budget");

    std::vector<Complex> e(static_cast<std::size_t>(N + 1)), e2(static_cast<std::size_t>(2 * N + 1));
    for (std::int64_t i = 0; i <= N; ++i) e[static_cast<std::size_t>(i)] = unit(static_cast<double>(static_cast<float>(i)) * step);
    for (std::int64_t i = 0; i <= 2 * N; ++i) {
        // t1 + t2 as the scan forms it.
        const std::int64_t a = std::min(i, N), b = i - a;
        e2[static_cast<std::size_t>(i)] = unit(static_cast<double>(static_cast<float>(a)) * step + static_cast<double>(static_cast<float>(b)) * step);
    }

    struct Best {
        double norm = -1.0;
        std::int64_t i1 = 0, i2 = 0;
    };
    const unsigned W = std::max(1u, std::min<unsigned>(resolve_workers(opt.workers), static_cast<unsigned>(N + 1)));
    std::vector<Best> best(W);
    std::atomic<std::int64_t> next_row{0};
    auto work = [&](unsigned w) {
        Best b;
        for (;;) {
            const std::int64_t i1 = next_row.fetch_add(1);
            if (i1 > N) break;
            const Complex z1 = e[static_cast<std::size_t>(i1)];
            for (std::int64_t i2 = 0; i2 <= N; ++i2) {
                const double v = std::norm(detail::appendixC_from(z1, e[static_cast<std::size_t>(i2)], e2[static_cast<std::size_t>(i1 + i2)]));
                if (v > b.norm || (v == b.norm && (i1 < b.i1 || (i1 == b.i1 && i2 < b.i2)))) b = {v, i1, i2};
            }
        }
        best[w] = b;
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    Best b = best[0];
    for (unsigned w = 1; w < W; ++w) {
        const Best& c = best[w];
        if (c.norm > b.norm || (c.norm == b.norm && (c.i1 < b.i1 || (c.i1 == b.i1 && c.i2 < b.i2)))) b = c;
    }

    CertifiedMaximum r;
    r.grid_max = std::sqrt(b.norm);
    r.theta1 = static_cast<double>(static_cast<float>(b.i1)) * step;
    r.theta2 = static_cast<double>(static_cast<float>(b.i2)) * step;
    r.lipschitz = L;
    r.step = step;
    // Every point of the torus lies within step/2 (sup-distance, mod 2 pi) of a grid node.
    r.global_upper_bound = r.grid_max + L * step / 2.0;
    if (r.global_upper_bound < opt.target) r.certified_below = opt.target;
    r.evaluations = count;
    return r;
}

// ---------------------------------------------------------------------------
// Branch-and-bound

// |g| is invariant under (t1, t2) -> (t2, t1) and (t1, t2) -> (-t1, -t2), and
// both maps send quadtree cells of [0, 2 pi)^2 to cells of the same level.
// Only the cell that is least in Morton order within its orbit is explored;
// this set is closed under taking parents, and its orbit covers the torus.

namespace detail {
inline bool less_msb(std::uint32_t a, std::uint32_t b) { return a < b && a < (a ^ b); }

/// Morton order with the first coordinate as the more significant bit.
inline bool morton_less(std::uint32_t x1, std::uint32_t y1, std::uint32_t x2, std::uint32_t y2) {
    const std::uint32_t dx = x1 ^ x2, dy = y1 ^ y2;
    if (less_msb(dx, dy)) return y1 < y2;
    return x1 < x2;
}

inline bool canonical_cell(int level, std::uint32_t x, std::uint32_t y) {
    const std::uint32_t m = (level == 32) ? ~0u : ((std::uint32_t{1} << level) - 1u);
    return !morton_less(y, x, x, y) && !morton_less(m - x, m - y, x, y) && !morton_less(m - y, m - x, x, y);
}

inline double appendixC_abs_fast(double t1, double t2) {
    const Complex e1 = unit(t1), e2 = unit(t2);
    return std::abs(appendixC_from(e1, e2, e1 * e2));
}
}  // namespace detail

/// Preorder shape of the explored quadtree: one bit per explored cell, set
/// when the cell was split, clear when it was pruned. Cells skipped by
/// symmetry carry no bit.
struct BoxLedger {
    std::vector<std::uint8_t> bits;
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    double max_bound = 0.0;  // largest leaf bound
    int max_level = 0;

    void push(bool split) {
        if (nodes % 8 == 0) bits.push_back(0);
        if (split) bits.back() |= static_cast<std::uint8_t>(1u << (nodes % 8));
        ++nodes;
    }
    bool at(std::uint64_t i) const { return (bits[i / 8] >> (i % 8)) & 1u; }
};

enum class BBOutcome { Certified, Disproved };

struct BBResult {
    BBOutcome outcome = BBOutcome::Certified;
    CertifiedMaximum max;  // best value seen, argmax, and the certificate if any
    BoxLedger ledger;
    double witness_value = 0.0;  // Disproved: refined value at the witness
    double witness1 = 0.0, witness2 = 0.0;
};

struct BBOptions {
    std::uint64_t budget = 200'000'000;  // box evaluations
    int max_level = 30;
};

namespace detail {
/// Local coordinate ascent by golden sections, for reporting a witness.
inline double refine_appendixC(double& t1, double& t2, double radius) {
    double v = std::abs(appendixC_g(t1, t2));
    for (int it = 0; it < 40 && radius > 1e-13; ++it) {
        double x = t1;
        golden_max([&](double s) { return std::abs(appendixC_g(s, t2)); }, t1 - radius, t1 + radius, 1e-13, x);
        double y = t2;
        golden_max([&](double s) { return std::abs(appendixC_g(x, s)); }, t2 - radius, t2 + radius, 1e-13, y);
        const double nv = std::abs(appendixC_g(x, y));
        if (nv > v) {
            t1 = x;
            t2 = y;
            v = nv;
        }
        radius *= 0.5;
    }
    return v;
}

struct Cell {
    int level;
    std::uint32_t ix, iy;
};

/// Children of a cell in Morton order, without those skipped by symmetry.
template <class F>
void for_each_child(const Cell& c, F&& f) {
    for (std::uint32_t k = 0; k < 4; ++k) {
        const Cell ch{c.level + 1, 2 * c.ix + (k >> 1), 2 * c.iy + (k & 1u)};
        if (canonical_cell(ch.level, ch.ix, ch.iy)) f(ch);
    }
}
}  // namespace detail

/// Depth-first branch-and-bound for max |g| over [0, 2 pi)^2 with the
/// sup-distance Lipschitz bound |g(c)| + L * halfwidth. A cell is pruned when
/// its bound is below the target. A center with |g| >= target disproves it.
inline BBResult certified_max_bb(double L, double target, const BBOptions& opt = {}) {
    if (!(L > 0.0) || !std::isfinite(target)) throw Error(ErrorKind::InvalidArgument, "certified_max_bb: need L > 0 and a finite target");
    using detail::Cell;
    const double P = 2.0 * kPi;
    BBResult res;
    res.max.lipschitz = L;
    res.max.grid_max = -1.0;
    double min_width = P;
    std::vector<Cell> stack{{0, 0, 0}};
    std::uint64_t evals = 0;
    while (!stack.empty()) {
        const Cell b = stack.back();
        stack.pop_back();
        if (++evals > opt.budget) throw Error(ErrorKind::Inconclusive, "certified_max_bb: evaluation budget exhausted");
        const double w = std::ldexp(P, -b.level);
        const double c1 = (b.ix + 0.5) * w, c2 = (b.iy + 0.5) * w;
        const double v = detail::appendixC_abs_fast(c1, c2);
        if (v > res.max.grid_max) {
            res.max.grid_max = v;
            res.max.theta1 = c1;
            res.max.theta2 = c2;
        }
        if (v >= target) {
            res.outcome = BBOutcome::Disproved;
            res.witness1 = c1;
            res.witness2 = c2;
            res.witness_value = detail::refine_appendixC(res.witness1, res.witness2, w);
            res.max.step = w;
            res.max.evaluations = evals;
            res.max.global_upper_bound = std::numeric_limits<double>::infinity();
            return res;
        }
        const double bound = v + L * w / 2.0;
        if (bound < target) {
            res.ledger.push(false);
            ++res.ledger.leaves;
            res.ledger.max_bound = std::max(res.ledger.max_bound, bound);
            res.ledger.max_level = std::max(res.ledger.max_level, b.level);
            min_width = std::min(min_width, w);
            continue;
        }
        if (b.level >= opt.max_level) throw Error(ErrorKind::Inconclusive, "certified_max_bb: maximum subdivision depth reached");
        res.ledger.push(true);
        // Reverse push so that children pop in Morton order, matching the preorder bits.
        Cell kids[4];
        int nk = 0;
        detail::for_each_child(b, [&](const Cell& c) { kids[nk++] = c; });
        for (int k = nk - 1; k >= 0; --k) stack.push_back(kids[k]);
    }
    res.outcome = BBOutcome::Certified;
    res.max.step = min_width;
    res.max.evaluations = evals;
    res.max.global_upper_bound = res.ledger.max_bound;
    res.max.certified_below = target;
    double t1 = res.max.theta1, t2 = res.max.theta2;
    const double refined = detail::refine_appendixC(t1, t2, min_width);
    if (refined > res.max.grid_max) {
        res.max.grid_max = refined;
        res.max.theta1 = t1;
        res.max.theta2 = t2;
    }
    return res;
}

struct LedgerCheck {
    bool ok = false;
    bool well_formed = false;  // the bits decode to a complete tree and are fully used
    bool bounds_ok = false;    // every recomputed leaf bound is below target
    double max_bound = 0.0;
    std::uint64_t leaves = 0;
};

/// Re-derives the certificate from the ledger alone: walks the recorded tree
/// shape with the same symmetry rule and recomputes |g(center)| + L * halfwidth
/// at every leaf.
inline LedgerCheck verify_ledger(const BoxLedger& ledger, double L, double target, int max_level = 30) {
    using detail::Cell;
    LedgerCheck chk;
    const double P = 2.0 * kPi;
    std::vector<Cell> stack{{0, 0, 0}};
    std::uint64_t pos = 0;
    chk.bounds_ok = true;
    while (!stack.empty()) {
        const Cell b = stack.back();
        stack.pop_back();
        if (pos >= ledger.nodes || b.level > max_level) return chk;
        if (ledger.at(pos++)) {
            Cell kids[4];
            int nk = 0;
            detail::for_each_child(b, [&](const Cell& c) { kids[nk++] = c; });
            for (int k = nk - 1; k >= 0; --k) stack.push_back(kids[k]);
            continue;
        }
        const double w = std::ldexp(P, -b.level);
        const double bound = detail::appendixC_abs_fast((b.ix + 0.5) * w, (b.iy + 0.5) * w) + L * w / 2.0;
        chk.max_bound = std::max(chk.max_bound, bound);
        ++chk.leaves;
        if (!(bound < target)) chk.bounds_ok = false;
    }
    chk.well_formed = pos == ledger.nodes;
    chk.ok = chk.well_formed && chk.bounds_ok;
    return chk;
}

// ---------------------------------------------------------------------------

struct C1Result {
    double value = 0.0;
    CertifiedMaximum certificate;
};

/// sqrt(0.675), released only against a certificate that max |g| < 1 with L = 44.28.
inline C1Result caratheodory_gamma2_G3_lower(const std::optional<CertifiedMaximum>& certificate) {
    if (!certificate || !certificate->certified_below || *certificate->certified_below > 1.0 ||
        certificate->lipschitz != kAppendixCLipschitz)
        throw Error(ErrorKind::CertificateMissing, "caratheodory_gamma2_G3_lower: needs a certificate that max |g| < 1");
    return {std::sqrt(kAppendixCCoeffs[0]), *certificate};
}

}  // namespace symdisc
