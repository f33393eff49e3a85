#pragma once

// Maxima of smooth functions on the unit circle: a uniform coarse scan
// followed by golden-section refinement around the best few samples.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core.hpp"

namespace symdisc {

struct CircleMaximum {
    double value = 0.0;
    Complex arg_lambda{1.0, 0.0};
    double refinement_radius = 0.0;  // half-width of the final angular bracket
};

struct CircleScanOptions {
    int coarse_points = 1024;
    int candidates = 3;
    double angle_tol = tol::refine;
};

/// Golden-section search for a maximum of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double angle_tol, double& best_x) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > angle_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    best_x = f1 >= f2 ? x1 : x2;
    return std::max(f1, f2);
}

/// max over theta in [0, 2 pi) of f(theta).
template <class F>
CircleMaximum circle_max(F&& f, const CircleScanOptions& opt = {}) {
    const int N = opt.coarse_points;
    const double h = 2.0 * kPi / N;
    std::vector<double> v(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) v[static_cast<std::size_t>(k)] = f(k * h);

    // Local maxima of the periodic sample sequence, best first.
    std::vector<int> peaks;
    for (int k = 0; k < N; ++k) {
        const double prev = v[static_cast<std::size_t>((k + N - 1) % N)];
        const double next = v[static_cast<std::size_t>((k + 1) % N)];
        const double cur = v[static_cast<std::size_t>(k)];
        if (cur >= prev && cur >= next) peaks.push_back(k);
    }
    if (peaks.empty()) peaks.push_back(0);
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](int a, int b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
    if (static_cast<int>(peaks.size()) > opt.candidates) peaks.resize(static_cast<std::size_t>(opt.candidates));

    CircleMaximum best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int k : peaks) {
        // A coarse sample is itself a lower bound; keep it if refinement drifts.
        if (v[static_cast<std::size_t>(k)] > best.value) {
            best.value = v[static_cast<std::size_t>(k)];
            best.arg_lambda = unit(k * h);
        }
        double x = 0.0;
        const double val = golden_max(f, (k - 2) * h, (k + 2) * h, opt.angle_tol, x);
        if (val > best.value) {
            best.value = val;
            best.arg_lambda = unit(x);
        }
    }
    best.refinement_radius = opt.angle_tol;
    return best;
}

}  // namespace symdisc
