#pragma once

// Spectral-ball matrix operations: sigma of a matrix, Moebius automorphisms of
// Omega_n, cyclicity, the derivative sigma'_A, commutator equations and the
// G_3 lifting construction.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"
#include "roots.hpp"
#include "sympoly.hpp"

namespace symdisc {

struct SpectralData {
    std::vector<Complex> eigenvalues;
    Polynomial char_poly{Complex{1.0, 0.0}};
    ComplexPoint sigma;
};

/// Coefficients of det(x I - A), leading first (Faddeev-LeVerrier).
inline std::vector<Complex> char_poly_coeffs(const Matrix& A) {
    require_square(A, "char_poly");
    const Eigen::Index n = A.rows();
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    const Matrix I = Matrix::Identity(n, n);
    Matrix M = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + c[static_cast<std::size_t>(k - 1)] * I;
        c[static_cast<std::size_t>(k)] = -(A * M).trace() / static_cast<double>(k);
    }
    return c;
}

/// sigma(A) = sigma(spectrum of A), read directly off the characteristic polynomial.
inline ComplexPoint sigma_of(const Matrix& A) {
    const auto c = char_poly_coeffs(A);
    ComplexPoint s(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) s[j - 1] = (j % 2 == 0 ? 1.0 : -1.0) * c[j];
    return s;
}

inline SpectralData spectral_data(const Matrix& A) {
    SpectralData d;
    d.char_poly = Polynomial(char_poly_coeffs(A));
    d.eigenvalues = roots(d.char_poly);
    d.sigma = sigma_of(A);
    return d;
}

inline double spectral_radius(const Matrix& A) {
    double r = 0.0;
    for (const auto& e : spectral_data(A).eigenvalues) r = std::max(r, std::abs(e));
    return r;
}

inline bool in_omega(const Matrix& A, double tolerance = tol::boundary) { return spectral_radius(A) < 1.0 - tolerance; }

/// Phi_lambda(A) = (A - lambda I)(I - conj(lambda) A)^{-1}.
inline Matrix mobius_phi(Complex lambda, const Matrix& A) {
    require_square(A, "mobius_phi");
    if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::DomainError, "mobius_phi: |lambda| must be < 1");
    const Eigen::Index n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    const Matrix R = I - std::conj(lambda) * A;
    const auto s = singular_values(R);
    if (s(s.size() - 1) <= 1e-14 * s(0)) throw Error(ErrorKind::SingularResolvent, "I - conj(lambda) A is singular");
    // Both factors are polynomials in A, so they commute; solve from the right.
    return R.transpose().partialPivLu().solve((A - lambda * I).transpose()).transpose();
}

/// l_{Omega_n}(lambda I, A) = r(Phi_lambda(A)).
inline double lempert_scalar_pole(Complex lambda, const Matrix& A) { return spectral_radius(mobius_phi(lambda, A)); }

/// kappa_{Omega_n}(lambda I; B) = r(B) / (1 - |lambda|^2).
inline double kappa_scalar_pole(Complex lambda, const Matrix& B) {
    if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::DomainError, "kappa_scalar_pole: |lambda| must be < 1");
    return spectral_radius(B) / (1.0 - std::norm(lambda));
}

/// min over spe(A) of max over spe(B) of the Moebius distance.
inline double s_minmax(const Matrix& A, const Matrix& B) {
    const auto ea = spectral_data(A).eigenvalues;
    const auto eb = spectral_data(B).eigenvalues;
    for (const auto* es : {&ea, &eb})
        for (const auto& e : *es)
            if (!(std::abs(e) < 1.0)) throw Error(ErrorKind::DomainError, "s_minmax: matrices must lie in Omega_n");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& l : ea) {
        double worst = 0.0;
        for (const auto& m : eb) worst = std::max(worst, mobius_distance(l, m));
        best = std::min(best, worst);
    }
    return best;
}

namespace detail {

/// Weights w_i with f'(0) = sum_i w_i f(i) exactly for deg f <= 2m (nodes -m..m).
inline std::vector<double> central_derivative_weights(int m) {
    std::vector<double> w(static_cast<std::size_t>(2 * m + 1), 0.0);
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    for (int i = -m; i <= m; ++i) {
        if (i == 0) continue;
        const double sign = ((std::abs(i) + 1) % 2 == 0) ? 1.0 : -1.0;
        w[static_cast<std::size_t>(i + m)] = sign * fact(m) * fact(m) / (i * fact(m - i) * fact(m + i));
    }
    return w;
}

}  // namespace detail

/// d/dt sigma(A + tB) at t = 0, exact up to rounding: sigma(A + tB) is a
/// polynomial of degree <= n in t, recovered from 2m+1 >= n+1 symmetric nodes.
inline ComplexPoint sigma_prime(const Matrix& A, const Matrix& B) {
    require_square(A, "sigma_prime");
    if (B.rows() != A.rows() || B.cols() != A.cols()) throw Error(ErrorKind::InvalidArgument, "sigma_prime: size mismatch");
    const auto n = static_cast<std::size_t>(A.rows());
    const int m = static_cast<int>((n + 1) / 2);
    const double h = 1.0 / (1.0 + norm2(B));
    const auto w = detail::central_derivative_weights(m);
    ComplexPoint out(n);
    for (int i = -m; i <= m; ++i) {
        const double wi = w[static_cast<std::size_t>(i + m)];
        if (wi == 0.0) continue;
        const ComplexPoint s = sigma_of(A + (i * h) * B);
        for (std::size_t j = 0; j < n; ++j) out[j] += wi * s[j];
    }
    for (auto& v : out) v /= h;
    return out;
}

/// Matrix of the linear map B -> sigma'_A(B) in the column-stacked basis E_ij.
inline Matrix sigma_prime_matrix(const Matrix& A) {
    const Eigen::Index n = A.rows();
    Matrix S(n, n * n);
    for (Eigen::Index col = 0; col < n * n; ++col) {
        Matrix E = Matrix::Zero(n, n);
        E(col % n, col / n) = 1.0;
        const auto d = sigma_prime(A, E);
        for (Eigen::Index j = 0; j < n; ++j) S(j, col) = d[static_cast<std::size_t>(j)];
    }
    return S;
}

/// Matrix of Y -> [Y, A] = YA - AY acting on vec(Y).
inline Matrix ad_operator(const Matrix& A) {
    const Eigen::Index n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    return kron(A.transpose(), I) - kron(I, A);
}

struct CyclicityVerdict {
    bool krylov = false;
    bool minimal_poly = false;
    bool jordan_eigenspaces = false;
    bool centralizer_dim = false;
    bool rank_sigma_prime = false;
    bool ker_equals_image_ad = false;
    bool consensus = false;  // all six agree
    bool cyclic = false;     // the common verdict when consensus holds

    // Diagnostics.
    Eigen::Index krylov_dim = 0;
    Eigen::Index minimal_poly_degree = 0;
    Eigen::Index centralizer_dimension = 0;
    Eigen::Index sigma_prime_rank = 0;
    Eigen::Index max_eigenspace_dim = 0;

    std::string breakdown() const {
        std::ostringstream os;
        os << "krylov=" << krylov << " minimal_poly=" << minimal_poly << " jordan=" << jordan_eigenspaces
           << " centralizer=" << centralizer_dim << " rank_sigma_prime=" << rank_sigma_prime
           << " ker_sigma_prime=im_ad=" << ker_equals_image_ad;
        return os.str();
    }
};

struct CyclicityOptions {
    int krylov_vectors = 8;
    std::uint64_t seed = 0x6379636cULL;
    double rank_tol = tol::rank;
    double cluster_radius = 1e-2;  // eigenvalue clustering, relative to ||A - tr(A)/n I||
    int containment_samples = 4;
};

namespace detail {

/// Dimension of span{v, Av, A^2 v, ...} via Arnoldi with reorthogonalization.
inline Eigen::Index arnoldi_dim(const Matrix& A, Vector v, double threshold) {
    const Eigen::Index n = A.rows();
    Matrix Q(n, 0);
    double nv = v.norm();
    if (nv == 0.0) return 0;
    v /= nv;
    while (Q.cols() < n) {
        Q.conservativeResize(n, Q.cols() + 1);
        Q.col(Q.cols() - 1) = v;
        Vector w = A * v;
        for (int pass = 0; pass < 2; ++pass) w -= Q * (Q.adjoint() * w);
        nv = w.norm();
        if (nv <= threshold) break;
        v = w / nv;
    }
    return Q.cols();
}

/// Dimension of span{I, A, A^2, ...} in the Frobenius inner product.
inline Eigen::Index matrix_krylov_dim(const Matrix& A, double threshold) {
    const Eigen::Index n = A.rows();
    const Eigen::Index N = n * n;
    Matrix Q(N, 0);
    Matrix cur = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
    while (Q.cols() < n) {
        Q.conservativeResize(N, Q.cols() + 1);
        Q.col(Q.cols() - 1) = vec(cur);
        Vector w = vec(A * cur);
        for (int pass = 0; pass < 2; ++pass) w -= Q * (Q.adjoint() * w);
        const double nw = w.norm();
        if (nw <= threshold) break;
        cur = unvec(w / nw, n);
    }
    return Q.cols();
}

}  // namespace detail

/// Evaluates the six computable characterizations of cyclicity without
/// cross-checking them. All tests run on the centered, normalized matrix.
inline CyclicityVerdict cyclicity_criteria(const Matrix& A, const CyclicityOptions& opt = {}) {
    require_square(A, "cyclicity");
    const Eigen::Index n = A.rows();
    const Matrix I = Matrix::Identity(n, n);
    Matrix Ac = A - (A.trace() / static_cast<double>(n)) * I;
    double scale = norm2(Ac);
    // A scalar matrix up to rounding: centering leaves only noise.
    if (scale <= opt.rank_tol * norm2(A)) {
        scale = 0.0;
        Ac.setZero();
    }
    if (scale > 0.0) Ac /= scale;
    const double thr = opt.rank_tol * (scale > 0.0 ? 1.0 : 0.0);

    CyclicityVerdict v;

    std::mt19937_64 rng(opt.seed);
    for (int k = 0; k < opt.krylov_vectors; ++k) {
        Vector x = random_matrix(n, 1, rng).col(0);
        v.krylov_dim = std::max(v.krylov_dim, detail::arnoldi_dim(Ac, x, thr));
    }
    v.krylov = v.krylov_dim == n;

    v.minimal_poly_degree = detail::matrix_krylov_dim(Ac, thr);
    v.minimal_poly = v.minimal_poly_degree == n;

    // Eigenspaces: cluster eigenvalues, take the centroid of each cluster.
    // QR eigenvalues here: cluster means stay accurate for semisimple multiple
    // eigenvalues, where characteristic-polynomial roots spread by eps^(1/m).
    Eigen::ComplexEigenSolver<Matrix> es(Ac, false);
    const std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::vector<int> label(ev.size(), -1);
    int clusters = 0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = clusters;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const auto a = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < ev.size(); ++j)
                if (label[j] < 0 && std::abs(ev[a] - ev[j]) <= opt.cluster_radius) {
                    label[j] = clusters;
                    stack.push_back(j);
                }
        }
        ++clusters;
    }
    v.max_eigenspace_dim = 0;
    for (int c = 0; c < clusters; ++c) {
        Complex centroid{0.0, 0.0};
        int cnt = 0;
        for (std::size_t j = 0; j < ev.size(); ++j)
            if (label[j] == c) {
                centroid += ev[j];
                ++cnt;
            }
        centroid /= static_cast<double>(cnt);
        const Matrix M = Ac - centroid * I;
        // Absolute threshold against the normalized scale of Ac.
        const auto s = singular_values(M);
        Eigen::Index null = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) <= opt.rank_tol * std::max(1.0, s(0))) ++null;
        v.max_eigenspace_dim = std::max(v.max_eigenspace_dim, null);
    }
    v.jordan_eigenspaces = v.max_eigenspace_dim <= 1;

    const Matrix ad = ad_operator(Ac);
    v.centralizer_dimension = scale > 0.0 ? nullity(ad, opt.rank_tol) : n * n;
    v.centralizer_dim = v.centralizer_dimension == n;

    const Matrix S = sigma_prime_matrix(Ac);
    v.sigma_prime_rank = numerical_rank(S, opt.rank_tol);
    v.rank_sigma_prime = v.sigma_prime_rank == n;

    // Im ad_A is always inside ker sigma'_A; sample that, then compare dimensions.
    bool contained = true;
    for (int k = 0; k < opt.containment_samples; ++k) {
        const Matrix Y = random_matrix(n, n, rng);
        const Matrix B = commutator(Y, Ac);
        const auto d = sigma_prime(Ac, B);
        double err = 0.0;
        for (const auto& x : d) err = std::max(err, std::abs(x));
        contained = contained && err <= 1e-8 * std::max(1.0, B.norm());
    }
    const Eigen::Index dim_ker = n * n - v.sigma_prime_rank;
    const Eigen::Index dim_im = n * n - v.centralizer_dimension;
    v.ker_equals_image_ad = contained && dim_ker == dim_im;

    const std::array<bool, 6> all{v.krylov, v.minimal_poly, v.jordan_eigenspaces, v.centralizer_dim,
                                  v.rank_sigma_prime, v.ker_equals_image_ad};
    v.consensus = std::all_of(all.begin(), all.end(), [&](bool b) { return b == all[0]; });
    v.cyclic = v.consensus && all[0];
    return v;
}

/// Cyclicity verdict; throws CriteriaDisagreement if the criteria disagree.
inline CyclicityVerdict cyclicity(const Matrix& A, const CyclicityOptions& opt = {}) {
    auto v = cyclicity_criteria(A, opt);
    if (!v.consensus) throw Error(ErrorKind::CriteriaDisagreement, v.breakdown());
    return v;
}

struct CommutatorSolution {
    bool solved = false;
    Matrix Y;
    double residual = 0.0;
};

/// Least-squares solution of B = [Y, A]; `solved` when the residual is within
/// 1e-8 (||A|| ||Y|| + ||B||).
inline CommutatorSolution solve_commutator(const Matrix& A, const Matrix& B) {
    require_square(A, "solve_commutator");
    if (B.rows() != A.rows() || B.cols() != A.cols()) throw Error(ErrorKind::InvalidArgument, "solve_commutator: size mismatch");
    const Eigen::Index n = A.rows();
    const Matrix L = ad_operator(A);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(L);
    cod.setThreshold(tol::rank);
    CommutatorSolution sol;
    sol.Y = unvec(cod.solve(vec(B)), n);
    sol.residual = (commutator(sol.Y, A) - B).norm();
    sol.solved = sol.residual <= 1e-8 * (A.norm() * sol.Y.norm() + B.norm());
    return sol;
}

/// zeta -> e^{zeta Y} A e^{-zeta Y}.
inline Matrix isospectral_curve(const Matrix& A, const Matrix& Y, Complex zeta) {
    require_square(A, "isospectral_curve");
    return expm(zeta * Y) * A * expm(-zeta * Y);
}

/// The two non-cyclic, non-scalar 3x3 model matrices.
inline Matrix model_A_t(Complex t) {
    Matrix A = Matrix::Zero(3, 3);
    A(2, 2) = t;
    return A;
}

inline Matrix model_A_tilde() {
    Matrix A = Matrix::Zero(3, 3);
    A(1, 2) = 1.0;
    return A;
}

/// diag(t, t, -2t): the diagonal form of A_tilde + t B_t.
inline Matrix model_D_t(Complex t) {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = t;
    D(1, 1) = t;
    D(2, 2) = -2.0 * t;
    return D;
}

/// B_t = [[1,0,0],[0,w,0],[0,3t,w^2]] with w = e^{2 pi i/3}.
inline Matrix model_B_t(Complex t) {
    const Complex w = unit(2.0 * kPi / 3.0);
    Matrix B = Matrix::Zero(3, 3);
    B(0, 0) = 1.0;
    B(1, 1) = w;
    B(2, 1) = 3.0 * t;
    B(2, 2) = w * w;
    return B;
}

enum class ConeModel { A_t, A_tilde };

namespace detail {

inline double cone_tol(const Matrix& B, int degree, double tolerance) {
    return tolerance * std::pow(std::max(1.0, B.cwiseAbs().maxCoeff()), degree);
}

}  // namespace detail

/// Membership in the algebraic tangent cones C''_{A_t} and C''_{A_tilde}.
inline bool tangent_cone_predicates(const Matrix& B, ConeModel which, double tolerance = 1e-10) {
    if (B.rows() != 3 || B.cols() != 3) throw Error(ErrorKind::InvalidArgument, "tangent_cone_predicates: B must be 3x3");
    auto zero = [&](Complex x, int deg) { return std::abs(x) <= detail::cone_tol(B, deg, tolerance); };
    if (which == ConeModel::A_t)
        return zero(B(2, 2), 1) && zero(B(0, 0) + B(1, 1), 1) && zero(B(0, 0) * B(0, 0) + B(0, 1) * B(1, 0), 2);
    return zero(B.trace(), 1) && zero(B(2, 1), 1) && zero(B(0, 1) * B(2, 0), 2);
}

struct XYDecomposition {
    bool obstructed = false;
    Matrix X;
    Matrix Y;
    double residual = 0.0;  // ||B - X - [Y, A]||
};

/// B = X + [Y, A] with A + zeta X isospectral to A for every zeta.
/// For A_t the parameter t must be nonzero; it is ignored for A_tilde.
inline XYDecomposition decompose_XY(const Matrix& B, ConeModel which, Complex t = 1.0, double tolerance = 1e-10) {
    if (!tangent_cone_predicates(B, which, tolerance))
        throw Error(ErrorKind::DomainError, "decompose_XY: B is not in the tangent cone");
    XYDecomposition d;
    d.Y = Matrix::Zero(3, 3);
    Matrix A;
    if (which == ConeModel::A_t) {
        if (t == Complex{0.0, 0.0}) throw Error(ErrorKind::InvalidArgument, "decompose_XY: t must be nonzero");
        A = model_A_t(t);
        d.Y(0, 2) = B(0, 2) / t;
        d.Y(1, 2) = B(1, 2) / t;
        d.Y(2, 0) = -B(2, 0) / t;
        d.Y(2, 1) = -B(2, 1) / t;
    } else {
        A = model_A_tilde();
        auto zero = [&](Complex x) { return std::abs(x) <= detail::cone_tol(B, 1, tolerance); };
        const Complex b11 = B(0, 0), b12 = B(0, 1), b21 = B(1, 0), b22 = B(1, 1), b13 = B(0, 2), b31 = B(2, 0);
        if (zero(b31)) {
            d.Y(2, 1) = -b11 - b22;
            if (zero(b11))
                d.Y(2, 0) = -b21;
            else if (!zero(b12))
                d.Y(2, 0) = -b21 - b11 * b11 / b12;
            else
                d.obstructed = true;
        } else {
            // b12 = 0 here, from the cone condition b12 b31 = 0.
            d.Y(2, 1) = -b22;
            d.Y(0, 1) = b13 + b11 * b11 / b31;
        }
        if (d.obstructed) {
            d.X = Matrix::Zero(3, 3);
            d.Y = Matrix::Zero(3, 3);
            d.residual = std::numeric_limits<double>::infinity();
            return d;
        }
    }
    d.X = B - commutator(d.Y, A);
    if (which == ConeModel::A_t) {
        // Keep exactly the upper-left block; the rest is zero by the cone equations.
        d.X.col(2).setZero();
        d.X.row(2).setZero();
    }
    d.residual = (B - d.X - commutator(d.Y, A)).norm();
    return d;
}

/// 3x3 matrix whose entries are polynomials in zeta.
struct MatrixPoly {
    std::array<std::array<PowerPoly, 3>, 3> e;

    Matrix operator()(Complex z) const {
        Matrix M(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](z);
        return M;
    }
};

using Disc3 = std::array<PowerPoly, 3>;

/// psi(zeta) = [[0, zeta, 0], [0, 0, 1], [phi_3/zeta, -phi_2, phi_1]], so that
/// sigma(psi(zeta)) = phi(zeta) and psi(0) = A_tilde when phi_1(0) = phi_2(0) = 0.
inline MatrixPoly lift_disc_G3(const Disc3& phi) {
    if (phi[2].order() < 2)
        throw Error(ErrorKind::Order3Violation, "lift_disc_G3: phi_3 must vanish to order 2 at the origin");
    MatrixPoly psi;
    psi.e[0][1].c = {0.0, 1.0};
    psi.e[1][2].c = {1.0};
    if (!phi[2].c.empty()) psi.e[2][0].c.assign(phi[2].c.begin() + 1, phi[2].c.end());
    for (const auto& x : phi[1].c) psi.e[2][1].c.push_back(-x);
    psi.e[2][2] = phi[0];
    return psi;
}

struct CompetitorDisc {
    double r = 0.0;
    Disc3 phi;
};

/// phi(zeta) = (zeta a/r, zeta b/r, zeta^2 c/r^2), r = max{3|a|, 3|b|, sqrt(3|c|)}.
inline CompetitorDisc competitor_disc_G3(const ComplexPoint& target) {
    if (target.size() != 3) throw Error(ErrorKind::InvalidArgument, "competitor disc: target must have 3 coordinates");
    CompetitorDisc d;
    d.r = std::max({3.0 * std::abs(target[0]), 3.0 * std::abs(target[1]), std::sqrt(3.0 * std::abs(target[2]))});
    if (d.r == 0.0) {
        d.phi = {PowerPoly{}, PowerPoly{}, PowerPoly{}};
        return d;
    }
    d.phi[0].c = {0.0, target[0] / d.r};
    d.phi[1].c = {0.0, target[1] / d.r};
    d.phi[2].c = {0.0, 0.0, target[2] / (d.r * d.r)};
    return d;
}

struct LempertBound {
    double bound = 0.0;
    int samples_checked = 0;
    double max_lift_error = 0.0;
};

/// Upper bound r for l_{Omega_3}(A_tilde, C) with sigma(C) = target, after
/// checking the lift and sampling membership of the competitor disc in G_3.
inline LempertBound lempert_upper_bound_G3(const ComplexPoint& target, int samples = 1000, std::uint64_t seed = 7) {
    const auto d = competitor_disc_G3(target);
    LempertBound out;
    out.bound = d.r;
    if (d.r == 0.0) return out;
    if (d.r >= 1.0) throw Error(ErrorKind::OutOfRange, "lempert_upper_bound_G3: r >= 1");
    const auto psi = lift_disc_G3(d.phi);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < samples; ++k) {
        const Complex z = std::polar(0.999 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
        const ComplexPoint p{d.phi[0](z), d.phi[1](z), d.phi[2](z)};
        if (!in_Gn(p)) throw Error(ErrorKind::VerificationFailed, "competitor disc leaves G_3");
        const ComplexPoint s = sigma_of(psi(z));
        out.max_lift_error = std::max(out.max_lift_error, distance(s, p));
        ++out.samples_checked;
    }
    if (out.max_lift_error > 1e-10) throw Error(ErrorKind::VerificationFailed, "lift does not reproduce the disc");
    const ComplexPoint at_r{d.phi[0](d.r), d.phi[1](d.r), d.phi[2](d.r)};
    if (distance(at_r, target) > 1e-12 * std::max(1.0, target.max_abs()))
        throw Error(ErrorKind::VerificationFailed, "competitor disc misses the target at zeta = r");
    return out;
}

}  // namespace symdisc
