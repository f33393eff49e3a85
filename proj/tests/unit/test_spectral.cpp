#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "symdisc/spectral.hpp"

using namespace symdisc;

namespace {

Matrix rand_mat(std::mt19937_64& rng, Eigen::Index n, double half = 1.0) {
    Matrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) M(i, j) = oracle::in_box(rng, half);
    return M;
}

std::vector<Complex> eig(const Matrix& A) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + A.rows()};
}

// sigma(A) from an independent eigen-solver and subset enumeration.
std::vector<Complex> sigma_oracle(const Matrix& A) { return oracle::elem_sym_subsets(eig(A)); }

double sigma_err(const ComplexPoint& s, const std::vector<Complex>& ref) {
    double m = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) m = std::max(m, std::abs(s[j] - ref[j]));
    return m;
}

double rho(const Matrix& A) { return oracle::max_modulus(eig(A)); }

Matrix in_omega_random(std::mt19937_64& rng, Eigen::Index n, double r) {
    Matrix A = rand_mat(rng, n);
    return A * (r / rho(A));
}

Matrix jordan(const std::vector<int>& sizes, const std::vector<Complex>& eigs) {
    int n = 0;
    for (int s : sizes) n += s;
    Matrix J = Matrix::Zero(n, n);
    int off = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        for (int i = 0; i < sizes[b]; ++i) {
            J(off + i, off + i) = eigs[b];
            if (i + 1 < sizes[b]) J(off + i, off + i + 1) = 1.0;
        }
        off += sizes[b];
    }
    return J;
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

bool all_criteria(const CyclicityVerdict& v, bool expect) {
    return v.krylov == expect && v.minimal_poly == expect && v.jordan_eigenspaces == expect && v.centralizer_dim == expect &&
           v.rank_sigma_prime == expect && v.ker_equals_image_ad == expect;
}

}  // namespace

TEST(SpectralData, Examples) {
    const auto d = spectral_data(Matrix::Identity(3, 3));
    // A triple root is only resolved to about the cube root of the rounding unit.
    for (const auto& e : d.eigenvalues) EXPECT_LT(std::abs(e - 1.0), 1e-4);
    EXPECT_EQ(d.sigma, (ComplexPoint{3.0, 3.0, 1.0}));

    const Complex s{0.3, 0.1}, p{-0.2, 0.5}, q{0.1, -0.1};
    Matrix C = Matrix::Zero(3, 3);
    C(0, 0) = s;
    C(0, 1) = -p;
    C(0, 2) = q;
    C(1, 0) = 1.0;
    C(2, 1) = 1.0;
    const auto sc = sigma_of(C);
    EXPECT_LT(distance(sc, ComplexPoint{s, p, q}), 1e-15);
    EXPECT_EQ(d.char_poly.degree(), 3u);
}

TEST(SpectralData, AgreesWithEigenSolverAndSimilarity) {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 300; ++k) {
        const Eigen::Index n = 2 + k % 5;
        const Matrix A = rand_mat(rng, n);
        const auto d = spectral_data(A);
        EXPECT_LT(sigma_err(d.sigma, sigma_oracle(A)), 1e-10);
        EXPECT_LT(oracle::hausdorff(d.eigenvalues, eig(A)), 1e-7);
        const Matrix P = Matrix::Identity(n, n) + 0.3 * rand_mat(rng, n);
        const Matrix B = P * A * P.inverse();
        EXPECT_LT(distance(sigma_of(B), d.sigma), 1e-8);
    }
}

TEST(SpectralRadius, Examples) {
    EXPECT_EQ(spectral_radius(Matrix::Zero(3, 3)), 0.0);
    EXPECT_TRUE(in_omega(Matrix::Zero(3, 3)));
    Matrix D = Matrix::Zero(2, 2);
    D(0, 0) = 0.5;
    D(1, 1) = 1.2;
    EXPECT_NEAR(spectral_radius(D), 1.2, 1e-14);
    EXPECT_FALSE(in_omega(D));
    Matrix N = Matrix::Zero(4, 4);
    for (int i = 0; i < 3; ++i) N(i, i + 1) = 100.0;
    EXPECT_EQ(spectral_radius(N), 0.0);
}

TEST(Mobius, IdentityAndSpectralLaw) {
    std::mt19937_64 rng(22);
    const Matrix A0 = in_omega_random(rng, 3, 0.8);
    EXPECT_LT((mobius_phi(0.0, A0) - A0).norm(), 1e-15);
    for (int k = 0; k < 1000; ++k) {
        const Eigen::Index n = 2 + k % 4;
        const Matrix A = in_omega_random(rng, n, 0.9);
        const Complex l = oracle::in_disc(rng, 0.9);
        double expect = 0.0;
        std::vector<Complex> images;
        for (const auto& a : eig(A)) {
            expect = std::max(expect, std::abs((a - l) / (1.0 - std::conj(l) * a)));
            images.push_back((a - l) / (1.0 - std::conj(l) * a));
        }
        const Matrix P = mobius_phi(l, A);
        EXPECT_NEAR(spectral_radius(P), expect, 1e-9);
        EXPECT_NEAR(lempert_scalar_pole(l, A), expect, 1e-9);
        EXPECT_LT(oracle::hausdorff(eig(P), images), 1e-8);
        EXPECT_LT((mobius_phi(-l, P) - A).norm(), 1e-8 * std::max(1.0, A.norm()));
    }
}

TEST(Mobius, Errors) {
    EXPECT_THROW(mobius_phi(1.0, Matrix::Zero(2, 2)), Error);
    try {
        mobius_phi(0.5, 2.0 * Matrix::Identity(2, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularResolvent);
    }
}

TEST(ScalarPoles, Examples) {
    std::mt19937_64 rng(23);
    const Matrix A = in_omega_random(rng, 3, 0.7);
    EXPECT_NEAR(lempert_scalar_pole(0.0, A), rho(A), 1e-9);
    const Complex l{0.3, -0.4};
    EXPECT_LT(lempert_scalar_pole(l, l * Matrix::Identity(3, 3)), 1e-14);
    const Matrix B = rand_mat(rng, 3);
    EXPECT_NEAR(kappa_scalar_pole(0.0, B), rho(B), 1e-9);
    EXPECT_NEAR(kappa_scalar_pole(l, B), rho(B) / (1.0 - std::norm(l)), 1e-9);
}

TEST(SMinmax, ExamplesAndBruteForce) {
    const Matrix S = Complex(0.2, -0.1) * Matrix::Identity(3, 3);
    EXPECT_LT(s_minmax(S, S), 1e-4);
    // Equal spectra do not force s = 0: here the best row still sees 0.1 vs -0.5.
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 0.1;
    D(1, 1) = -0.5;
    D(2, 2) = Complex(0.0, 0.3);
    EXPECT_NEAR(s_minmax(D, D), std::abs(Complex(0.6) / (1.0 - 0.1 * -0.5)), 1e-14);
    const Complex mu{0.3, 0.4};
    Matrix B = mu * Matrix::Identity(3, 3);
    B(0, 1) = 1.0;
    EXPECT_NEAR(s_minmax(Matrix::Zero(3, 3), B), std::abs(mu), 1e-5);

    std::mt19937_64 rng(24);
    for (int k = 0; k < 200; ++k) {
        const Matrix X = in_omega_random(rng, 3, 0.9), Y = in_omega_random(rng, 3, 0.9);
        double best = 1e300;
        for (const auto& a : eig(X)) {
            double worst = 0.0;
            for (const auto& b : eig(Y)) worst = std::max(worst, std::abs(a - b) / std::abs(1.0 - std::conj(a) * b));
            best = std::min(best, worst);
        }
        EXPECT_NEAR(s_minmax(X, Y), best, 1e-8);
    }
}

TEST(SigmaPrime, TrivialCases) {
    std::mt19937_64 rng(25);
    const Matrix A = rand_mat(rng, 4), B = rand_mat(rng, 4);
    for (const auto& c : sigma_prime(A, Matrix::Zero(4, 4))) EXPECT_LT(std::abs(c), 1e-13);
    EXPECT_LT(std::abs(sigma_prime(A, B)[0] - B.trace()), 1e-12);
}

TEST(SigmaPrime, CentralDifferenceOrder) {
    std::mt19937_64 rng(26);
    // n >= 3: for n = 2 sigma(A + tB) is quadratic and the central difference is exact.
    for (int k = 0; k < 60; ++k) {
        const Eigen::Index n = 3 + k % 3;
        const Matrix A = rand_mat(rng, n), B = rand_mat(rng, n);
        const auto exact = sigma_prime(A, B);
        auto err = [&](double h) {
            const auto p = sigma_oracle(A + h * B), m = sigma_oracle(A - h * B);
            double e = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j) e = std::max(e, std::abs((p[j] - m[j]) / (2.0 * h) - exact[j]));
            return e;
        };
        const double e1 = err(1e-2), e2 = err(1e-3);
        EXPECT_GE(std::log10(e1 / e2), 1.9) << "n=" << n << " e1=" << e1 << " e2=" << e2;
    }
}

TEST(SigmaPrime, KernelDimension) {
    std::mt19937_64 rng(27);
    for (Eigen::Index n = 2; n <= 5; ++n) {
        const Matrix A = rand_mat(rng, n);
        EXPECT_EQ(nullity(sigma_prime_matrix(A)), n * n - n);
    }
    EXPECT_GT(nullity(sigma_prime_matrix(model_A_t(0.5))), 6);
    EXPECT_GT(nullity(sigma_prime_matrix(model_A_tilde())), 6);
}

TEST(Cyclicity, Examples) {
    Matrix D = Matrix::Zero(3, 3);
    D(0, 0) = 0.1;
    D(1, 1) = 0.2;
    D(2, 2) = -0.4;
    EXPECT_TRUE(all_criteria(cyclicity(D), true));
    for (int n = 2; n <= 5; ++n) EXPECT_TRUE(all_criteria(cyclicity(jordan({n}, {0.0})), true)) << n;
    const auto z = cyclicity(Matrix::Zero(2, 2));
    EXPECT_TRUE(all_criteria(z, false));
    EXPECT_EQ(z.centralizer_dimension, 4);
}

TEST(Cyclicity, NonCyclicModels) {
    for (const Matrix& A : {Matrix(0.3 * Matrix::Identity(3, 3)), model_A_t(0.5), model_A_tilde()}) {
        const auto v = cyclicity_criteria(A);
        EXPECT_TRUE(v.consensus) << v.breakdown();
        EXPECT_TRUE(all_criteria(v, false)) << v.breakdown();
    }
}

TEST(Cyclicity, RandomMatricesAgree) {
    std::mt19937_64 rng(28);
    for (int k = 0; k < 1000; ++k) {
        const Matrix A = rand_mat(rng, 2 + k % 4);
        const auto v = cyclicity_criteria(A);
        ASSERT_TRUE(v.consensus) << v.breakdown();
        EXPECT_TRUE(v.cyclic);
    }
}

TEST(Cyclicity, EveryJordanStructureUpToFour) {
    const std::vector<Complex> palette{0.0, 0.5, Complex(0.0, -0.7), -0.9};
    std::mt19937_64 rng(29);
    int cases = 0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(n, n, cur, parts);
        for (const auto& p : parts) {
            // Every labelling of the blocks by eigenvalues from the palette.
            std::vector<int> lab(p.size(), 0);
            std::function<void(std::size_t)> rec = [&](std::size_t b) {
                if (b == p.size()) {
                    std::vector<Complex> ev;
                    bool distinct = true;
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        ev.push_back(palette[static_cast<std::size_t>(lab[i])]);
                        for (std::size_t j = 0; j < i; ++j) distinct = distinct && lab[i] != lab[j];
                    }
                    const Matrix J = jordan(p, ev);
                    const Matrix P = Matrix::Identity(n, n) + 0.2 * rand_mat(rng, n);
                    for (const Matrix& A : {J, Matrix(P * J * P.inverse())}) {
                        const auto v = cyclicity_criteria(A);
                        EXPECT_TRUE(v.consensus) << v.breakdown() << "\n" << A;
                        EXPECT_EQ(v.cyclic, distinct) << v.breakdown() << "\n" << A;
                        ++cases;
                    }
                    return;
                }
                for (int l = 0; l < static_cast<int>(palette.size()); ++l) {
                    lab[b] = l;
                    rec(b + 1);
                }
            };
            rec(0);
        }
    }
    EXPECT_GT(cases, 100);
}

TEST(Commutator, Examples) {
    std::mt19937_64 rng(30);
    const Matrix A = rand_mat(rng, 3);
    const auto z = solve_commutator(A, Matrix::Zero(3, 3));
    EXPECT_TRUE(z.solved);
    EXPECT_LT(z.Y.norm(), 1e-14);

    const Matrix Y0 = rand_mat(rng, 3);
    const Matrix B = Y0 * A - A * Y0;
    const auto s = solve_commutator(A, B);
    EXPECT_TRUE(s.solved);
    EXPECT_LT((s.Y * A - A * s.Y - B).norm(), 1e-8);
    for (const auto& c : sigma_prime(A, B)) EXPECT_LT(std::abs(c), 1e-9);

    Matrix Bt = Matrix::Zero(3, 3);
    Bt(2, 1) = 1.0;
    EXPECT_FALSE(solve_commutator(model_A_tilde(), Bt).solved);
}

TEST(IsospectralCurve, Examples) {
    std::mt19937_64 rng(31);
    const Matrix A = rand_mat(rng, 3);
    Matrix Y = rand_mat(rng, 3);
    Y *= 1.0 / norm2(Y);
    EXPECT_LT((isospectral_curve(A, Y, 0.0) - A).norm(), 1e-14);
    for (Complex z : {Complex(1.0), Complex(0.0, 2.0), Complex(-3.0)})
        EXPECT_LT(distance(sigma_of(isospectral_curve(A, Y, z)), sigma_of(A)), 1e-8) << z;
}

TEST(IsospectralCurve, ConditionScaledInvariance) {
    // Rounding in e^{zY} A e^{-zY} is amplified by ||e^{zY}|| ||e^{-zY}||.
    std::mt19937_64 rng(36);
    for (int k = 0; k < 200; ++k) {
        const Matrix A = rand_mat(rng, 3);
        Matrix Y = rand_mat(rng, 3);
        Y *= 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / norm2(Y);
        const Complex z = oracle::in_disc(rng, 5.0);
        const double kappa = norm2(expm(z * Y)) * norm2(expm(-z * Y));
        const double m = kappa * norm2(A);
        const auto s = sigma_of(isospectral_curve(A, Y, z)), s0 = sigma_of(A);
        // First-order bound: backward error eps*m in the product, sigma_k sensitivity k C(3,k) m^(k-1).
        const double binom[3] = {3.0, 3.0, 1.0};
        for (std::size_t j = 0; j < 3; ++j) {
            const double kk = static_cast<double>(j + 1);
            const double bound = std::max(1e-8, 100.0 * 2.2e-16 * kk * binom[j] * std::pow(m, kk));
            EXPECT_LT(std::abs(s[j] - s0[j]), bound) << "kappa=" << kappa << " j=" << j;
        }
    }

    const double th = 0.7;
    Matrix M = Matrix::Zero(2, 2);
    M(0, 1) = th;
    M(1, 0) = -th;
    const Matrix R = expm(M);
    EXPECT_LT(std::abs(R(0, 0) - std::cos(th)), 1e-12);
    EXPECT_LT(std::abs(R(0, 1) - std::sin(th)), 1e-12);
    EXPECT_LT(std::abs(R(1, 0) + std::sin(th)), 1e-12);
}

TEST(TangentCone, Predicates) {
    EXPECT_TRUE(tangent_cone_predicates(Matrix::Zero(3, 3), ConeModel::A_t));
    EXPECT_TRUE(tangent_cone_predicates(Matrix::Zero(3, 3), ConeModel::A_tilde));
    Matrix B = Matrix::Zero(3, 3);
    B(0, 0) = 1.0;
    B(1, 1) = -1.0;
    B(0, 1) = 1.0;
    B(1, 0) = -1.0;
    EXPECT_TRUE(tangent_cone_predicates(B, ConeModel::A_t));
    B(2, 2) = 0.1;
    EXPECT_FALSE(tangent_cone_predicates(B, ConeModel::A_t));
}

TEST(DecomposeXY, ZeroAndAtCase) {
    const auto z = decompose_XY(Matrix::Zero(3, 3), ConeModel::A_t, 0.5);
    EXPECT_FALSE(z.obstructed);
    EXPECT_EQ(z.X.norm(), 0.0);
    EXPECT_EQ(z.Y.norm(), 0.0);

    std::mt19937_64 rng(32);
    const Complex t = 0.5;
    for (int k = 0; k < 200; ++k) {
        Matrix B = rand_mat(rng, 3);
        B(2, 2) = 0.0;
        B(1, 1) = -B(0, 0);
        B(1, 0) = -B(0, 0) * B(0, 0) / B(0, 1);
        ASSERT_TRUE(tangent_cone_predicates(B, ConeModel::A_t));
        const auto d = decompose_XY(B, ConeModel::A_t, t);
        EXPECT_LT(d.residual, 1e-10 * std::max(1.0, B.norm()));
        EXPECT_LT((B - d.X - (d.Y * model_A_t(t) - model_A_t(t) * d.Y)).norm(), 1e-10 * std::max(1.0, B.norm()));
        for (Complex zeta : {Complex(0.3), Complex(0.0, -0.7)})
            EXPECT_LT(sigma_err(sigma_of(model_A_t(t) + zeta * d.X), sigma_oracle(model_A_t(t))), 1e-8);
    }
}

TEST(DecomposeXY, AtildeCases) {
    std::mt19937_64 rng(33);
    for (int k = 0; k < 100; ++k) {
        Matrix B = rand_mat(rng, 3);
        B(0, 0) = 0.0;
        B(2, 0) = 0.0;
        B(2, 1) = 0.0;
        B(2, 2) = -B(1, 1);
        const auto d = decompose_XY(B, ConeModel::A_tilde);
        ASSERT_FALSE(d.obstructed);
        EXPECT_LT(d.residual, 1e-10);
        EXPECT_EQ(d.Y(2, 1), -B(0, 0) - B(1, 1));
        EXPECT_EQ(d.Y(2, 0), -B(1, 0));
        for (Complex zeta : {Complex(0.3), Complex(0.0, -0.7), Complex(2.0)})
            EXPECT_LT(sigma_err(sigma_of(model_A_tilde() + zeta * d.X), {0.0, 0.0, 0.0}), 1e-8);
    }
    // b31 != 0 branch.
    for (int k = 0; k < 100; ++k) {
        Matrix B = rand_mat(rng, 3);
        B(0, 1) = 0.0;
        B(2, 1) = 0.0;
        B(2, 2) = -B(0, 0) - B(1, 1);
        const auto d = decompose_XY(B, ConeModel::A_tilde);
        ASSERT_FALSE(d.obstructed);
        EXPECT_LT(d.residual, 1e-10 * std::max(1.0, B.norm()));
        for (Complex zeta : {Complex(0.3), Complex(0.0, -0.7)})
            EXPECT_LT(sigma_err(sigma_of(model_A_tilde() + zeta * d.X), {0.0, 0.0, 0.0}), 1e-8);
    }
    // b11 != 0 with b12 = b31 = 0 lies in the cone but cannot be split.
    Matrix B = Matrix::Zero(3, 3);
    B(0, 0) = 1.0;
    B(1, 1) = -1.0;
    B(1, 0) = 0.4;
    ASSERT_TRUE(tangent_cone_predicates(B, ConeModel::A_tilde));
    EXPECT_TRUE(decompose_XY(B, ConeModel::A_tilde).obstructed);
    EXPECT_FALSE(solve_commutator(model_A_tilde(), B).solved);
}

TEST(LiftDisc, Examples) {
    Disc3 phi{PowerPoly{{0.0, 1.0}}, PowerPoly{}, PowerPoly{}};
    const auto psi = lift_disc_G3(phi);
    std::mt19937_64 rng(34);
    for (int k = 0; k < 20; ++k) {
        const Complex z = oracle::in_disc(rng);
        EXPECT_LT(sigma_err(sigma_of(psi(z)), {z, 0.0, 0.0}), 1e-12);
    }
    EXPECT_LT((psi(0.0) - model_A_tilde()).norm(), 1e-15);
    try {
        lift_disc_G3(Disc3{PowerPoly{}, PowerPoly{}, PowerPoly{{0.0, 1.0}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Order3Violation);
    }
}

TEST(LiftDisc, RandomRoundTrip) {
    std::mt19937_64 rng(35);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        Disc3 phi;
        for (std::size_t i = 0; i < 3; ++i)
            for (int d = 0; d <= 3; ++d) phi[i].c.push_back(i == 2 && d < 2 ? Complex{0.0, 0.0} : oracle::in_box(rng, 0.5));
        const auto psi = lift_disc_G3(phi);
        for (int s = 0; s < 50; ++s) {
            const Complex z = oracle::in_disc(rng);
            worst = std::max(worst, sigma_err(sigma_of(psi(z)), {phi[0](z), phi[1](z), phi[2](z)}));
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Competitor, DiscAndBound) {
    EXPECT_EQ(lempert_upper_bound_G3(ComplexPoint{0.0, 0.0, 0.0}).bound, 0.0);
    const ComplexPoint target{Complex(0.1, 0.05), Complex(-0.08, 0.0), Complex(0.0, 0.12)};
    const auto d = competitor_disc_G3(target);
    EXPECT_NEAR(d.r, std::max({3 * std::abs(target[0]), 3 * std::abs(target[1]), std::sqrt(3 * std::abs(target[2]))}), 1e-15);
    const auto b = lempert_upper_bound_G3(target);
    EXPECT_EQ(b.samples_checked, 1000);
    EXPECT_LT(b.max_lift_error, 1e-10);
    EXPECT_EQ(b.bound, d.r);

    // Scaled family (t f1, t f2, t^2 f3): the bound is linear in |t|.
    const Complex f1{0.5, 0.2}, f2{-0.3, 0.1}, f3{0.4, -0.6};
    double prev = -1.0;
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double r = lempert_upper_bound_G3(ComplexPoint{t * f1, t * f2, t * t * f3}, 200).bound;
        if (prev > 0) { EXPECT_NEAR(r / t, prev, 1e-12); }
        prev = r / t;
    }
    EXPECT_THROW(lempert_upper_bound_G3(ComplexPoint{0.5, 0.0, 0.0}), Error);
}
