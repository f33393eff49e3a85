#pragma once

// Thin dense linear-algebra layer over Eigen: the matrix type, a single rank
// policy, Kronecker products, and the matrix exponential.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "core.hpp"

namespace symdisc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Eigen::Index kMaxMatrixSize = 8;

/// Validates the square-matrix contract: 1 <= n <= 8 and finite entries.
/// (Size 1 is accepted so that scalar edge cases go through the same code.)
inline void require_square(const Matrix& A, const char* who) {
    if (A.rows() != A.cols() || A.rows() < 1 || A.rows() > kMaxMatrixSize)
        throw Error(ErrorKind::InvalidArgument, std::string(who) + ": expected a square matrix of size 1..8");
    if (!A.allFinite()) throw Error(ErrorKind::InvalidArgument, std::string(who) + ": non-finite entry");
}

inline Eigen::VectorXd singular_values(const Matrix& M) {
    if (M.size() == 0) return {};
    return Eigen::JacobiSVD<Matrix>(M).singularValues();
}

/// Numerical rank: singular values above rel_tol times the largest one.
inline Eigen::Index numerical_rank(const Matrix& M, double rel_tol = tol::rank) {
    const auto s = singular_values(M);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

inline Eigen::Index nullity(const Matrix& M, double rel_tol = tol::rank) {
    return M.cols() - numerical_rank(M, rel_tol);
}

/// Orthonormal basis of the numerical null space (columns).
inline Matrix null_space(const Matrix& M, double rel_tol = tol::rank) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    if (s.size() > 0 && s(0) > 0.0)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rel_tol * s(0)) ++r;
    return svd.matrixV().rightCols(M.cols() - r);
}

inline Matrix kron(const Matrix& A, const Matrix& B) { return Eigen::kroneckerProduct(A, B).eval(); }

/// Column-stacking vec(.) and its inverse.
inline Vector vec(const Matrix& M) { return Eigen::Map<const Vector>(M.data(), M.size()); }

inline Matrix unvec(const Vector& v, Eigen::Index n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

/// [X, Y] = XY - YX.
inline Matrix commutator(const Matrix& X, const Matrix& Y) { return X * Y - Y * X; }

/// Matrix exponential (scaling and squaring with a degree-13 Pade approximant).
inline Matrix expm(const Matrix& M) { return M.exp(); }

inline double norm2(const Matrix& M) {
    const auto s = singular_values(M);
    return s.size() == 0 ? 0.0 : s(0);
}

inline Complex determinant(const Matrix& M) { return Eigen::PartialPivLU<Matrix>(M).determinant(); }

/// Entries with independent uniform real and imaginary parts in [-1, 1].
inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = Complex{u(rng), u(rng)};
    return M;
}

}  // namespace symdisc
