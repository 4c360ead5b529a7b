#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>

#include "mvop/errors.hpp"

namespace mvop {

using Complex = std::complex<double>;

/// Dense N x N complex matrix. Every matrix-valued quantity in the library
/// (A, H(n), B(n), C(n), operator coefficients, ...) is carried as one.
using CMatrix = Eigen::MatrixXcd;

CMatrix identity(int dim);
CMatrix zeros(int dim);

/// Conjugate transpose.
inline CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

/// Frobenius norm.
inline double fro(const CMatrix& m) { return m.norm(); }

/// ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F).
///
/// This is the residual convention used throughout: differences are measured
/// against the largest participating term, never below an absolute scale of 1.
double scaled_residual(const CMatrix& lhs, const CMatrix& rhs);

/// ||diff||_F / max(1, max_i ||terms_i||_F).
double scaled_norm(const CMatrix& diff, std::initializer_list<const CMatrix*> terms);

bool all_finite(const CMatrix& m);

/// A residual matrix together with its scaled size.
struct Residual {
    CMatrix value;
    double scaled = 0.0;
};

/// lhs - rhs with scaled_residual(lhs, rhs).
Residual make_residual(const CMatrix& lhs, const CMatrix& rhs);

/// ||M - M*||_F <= tol * max(1, ||M||_F).
bool is_hermitian(const CMatrix& m, double tol = 1e-12);

/// Commutator [a, b] = ab - ba.
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

/// General inverse through partial-pivot LU.
CMatrix inverse(const CMatrix& m);

/// Returns e^{xA}.
///
/// When A is nilpotent (A^N vanishes) the terminating series sum_{k<N} (xA)^k / k!
/// is returned, which is exact up to rounding. Otherwise scaling and squaring
/// around a Taylor series truncated at relative size 1e-16 is used.
CMatrix mat_exp(const CMatrix& a, double x);

/// True when a^dim is zero to rounding.
bool is_nilpotent(const CMatrix& a);

/// Inverse of a unit lower triangular matrix by forward substitution.
/// Throws DomainError if the diagonal is not identically one or the strict
/// upper part is not zero.
CMatrix unit_lower_inverse(const CMatrix& l);

/// Lower triangular K with positive real diagonal and K K* = t.
/// Throws NotPositiveDefinite on a non-positive pivot, DomainError if t is not Hermitian.
CMatrix cholesky(const CMatrix& t);

}  // namespace mvop
