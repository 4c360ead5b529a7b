#include "mvop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvop {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix zeros(int dim) { return CMatrix::Zero(dim, dim); }

double scaled_residual(const CMatrix& lhs, const CMatrix& rhs) {
    const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / scale;
}

double scaled_norm(const CMatrix& diff, std::initializer_list<const CMatrix*> terms) {
    double scale = 1.0;
    for (const CMatrix* t : terms) {
        scale = std::max(scale, t->norm());
    }
    return diff.norm() / scale;
}

bool all_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

CMatrix inverse(const CMatrix& m) { return m.partialPivLu().inverse(); }

bool is_nilpotent(const CMatrix& a) {
    const auto n = a.rows();
    const double anorm = a.norm();
    if (anorm == 0.0) {
        return true;
    }
    CMatrix p = a;
    for (Eigen::Index k = 1; k < n; ++k) {
        p = p * a;
    }
    // A^N is a product of N factors; compare against the size it would have
    // if nothing cancelled.
    return p.norm() <= 1e-14 * std::pow(std::max(1.0, anorm), static_cast<double>(n));
}

namespace {

CMatrix exp_series_terminating(const CMatrix& xa) {
    const auto n = xa.rows();
    CMatrix result = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        term = term * xa / static_cast<double>(k);
        result += term;
    }
    return result;
}

CMatrix exp_scaling_squaring(const CMatrix& xa) {
    const auto n = xa.rows();
    const double norm = xa.norm();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const CMatrix scaled = xa / std::ldexp(1.0, squarings);
    CMatrix result = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (int k = 1; k < 60; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
        if (term.norm() <= 1e-16 * result.norm()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

}  // namespace

CMatrix mat_exp(const CMatrix& a, double x) {
    if (a.rows() != a.cols()) {
        throw DomainError("mat_exp: matrix is not square");
    }
    const CMatrix xa = a * x;
    if (is_nilpotent(a)) {
        return exp_series_terminating(xa);
    }
    return exp_scaling_squaring(xa);
}

CMatrix unit_lower_inverse(const CMatrix& l) {
    const auto n = l.rows();
    if (l.cols() != n) {
        throw DomainError("unit_lower_inverse: matrix is not square");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(l(i, i) - Complex(1.0, 0.0)) > 1e-14) {
            throw DomainError("unit_lower_inverse: diagonal entry " + std::to_string(i) +
                              " is not 1");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (l(i, j) != Complex(0.0, 0.0)) {
                throw DomainError("unit_lower_inverse: matrix is not lower triangular");
            }
        }
    }
    // Column by column: solve L y = e_k.
    CMatrix inv = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        inv(k, k) = 1.0;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Complex s = 0.0;
            for (Eigen::Index j = k; j < i; ++j) {
                s += l(i, j) * inv(j, k);
            }
            inv(i, k) = -s;
        }
    }
    return inv;
}

CMatrix cholesky(const CMatrix& t) {
    const auto n = t.rows();
    if (t.cols() != n) {
        throw DomainError("cholesky: matrix is not square");
    }
    if (!is_hermitian(t, 1e-12)) {
        throw DomainError("cholesky: matrix is not Hermitian");
    }
    CMatrix k = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex diag = t(j, j);
        for (Eigen::Index p = 0; p < j; ++p) {
            diag -= k(j, p) * std::conj(k(j, p));
        }
        const double pivot = diag.real();
        if (!(pivot > 0.0)) {
            throw NotPositiveDefinite("cholesky: non-positive pivot at index " + std::to_string(j));
        }
        k(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            Complex s = t(i, j);
            for (Eigen::Index p = 0; p < j; ++p) {
                s -= k(i, p) * std::conj(k(j, p));
            }
            k(i, j) = s / k(j, j);
        }
    }
    return k;
}

Residual make_residual(const CMatrix& lhs, const CMatrix& rhs) { return {lhs - rhs, scaled_residual(lhs, rhs)}; }

}  // namespace mvop
