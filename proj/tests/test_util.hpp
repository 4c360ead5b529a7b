#pragma once

// Shared helpers for the unit tests. The trapezoid / Hankel routines here are
// deliberately independent of the library's quadrature and Gram-Schmidt.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mvop/oracle.hpp"
#include "mvop/weights.hpp"

namespace testutil {

using mvop::CMatrix;
using mvop::Complex;

inline const double kSqrtPi = std::sqrt(std::numbers::pi);

inline double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

inline CMatrix scalar(double v) { return CMatrix::Constant(1, 1, Complex(v, 0.0)); }

inline CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline CMatrix random_matrix(int dim, unsigned seed, bool complex_entries = true) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(u(gen), complex_entries ? u(gen) : 0.0);
    }
    return m;
}

inline mvop::MatrixPoly random_poly(int dim, int degree, unsigned seed) {
    std::vector<CMatrix> c;
    for (int k = 0; k <= degree; ++k) c.push_back(random_matrix(dim, seed + 17u * static_cast<unsigned>(k)));
    return mvop::MatrixPoly(c);
}

/// W sampled on a uniform grid over [-r, r]; the trapezoid rule converges
/// geometrically for these analytic, rapidly decaying integrands.
struct Trapezoid {
    double h = 0.0;
    std::vector<double> xs;
    std::vector<CMatrix> ws;

    Trapezoid(const mvop::ExponentialWeight& w, double r = 9.0, int points = 9001) {
        h = 2.0 * r / (points - 1);
        for (int i = 0; i < points; ++i) {
            const double x = -r + i * h;
            xs.push_back(x);
            ws.push_back(mvop::eval_weight(w, x));
        }
    }

    /// int x^k W(x) dx
    CMatrix moment(int k) const {
        CMatrix acc = CMatrix::Zero(ws[0].rows(), ws[0].cols());
        for (std::size_t i = 0; i < xs.size(); ++i) acc += std::pow(xs[i], k) * ws[i];
        return acc * h;
    }

    CMatrix inner(const mvop::MatrixPoly& f, const mvop::MatrixPoly& g) const {
        CMatrix acc = CMatrix::Zero(ws[0].rows(), ws[0].cols());
        for (std::size_t i = 0; i < xs.size(); ++i) acc += f(xs[i]) * ws[i] * g(xs[i]).adjoint();
        return acc * h;
    }
};

/// Monic P_n from the block Hankel system sum_m c_m M_{m+j} = -M_{n+j}, j < n.
inline std::vector<CMatrix> hankel_monic(const Trapezoid& t, int n) {
    const int dim = static_cast<int>(t.ws[0].rows());
    std::vector<CMatrix> coeffs(static_cast<std::size_t>(n + 1), CMatrix::Zero(dim, dim));
    coeffs[static_cast<std::size_t>(n)] = CMatrix::Identity(dim, dim);
    if (n == 0) return coeffs;
    std::vector<CMatrix> mom;
    for (int k = 0; k <= 2 * n; ++k) mom.push_back(t.moment(k));
    CMatrix big(n * dim, n * dim);
    CMatrix rhs(dim, n * dim);
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) big.block(m * dim, j * dim, dim, dim) = mom[static_cast<std::size_t>(m + j)];
    }
    for (int j = 0; j < n; ++j) rhs.block(0, j * dim, dim, dim) = -mom[static_cast<std::size_t>(n + j)];
    // c * big = rhs  <=>  big^T c^T = rhs^T
    const CMatrix c = big.transpose().fullPivLu().solve(rhs.transpose()).transpose();
    for (int m = 0; m < n; ++m) coeffs[static_cast<std::size_t>(m)] = c.block(0, m * dim, dim, dim);
    return coeffs;
}

/// Recurrence coefficients of a scalar weight by the discretized Stieltjes
/// procedure on the trapezoid nodes. c[0] = 0.
inline void stieltjes(const Trapezoid& t, int n_max, std::vector<double>& b, std::vector<double>& c) {
    const std::size_t m = t.xs.size();
    std::vector<double> w(m), prev(m, 0.0), cur(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) w[i] = t.ws[i](0, 0).real() * t.h;
    b.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    c.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    double norm_prev = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        double norm = 0.0, xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            norm += cur[i] * cur[i] * w[i];
            xnorm += t.xs[i] * cur[i] * cur[i] * w[i];
        }
        b[static_cast<std::size_t>(n)] = xnorm / norm;
        if (n > 0) c[static_cast<std::size_t>(n)] = norm / norm_prev;
        std::vector<double> next(m);
        for (std::size_t i = 0; i < m; ++i) {
            next[i] = (t.xs[i] - b[static_cast<std::size_t>(n)]) * cur[i] - c[static_cast<std::size_t>(n)] * prev[i];
        }
        prev = cur;
        cur = next;
        norm_prev = norm;
    }
}

/// Monic Hermite 2^{-n} H_n by the three-term recursion p_{n+1} = x p_n - (n/2) p_{n-1}.
inline std::vector<double> monic_hermite(int n) {
    std::vector<double> prev{1.0}, cur{1.0};
    if (n == 0) return cur;
    cur = {0.0, 1.0};
    for (int k = 1; k < n; ++k) {
        std::vector<double> next(static_cast<std::size_t>(k + 2), 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 0.5 * k * prev[i];
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline const std::vector<double>& grid() {
    static const std::vector<double> g{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    return g;
}

}  // namespace testutil
