#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mvop/op_algebra.hpp"
#include "mvop/oracle.hpp"

namespace mvop {

/// J = diag(1, 2, ..., N).
CMatrix j_matrix(int dim);

/// Diagonal H(0) of the Hermite-alpha weight,
///
///     H(0)_jj = sqrt(pi) 2^j alpha_j^2 sum_{l=1}^{j} 2^{-l} / ((j-l)! alpha_l^2).
CMatrix h0_closed_form_value(const std::vector<double>& alpha);

/// Same value, cross-checked against the quadrature zeroth moment of the
/// weight. Throws VerificationError on relative mismatch above 1e-10.
CMatrix h0_closed_form(const std::vector<double>& alpha, const QuadratureRule& rule);

/// H(n+1) = H/2 + H H(n-1)^{-1} H - H A* H^{-1} A H / 4 + A H A* / 4, the
/// middle term dropped at n = 0. The recursion does not involve t; the
/// argument is accepted for symmetry with recurrence_from_norms.
/// Throws NotPositiveDefinite when an H(n) stops being positive definite.
std::vector<CMatrix> norm_recursion(const CMatrix& h0, const CMatrix& a, int n_max, double t = 0.0);

/// 2B(n) = A + H(n) A* H(n)^{-1} - t and C(n) = H(n) H(n-1)^{-1}, C(0) = 0.
std::pair<std::vector<CMatrix>, std::vector<CMatrix>> recurrence_from_norms(const std::vector<CMatrix>& h,
                                                                           const CMatrix& a, double t = 0.0);

/// xi(n, j, k) for 1 <= j, k <= N.
struct XiTable {
    int n = 0;
    int N = 0;
    std::vector<double> values;  ///< row-major, (j-1) * N + (k-1)

    double operator()(int j, int k) const { return values[static_cast<std::size_t>((j - 1) * N + (k - 1))]; }
    double& at(int j, int k) { return values[static_cast<std::size_t>((j - 1) * N + (k - 1))]; }
};

/// Downward recursion in j from the j = N boundary, using the diagonals of
/// H(n), H(n-1). For n = 0 the table is xi(0, j, k) = alpha_j / ((j-k)! alpha_k).
XiTable xi_table(const std::vector<double>& alpha, const std::vector<CMatrix>& h, int n);

/// P(x, n) = Q(x, n) L(x)^{-1} e^{x^2/2} with Q_jk = xi(n,j,k) H_{n+j-k}(x) e^{-x^2/2}.
/// The Gaussian factors cancel and are never formed.
CMatrix assemble_P(const XiTable& xi, const std::vector<double>& alpha, double x);

/// Q(x, n) itself.
CMatrix assemble_Q(const XiTable& xi, double x);

/// Everything the fast path produces for 0 <= n <= n_max.
struct FastHermite {
    std::vector<double> alpha;
    std::vector<CMatrix> H;
    std::vector<CMatrix> B;
    std::vector<CMatrix> C;
    std::vector<XiTable> xi;

    CMatrix P(int n, double x) const { return assemble_P(xi[static_cast<std::size_t>(n)], alpha, x); }
};

/// Steps 1-2 of the fast recipe: H(0) closed form, norm recursion, xi tables.
FastHermite fast_hermite(const std::vector<double>& alpha, int n_max);

/// max relative error of the fast P against the oracle on xs, n <= n_max.
double fast_vs_oracle(const FastHermite& fast, const MVOPFamily& fam, std::span<const double> xs);

/// xi(n, j, k) read off the oracle: least-squares fit of (P(x,n) L(x))_jk
/// against H_{n+j-k}(x) over xs.
XiTable xi_from_oracle(const MVOPFamily& fam, const std::vector<double>& alpha, int n, std::span<const double> xs);

/// (P.D)(x,n) - (nI + J) P(x,n) with D = -d^2/2 + d(x - A) + J acting from the right.
Residual second_order_D_check(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n);

/// The three-term operator
///   phi^{-1}(C) = -A delta + (nI + J - 2C(n) - A B(n) + A^2/2) + (C(n)A - 2C(n)B(n-1)) delta^{-1}.
DiffOp casimir_difference_operator(const MVOPFamily& fam, const std::vector<double>& alpha);

/// P(x,n)(J - xA + A^2/2) against (phi^{-1}(C) . P)(x, n).
Residual casimir_check(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n);

/// [phi^{-1}(C), Gamma] . P at (x, n), Gamma(n) = nI + J.
Residual casimir_gamma_commutator(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n);

struct ConjugationReport {
    double dq = 0.0;           ///< Q . (d + x) against (P . D) Phi
    double cq = 0.0;           ///< Q J against (P . C) Phi
    double d2q = 0.0;          ///< (-Q'' + x^2 Q - Q)/2 + Q J against (P . D) Phi
    double schrodinger = 0.0;  ///< -Q''/2 + x^2 Q/2 - (n + j - k + 1/2) Q, entrywise
    double casimir_ode = 0.0;  ///< first-order ODE for Q with norm coefficients
    double max() const;
};

/// Q = P Phi with Phi(x) = e^{-x^2/2} L(x), P from the family; Phi' and Phi''
/// from Hermite derivatives, not from A.
ConjugationReport conjugation_checks(const MVOPFamily& fam, const std::vector<double>& alpha,
                                     std::span<const double> xs, int n);

struct OscillatorReport {
    double d_dd = 0.0;   ///< [D, calD] - calD
    double d_ddd = 0.0;  ///< [D, calD^dagger] + calD^dagger
    double dd_ddd = 0.0; ///< [calD, calD^dagger] + 2
    double max() const;
};

/// Harmonic-oscillator brackets of the right-acting operators on sample polynomials.
OscillatorReport oscillator_brackets(const std::vector<double>& alpha, std::span<const double> xs);

}  // namespace mvop
