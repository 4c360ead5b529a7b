#pragma once

#include <map>
#include <span>
#include <vector>

#include "mvop/op_algebra.hpp"
#include "mvop/oracle.hpp"

namespace mvop {

/// P'(x, n) = sum_{j=1}^{k} M_{-j}(n) P(x, n-j), coefficients by projection
/// M_{-j}(n) = <P'_n, P_{n-j}> H(n-j)^{-1}. The remaining coefficients
/// (j > k) are computed too and must vanish below tail_tol relative to the
/// largest kept coefficient, else VerificationError.
std::map<int, CMatrix> derivative_expansion(const MVOPFamily& fam, int n, int k, double tail_tol = 1e-8);

/// Largest relative tail coefficient of the expansion (no throwing).
double derivative_expansion_tail(const MVOPFamily& fam, int n, int k);

/// M_{-2}(n) = H(n) A* H(n-2)^{-1}; zero for n < 2.
std::vector<CMatrix> m2_closed_form(const std::vector<CMatrix>& h, const CMatrix& a);

/// 2(n+1)H(n+1)^{-1} - 2(n+2)H(n+2)^{-1}H(n+1)H(n)^{-1} + H(n+2)^{-1}AH(n+2)A*H(n)^{-1} - A*H(n)^{-1}A.
Residual hrec2_residual(const std::vector<CMatrix>& h, const CMatrix& a, int n);

/// [M_{-2}(n), A] against 2((n-1)C(n) - nC(n-1)).
Residual m2_commutator_residual(const std::vector<CMatrix>& m2, const std::vector<CMatrix>& c,
                                const CMatrix& a, int n);

/// <P'_n, P_m> against <P_n, -P'_m + P_m V*>.
Residual dx_adjoint_check(const MVOPFamily& fam, const MatrixPoly& v, int n, int m);

/// The derivative as a difference operator, n delta^{-1} + sum_{j>=2} M_{-j}(n) delta^{-j}.
DiffOp derivative_operator(const MVOPFamily& fam, int k);

/// [M, d/dx] with M = A + 2C(n) delta^{-1} applied to P at (x, n).
Residual dx_commutator_check(const MVOPFamily& fam, const DiffOp& m, const DiffOp& dx, double x, int n);

/// max over xs of ||W'(x) + W(x) V(x)|| relative to ||W'||.
double pearson_residual(const ExponentialWeight& w, const MatrixPoly& v, std::span<const double> xs);

}  // namespace mvop
