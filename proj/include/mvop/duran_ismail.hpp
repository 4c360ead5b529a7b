#pragma once

#include <utility>
#include <vector>

#include "mvop/oracle.hpp"

namespace mvop {

/// rho(x) = W(x)^{-1} A W(x), with A the matrix acting on the monic family
/// (L0 A L0^{-1} when a left factor is present).
CMatrix rho(const ExponentialWeight& w, double x);

/// rho as a polynomial, L0^{-*} e^{-xA*} A e^{xA*} L0^*. Requires A nilpotent
/// (DomainError otherwise).
MatrixPoly rho_poly(const ExponentialWeight& w);

/// E(x, n), F(x, n) from
///
///     E(x,n) H(n-1) = -int P(y,n) W(y) [(V(x) - V(y))/(x - y)] P(y,n)^* dy
///     F(x,n) H(n-1) = -int P(y,n) W(y) [(V(x) - V(y))/(x - y)] P(y,n-1)^* dy
///
/// with the divided difference expanded as a polynomial in (x, y). n >= 1.
std::pair<CMatrix, CMatrix> EF_coefficients(const MVOPFamily& fam, const MatrixPoly& v, double x, int n);

/// Closed forms for the degree-two Pearson weight:
///   F = -H(n) A* H(n-1)^{-1}
///   E = -x H(n)A*H(n-1)^{-1} - nI + H(n)A*H(n-1)^{-1}A/2 + H(n)(A*)^2 H(n-1)^{-1}/2
std::pair<CMatrix, CMatrix> hermite_pearson_EF_closed(const std::vector<CMatrix>& h, const CMatrix& a, double x,
                                                      int n);

/// P'(x,n) against F P(x,n) - E P(x,n-1).
Residual ef_ladder_residual(const MVOPFamily& fam, const CMatrix& e, const CMatrix& f, double x, int n);

/// The E + F sum relation taken literally:
///   (F + E) H(n-1) = P(x,n)A - AP(x,n) - int P(y,n)W(y)[(v'(x)-v'(y))/(x-y)](P(y,n-1)^* + P(y,n)^*) dy.
/// Holds for scalar weights; not for the N = 2 Pearson weight.
Residual ef_sum_relation(const MVOPFamily& fam, const CMatrix& e, const CMatrix& f, double x, int n);

/// Polynomial-level replacement for the sum relation:
///   P(x,n)A - AP(x,n) = G1 H(n-1)^{-1} P(x,n) - G0 H(n-1)^{-1} P(x,n-1),
/// G1 = int P(y,n)W(y)[(rho(y)-rho(x))/(x-y)]P(y,n-1)^* dy, G0 likewise with P(y,n)^*.
Residual ef_commutator_relation(const MVOPFamily& fam, double x, int n);

}  // namespace mvop
