#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mvop/op_algebra.hpp"
#include "mvop/oracle.hpp"

namespace mvop {

/// The matrix A entering D = d/dx + A on the monic family of w.
///
/// For W = e^{-v} L0 e^{xA} e^{xA*} L0* the monic polynomials are L0 P~ L0^{-1},
/// so the operator acting on them is d/dx + L0 A L0^{-1}.
CMatrix effective_a(const ExponentialWeight& w);

/// Lowering operator M (band [-k+1, 0]) and its adjoint M^dagger (band [0, k-1]).
struct LadderPair {
    DiffOp M;
    DiffOp Mdag;
    CMatrix A;
    ScalarPoly v;
};

/// M = A + sum_{j<0} (v'(L))_j(n) delta^j.
DiffOp lowering_operator(const MVOPFamily& fam, const ScalarPoly& v, const CMatrix& a);

/// M together with dagger(M, H).
LadderPair ladder_pair(const MVOPFamily& fam);

/// M_j(n) = <P_n . D, P_{n+j}> H(n+j)^{-1}, j = -k+1..0, by quadrature.
DiffOp lowering_by_projection(const MVOPFamily& fam, const CMatrix& a, int k);

/// P'(x, n) + P(x, n) A.
CMatrix apply_D(const MVOPFamily& fam, double x, int n, const CMatrix& a);

/// -P'(x, n) - P(x, n) A + v'(x) P(x, n).
CMatrix apply_D_dagger(const MVOPFamily& fam, double x, int n, const CMatrix& a, const ScalarPoly& v);

/// Polynomial forms of the two actions.
MatrixPoly apply_D_poly(const MatrixPoly& p, const CMatrix& a);
MatrixPoly apply_D_dagger_poly(const MatrixPoly& p, const CMatrix& a, const ScalarPoly& v);

struct LadderResidual {
    CMatrix lowering;  ///< P.D - M.P
    CMatrix raising;   ///< P.D^dagger - M^dagger.P
    double lowering_scaled = 0.0;
    double raising_scaled = 0.0;
};

LadderResidual ladder_residual(const MVOPFamily& fam, const LadderPair& pair, double x, int n);

/// max over x in xs and 0 <= n <= n_hi of both scaled ladder residuals.
double ladder_max_residual(const MVOPFamily& fam, const LadderPair& pair, std::span<const double> xs, int n_hi);

struct StringResidual {
    int n = 0;
    CMatrix first;   ///< [B(n),A] - I - (v'L)_{-1}(n) + (v'L)_{-1}(n+1)
    CMatrix second;  ///< [C(n),A] - C(n)(v'L)_0(n-1) + (v'L)_0(n)C(n); zero at n = 0
    double first_scaled = 0.0;
    double second_scaled = 0.0;
};

/// Both string relations for every n the tabulation allows.
std::vector<StringResidual> string_residuals(const MVOPFamily& fam, const CMatrix& a, const ScalarPoly& v);

/// max_n || (v'L)_0(n) - A - H(n) A* H(n)^{-1} ||, scaled.
double zero_coefficient_residual(const MVOPFamily& fam, const CMatrix& a, const ScalarPoly& v);

/// max_{n} || sum_{k<n} [B(k), A] - (n I - 2 C(n)) ||, scaled (Hermite-type potentials).
double telescoped_sum_residual(const MVOPFamily& fam, const CMatrix& a);

/// |n - 4 C(n) (C(n-1) + C(n) + C(n+1) + 2t)| for v = x^4 + t x^2, n >= 1.
double dpainleve1_residual(std::span<const double> c, double t, int n);

/// |n - C(n) (4 (C(n-1) + C(n) + C(n+1)) + 2t)|, the form that follows from
/// A_{-1}(n) with B = 0. Agrees with dpainleve1_residual only at t = 0.
double dpainleve1_corrected_residual(std::span<const double> c, double t, int n);

/// Hermite closed form M^dagger = 2 delta + 2B(n) - A + t I for v = x^2 + t x.
DiffOp hermite_raising_closed(const MVOPFamily& fam, const CMatrix& a, double t);

struct CommutatorReport {
    double bracket = 0.0;         ///< [D^dagger, D] - v''
    double double_bracket = 0.0;  ///< [[D^dagger, D], D] - v'''
    double triple_bracket = 0.0;  ///< [[[D^dagger, D], D], D] - v''''
    double sum = 0.0;             ///< D + D^dagger - v'
    double max() const;
};

/// Right-acting brackets F.[X, Y] = (F.X).Y - (F.Y).X applied to a fixed set of
/// sample polynomials and evaluated on xs.
CommutatorReport commutator_checks(const CMatrix& a, const ScalarPoly& v, std::span<const double> xs);

/// The sample polynomials used by commutator_checks.
std::vector<MatrixPoly> sample_polynomials(int dim);

}  // namespace mvop
