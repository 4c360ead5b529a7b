#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvop/numerics.hpp"
#include "mvop/poly.hpp"

namespace mvop {

/// Exponential-type matrix weight on the real line,
///
///     W(x) = e^{-v(x)} L0 e^{xA} e^{xA*} L0*,
///
/// with v a scalar polynomial of even degree and positive leading coefficient,
/// A a constant N x N matrix and L0 an optional constant left factor
/// (identity when absent).
class ExponentialWeight {
public:
    ExponentialWeight(ScalarPoly v, CMatrix a, std::optional<CMatrix> left = std::nullopt);

    int dim() const { return static_cast<int>(a_.rows()); }
    const ScalarPoly& potential() const { return v_; }
    const CMatrix& a() const { return a_; }
    bool has_left() const { return left_.has_value(); }
    /// L0, or the identity when no left factor was given.
    CMatrix left_factor() const;

    /// Same A and left factor, different potential (used by t-deformations).
    ExponentialWeight with_potential(ScalarPoly v) const;

    /// Free-form family tag ("hermite-alpha", "freud", "exponential", ...).
    std::string family = "exponential";
    /// alpha parameters for the Hermite-alpha families; empty otherwise.
    std::vector<double> alpha;

private:
    ScalarPoly v_;
    CMatrix a_;
    std::optional<CMatrix> left_;
};

CMatrix eval_weight(const ExponentialWeight& w, double x);

/// The reduced weight of W_{(A,T,L)}(x) = e^{-v} L e^{xA} T e^{xA*} L*.
struct NormalizedWeight {
    ExponentialWeight reduced;  ///< matrix K^{-1} A K, no left factor
    CMatrix factor;             ///< L K, with W_{(A,T,L)} = (LK) W_reduced (LK)*
};

/// Cholesky-reduces T = K K*. Propagates NotPositiveDefinite.
NormalizedWeight normalize_weight(const ScalarPoly& v, const CMatrix& a, const CMatrix& t, const CMatrix& l);

/// Direct evaluation of e^{-v} L e^{xA} T e^{xA*} L* (no reduction).
CMatrix eval_weight_atl(const ScalarPoly& v, const CMatrix& a, const CMatrix& t, const CMatrix& l, double x);

/// Strictly subdiagonal A with A_{j,j-1} = 2 alpha_j / alpha_{j-1}.
CMatrix hermite_alpha_matrix(const std::vector<double>& alpha);

/// L(0)_{jk} = H_{j-k}(0)/(j-k)! * alpha_j/alpha_k for j >= k.
CMatrix hermite_alpha_l0(const std::vector<double>& alpha);

/// L(x) = L(0) e^{xA}, entries H_{j-k}(x)/(j-k)! * alpha_j/alpha_k.
CMatrix hermite_alpha_l(const std::vector<double>& alpha, double x);

/// W(x) = e^{-x^2} L(x) L(x)*. Throws DomainError on non-positive alpha.
ExponentialWeight hermite_alpha_weight(const std::vector<double>& alpha);

/// alpha with alpha_1 = 1 and 2 alpha_j / alpha_{j-1} = sqrt((j-1)(N-j+1)).
std::vector<double> pearson_alpha_parameters(int n);

/// Sign convention for the t-term of the quartic weight.
enum class FreudConvention {
    /// weight e^{-x^4 + t x^2}, i.e. v = x^4 - t x^2
    WeightFactorization,
    /// v = x^4 + t x^2, the convention of the discrete Painleve I reduction
    Potential,
};

/// mu_i = (i-1)(N-i+1)(2N a + 2 a i + 3 b + a) / 6 for i = 1..N.
std::vector<double> freud_mu(int n, double alpha, double beta);

/// Quartic weight with A_{i,i-1} = sqrt(mu_i). Throws DomainError on negative mu.
ExponentialWeight freud_weight(int n, double alpha, double beta, double t,
                               FreudConvention convention = FreudConvention::WeightFactorization);

/// W'(x) W(x)^{-1}, analytic.
CMatrix weight_log_derivative(const ExponentialWeight& w, double x);

/// Analytic W'(x).
CMatrix weight_derivative(const ExponentialWeight& w, double x);

/// Degree-two Pearson polynomial V with W' = -W V for the Hermite-alpha weight.
MatrixPoly pearson_V_hermite(const std::vector<double>& alpha);

/// Fits V = -W^{-1} W' by interpolation at degree+1 Chebyshev nodes on [-2, 2]
/// and checks it at 2*degree further nodes. Throws VerificationError if the
/// check fails at relative tolerance 1e-8.
MatrixPoly pearson_V_numeric(const ExponentialWeight& w, int degree);

}  // namespace mvop
