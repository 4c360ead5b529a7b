#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mvop/numerics.hpp"
#include "mvop/poly.hpp"
#include "mvop/weights.hpp"

namespace mvop {

/// Composite Gauss-Legendre rule on [-cutoff, cutoff].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double cutoff = 0.0;
    int panels = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule good for integrands x^k W(x), k <= 2 n_max + 4.
///
/// The cutoff R is the smallest R with v(+-R) - 2||A||_2 R - (2 n_max + 4) ln R > 160;
/// panels are doubled until the zeroth and (2 n_max)-th moments of tr W settle
/// to 1e-13 relative. Throws QuadratureError after 12 doublings.
QuadratureRule build_quadrature(const ExponentialWeight& w, int n_max);

/// A rule together with the weight sampled on it (quadrature weight folded in).
struct WeightedRule {
    QuadratureRule rule;
    std::vector<CMatrix> weighted;  ///< w_q W(x_q)

    WeightedRule(QuadratureRule r, const ExponentialWeight& w);

    std::size_t size() const { return rule.nodes.size(); }

    /// sum_q f_q w_q W(x_q) g_q^*, with f_q, g_q values at the nodes.
    CMatrix pair(std::span<const CMatrix> f, std::span<const CMatrix> g) const;

    /// Values of a matrix polynomial at the nodes.
    std::vector<CMatrix> sample(const MatrixPoly& p) const;
};

/// <F, G> = int F(y) W(y) G(y)^* dy.
CMatrix inner_product(const MatrixPoly& f, const MatrixPoly& g, const ExponentialWeight& w,
                      const QuadratureRule& rule);

/// Degrees above this are refused (ConditioningError).
inline constexpr int kMaxTrustedDegree = 40;

/// Monic matrix orthogonal polynomials, their squared norms and recurrence
/// coefficients, tabulated for 0 <= n <= n_max.
struct MVOPFamily {
    ExponentialWeight weight;
    int n_max = 0;
    std::vector<MatrixPoly> P;  ///< P[n], monic of degree n, n <= n_max
    std::vector<CMatrix> H;     ///< H[n] = <P_n, P_n>, n <= n_max
    std::vector<CMatrix> X;     ///< one-but-leading coefficient of P_n (X[0] = 0)
    std::vector<CMatrix> B;     ///< B[n] = X(n) - X(n+1), n <= n_max - 1
    std::vector<CMatrix> C;     ///< C[n] = H(n) H(n-1)^{-1}, C[0] = 0, n <= n_max
    std::shared_ptr<const WeightedRule> quad;
    std::vector<std::vector<CMatrix>> node_values;  ///< node_values[n][q] = P_n(x_q)

    int dim() const { return weight.dim(); }

    CMatrix eval(int n, double x) const;
    CMatrix eval_derivative(int n, double x, int order = 1) const;

    /// <F, G> with this family's rule.
    CMatrix inner(const MatrixPoly& f, const MatrixPoly& g) const;
};

/// Degree-by-degree Gram-Schmidt in the coefficient basis.
///
/// Each new polynomial is x P(x, n-1) with its projections onto every earlier
/// P_m removed (two passes). Throws ConditioningError when H(n) stops being
/// positive definite, orthogonality degrades past 1e-9, or n_max exceeds
/// kMaxTrustedDegree.
MVOPFamily gram_schmidt_family(const ExponentialWeight& w, int n_max);

/// Same, reusing an existing rule.
MVOPFamily gram_schmidt_family(const ExponentialWeight& w, int n_max, std::shared_ptr<const WeightedRule> quad);

/// max over m < n <= n_max of ||<P_n, P_m>||_F / ||H(n)||_F.
double orthogonality_defect(const MVOPFamily& fam);

/// max over n < n_max and x in xs of the scaled three-term recurrence residual.
double recurrence_residual(const MVOPFamily& fam, std::span<const double> xs);

/// Scaled residual of the Christoffel-Darboux identity at (x, y), 1 <= n <= n_max.
double christoffel_darboux_residual(const MVOPFamily& fam, double x, double y, int n);

/// The default residual grid {-2, -1, -0.5, 0, 0.5, 1, 2}.
std::vector<double> default_grid();

}  // namespace mvop
