#include "mvop/duran_ismail.hpp"

#include <cmath>

#include "mvop/ladder.hpp"

namespace mvop {

CMatrix rho(const ExponentialWeight& w, double x) {
    const CMatrix wx = eval_weight(w, x);
    return wx.partialPivLu().solve(effective_a(w) * wx);
}

MatrixPoly rho_poly(const ExponentialWeight& w) {
    const CMatrix& a = w.a();
    if (!is_nilpotent(a)) {
        throw DomainError("rho_poly: A must be nilpotent for rho to be a polynomial");
    }
    const int dim = w.dim();
    // e^{xA*} and e^{-xA*} as terminating series
    std::vector<CMatrix> plus, minus;
    CMatrix term = identity(dim);
    for (int k = 0; k < dim; ++k) {
        plus.push_back(term);
        minus.push_back((k % 2 == 0 ? 1.0 : -1.0) * term);
        term = term * a.adjoint() / static_cast<double>(k + 1);
    }
    const CMatrix l0s = w.left_factor().adjoint();
    const MatrixPoly core = MatrixPoly(minus).right_mul(a) * MatrixPoly(plus);
    return core.left_mul(inverse(l0s)).right_mul(l0s);
}

namespace {

/// int P(y,n) W(y) K(x,y) P(y,m)^* dy with the kernel given at the nodes.
CMatrix kernel_pair(const MVOPFamily& fam, const std::vector<CMatrix>& kernel, int n, int m) {
    const auto& pn = fam.node_values[n];
    const auto& pm = fam.node_values[m];
    CMatrix acc = zeros(fam.dim());
    for (std::size_t q = 0; q < kernel.size(); ++q) {
        acc.noalias() += pn[q] * fam.quad->weighted[q] * kernel[q] * pm[q].adjoint();
    }
    return acc;
}

std::vector<CMatrix> divided_difference_at_nodes(const MatrixPoly& v, const MVOPFamily& fam, double x) {
    std::vector<CMatrix> k;
    k.reserve(fam.quad->size());
    for (double y : fam.quad->rule.nodes) k.push_back(v.divided_difference(x, y));
    return k;
}

void check_n(const MVOPFamily& fam, int n) {
    if (n < 1 || n > fam.n_max) throw DomainError("E/F coefficients need 1 <= n <= n_max");
}

}  // namespace

std::pair<CMatrix, CMatrix> EF_coefficients(const MVOPFamily& fam, const MatrixPoly& v, double x, int n) {
    check_n(fam, n);
    const auto kernel = divided_difference_at_nodes(v, fam, x);
    const CMatrix hinv = inverse(fam.H[n - 1]);
    const CMatrix e = -kernel_pair(fam, kernel, n, n) * hinv;
    const CMatrix f = -kernel_pair(fam, kernel, n, n - 1) * hinv;
    return {e, f};
}

std::pair<CMatrix, CMatrix> hermite_pearson_EF_closed(const std::vector<CMatrix>& h, const CMatrix& a, double x,
                                                      int n) {
    if (n < 1 || n >= static_cast<int>(h.size())) throw DomainError("hermite_pearson_EF_closed: n out of range");
    const int dim = static_cast<int>(a.rows());
    const CMatrix as = a.adjoint();
    const CMatrix g = h[n] * as * inverse(h[n - 1]);
    const CMatrix f = -g;
    const CMatrix e = -x * g - static_cast<double>(n) * identity(dim) + 0.5 * g * a +
                      0.5 * h[n] * as * as * inverse(h[n - 1]);
    return {e, f};
}

Residual ef_ladder_residual(const MVOPFamily& fam, const CMatrix& e, const CMatrix& f, double x, int n) {
    check_n(fam, n);
    return make_residual(fam.eval_derivative(n, x), f * fam.eval(n, x) - e * fam.eval(n - 1, x));
}

Residual ef_sum_relation(const MVOPFamily& fam, const CMatrix& e, const CMatrix& f, double x, int n) {
    check_n(fam, n);
    const CMatrix a = effective_a(fam.weight);
    const ScalarPoly vp = fam.weight.potential().derivative();
    std::vector<CMatrix> kernel;
    kernel.reserve(fam.quad->size());
    const int dim = fam.dim();
    for (double y : fam.quad->rule.nodes) {
        // (v'(x) - v'(y))/(x - y) as a polynomial in (x, y)
        double s = 0.0;
        const auto& c = vp.coeffs();
        for (std::size_t m = 1; m < c.size(); ++m) {
            double acc = 0.0;
            double xa = 1.0;
            for (std::size_t k = 0; k < m; ++k) {
                acc += xa * std::pow(y, static_cast<double>(m - 1 - k));
                xa *= x;
            }
            s += c[m] * acc;
        }
        kernel.push_back(s * identity(dim));
    }
    const CMatrix p = fam.eval(n, x);
    const CMatrix integral = kernel_pair(fam, kernel, n, n - 1) + kernel_pair(fam, kernel, n, n);
    const CMatrix lhs = (f + e) * fam.H[n - 1];
    const CMatrix rhs = p * a - a * p - integral;
    return make_residual(lhs, rhs);
}

Residual ef_commutator_relation(const MVOPFamily& fam, double x, int n) {
    check_n(fam, n);
    const CMatrix a = effective_a(fam.weight);
    const MatrixPoly r = rho_poly(fam.weight);
    auto kernel = divided_difference_at_nodes(r, fam, x);
    for (CMatrix& k : kernel) k = -k;  // (rho(y) - rho(x))/(x - y)
    const CMatrix hinv = inverse(fam.H[n - 1]);
    const CMatrix g1 = kernel_pair(fam, kernel, n, n - 1);
    const CMatrix g0 = kernel_pair(fam, kernel, n, n);
    const CMatrix p = fam.eval(n, x);
    return make_residual(p * a - a * p, g1 * hinv * p - g0 * hinv * fam.eval(n - 1, x));
}

}  // namespace mvop
