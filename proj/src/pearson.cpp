#include "mvop/pearson.hpp"

#include <algorithm>
#include <string>

namespace mvop {

namespace {

std::map<int, CMatrix> all_projections(const MVOPFamily& fam, int n) {
    std::map<int, CMatrix> out;
    const auto d = fam.quad->sample(fam.P[n].derivative());
    for (int j = 1; j <= n; ++j) {
        out[-j] = fam.quad->pair(d, fam.node_values[n - j]) * inverse(fam.H[n - j]);
    }
    return out;
}

double tail_size(const std::map<int, CMatrix>& all, int k) {
    double kept = 1.0;
    double tail = 0.0;
    for (const auto& [j, m] : all) {
        if (-j <= k) {
            kept = std::max(kept, m.norm());
        } else {
            tail = std::max(tail, m.norm());
        }
    }
    return tail / kept;
}

}  // namespace

double derivative_expansion_tail(const MVOPFamily& fam, int n, int k) {
    if (n < 0 || n > fam.n_max) throw DomainError("derivative_expansion: n out of range");
    return tail_size(all_projections(fam, n), k);
}

std::map<int, CMatrix> derivative_expansion(const MVOPFamily& fam, int n, int k, double tail_tol) {
    if (n < 0 || n > fam.n_max) throw DomainError("derivative_expansion: n out of range");
    const auto all = all_projections(fam, n);
    const double tail = tail_size(all, k);
    if (!(tail < tail_tol)) {
        throw VerificationError("derivative_expansion: coefficients below -" + std::to_string(k) +
                                " do not vanish (relative size " + std::to_string(tail) + ")");
    }
    std::map<int, CMatrix> kept;
    for (const auto& [j, m] : all) {
        if (-j <= k) kept.emplace(j, m);
    }
    return kept;
}

std::vector<CMatrix> m2_closed_form(const std::vector<CMatrix>& h, const CMatrix& a) {
    const int dim = static_cast<int>(a.rows());
    std::vector<CMatrix> out;
    for (std::size_t n = 0; n < h.size(); ++n) {
        out.push_back(n < 2 ? zeros(dim) : CMatrix(h[n] * a.adjoint() * inverse(h[n - 2])));
    }
    return out;
}

Residual hrec2_residual(const std::vector<CMatrix>& h, const CMatrix& a, int n) {
    if (n < 0 || n + 2 >= static_cast<int>(h.size())) {
        throw DomainError("hrec2_residual: need H(n), H(n+1), H(n+2)");
    }
    const CMatrix as = a.adjoint();
    const CMatrix h0i = inverse(h[n]);
    const CMatrix h1i = inverse(h[n + 1]);
    const CMatrix h2i = inverse(h[n + 2]);
    const CMatrix t1 = 2.0 * (n + 1) * h1i;
    const CMatrix t2 = 2.0 * (n + 2) * h2i * h[n + 1] * h0i;
    const CMatrix t3 = h2i * a * h[n + 2] * as * h0i;
    const CMatrix t4 = as * h0i * a;
    // t1 + t3 = t2 + t4
    return make_residual(t1 + t3, t2 + t4);
}

Residual m2_commutator_residual(const std::vector<CMatrix>& m2, const std::vector<CMatrix>& c, const CMatrix& a,
                                int n) {
    if (n < 1 || n >= static_cast<int>(m2.size()) || n >= static_cast<int>(c.size())) {
        throw DomainError("m2_commutator_residual: n out of range");
    }
    return make_residual(commutator(m2[n], a), 2.0 * ((n - 1.0) * c[n] - static_cast<double>(n) * c[n - 1]));
}

Residual dx_adjoint_check(const MVOPFamily& fam, const MatrixPoly& v, int n, int m) {
    std::vector<CMatrix> vstar;
    for (const CMatrix& c : v.coeffs()) vstar.push_back(c.adjoint());
    const MatrixPoly g = fam.P[m] * MatrixPoly(vstar) - fam.P[m].derivative();
    const CMatrix lhs = fam.inner(fam.P[n].derivative(), fam.P[m]);
    const CMatrix rhs = fam.inner(fam.P[n], g);
    return make_residual(lhs, rhs);
}

DiffOp derivative_operator(const MVOPFamily& fam, int k) {
    DiffOp op(fam.dim(), -k, 0, fam.n_max);
    for (int n = 0; n <= fam.n_max; ++n) {
        const auto all = all_projections(fam, n);
        for (int j = 1; j <= std::min(k, n); ++j) op.set(-j, n, all.at(-j));
    }
    return op;
}

Residual dx_commutator_check(const MVOPFamily& fam, const DiffOp& m, const DiffOp& dx, double x, int n) {
    const CMatrix lhs = apply(compose(m, dx), fam, x, n);
    const CMatrix rhs = apply(compose(dx, m), fam, x, n);
    return make_residual(lhs, rhs);
}

double pearson_residual(const ExponentialWeight& w, const MatrixPoly& v, std::span<const double> xs) {
    double worst = 0.0;
    for (double x : xs) {
        const CMatrix wd = weight_derivative(w, x);
        const CMatrix wv = eval_weight(w, x) * v(x);
        // Relative, not floored at 1: W itself is small away from the origin.
        const double scale = std::max({wd.norm(), wv.norm(), 1e-300});
        worst = std::max(worst, (wd + wv).norm() / scale);
    }
    return worst;
}

}  // namespace mvop
