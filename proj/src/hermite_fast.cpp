#include "mvop/hermite_fast.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "mvop/ladder.hpp"

namespace mvop {

CMatrix j_matrix(int dim) {
    CMatrix j = zeros(dim);
    for (int i = 0; i < dim; ++i) j(i, i) = i + 1.0;
    return j;
}

CMatrix h0_closed_form_value(const std::vector<double>& alpha) {
    const int n = static_cast<int>(alpha.size());
    for (double a : alpha) {
        if (!(a > 0.0)) throw DomainError("h0_closed_form: alpha entries must be positive");
    }
    CMatrix h = zeros(n);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (int j = 1; j <= n; ++j) {
        double s = 0.0;
        for (int l = 1; l <= j; ++l) {
            s += std::pow(2.0, -l) / (factorial(j - l) * alpha[l - 1] * alpha[l - 1]);
        }
        h(j - 1, j - 1) = sqrt_pi * std::pow(2.0, j) * alpha[j - 1] * alpha[j - 1] * s;
    }
    return h;
}

CMatrix h0_closed_form(const std::vector<double>& alpha, const QuadratureRule& rule) {
    const CMatrix closed = h0_closed_form_value(alpha);
    const ExponentialWeight w = hermite_alpha_weight(alpha);
    const int n = w.dim();
    const MatrixPoly one = MatrixPoly::constant(identity(n));
    const CMatrix quad = inner_product(one, one, w, rule);
    const double rel = (closed - quad).norm() / quad.norm();
    if (!(rel <= 1e-10)) {
        throw VerificationError("h0_closed_form: closed form disagrees with quadrature (relative error " +
                                std::to_string(rel) + ")");
    }
    return closed;
}

std::vector<CMatrix> norm_recursion(const CMatrix& h0, const CMatrix& a, int n_max, double /*t*/) {
    if (n_max < 0) throw DomainError("norm_recursion: n_max must be non-negative");
    auto checked = [](CMatrix h, int n) {
        h = 0.5 * (h + h.adjoint());
        try {
            (void)cholesky(h);
        } catch (const NotPositiveDefinite&) {
            throw NotPositiveDefinite("norm_recursion: H(" + std::to_string(n) + ") is not positive definite");
        }
        return h;
    };
    const CMatrix as = a.adjoint();
    std::vector<CMatrix> h{checked(h0, 0)};
    CMatrix prev_inv;
    for (int n = 0; n < n_max; ++n) {
        const CMatrix& hn = h.back();
        const CMatrix hinv = inverse(hn);
        CMatrix next = 0.5 * hn - 0.25 * hn * as * hinv * a * hn + 0.25 * a * hn * as;
        if (n > 0) next += hn * prev_inv * hn;
        prev_inv = hinv;
        h.push_back(checked(next, n + 1));
    }
    return h;
}

std::pair<std::vector<CMatrix>, std::vector<CMatrix>> recurrence_from_norms(const std::vector<CMatrix>& h,
                                                                           const CMatrix& a, double t) {
    const int dim = static_cast<int>(a.rows());
    std::vector<CMatrix> b, c;
    CMatrix prev_inv;
    for (std::size_t n = 0; n < h.size(); ++n) {
        const CMatrix hinv = inverse(h[n]);
        b.push_back(0.5 * (a + h[n] * a.adjoint() * hinv - t * identity(dim)));
        c.push_back(n == 0 ? zeros(dim) : CMatrix(h[n] * prev_inv));
        prev_inv = hinv;
    }
    return {std::move(b), std::move(c)};
}

XiTable xi_table(const std::vector<double>& alpha, const std::vector<CMatrix>& h, int n) {
    const int N = static_cast<int>(alpha.size());
    XiTable xi{n, N, std::vector<double>(static_cast<std::size_t>(N * N), 0.0)};
    auto al = [&](int j) { return alpha[j - 1]; };
    if (n == 0) {
        for (int j = 1; j <= N; ++j) {
            for (int k = 1; k <= j; ++k) xi.at(j, k) = al(j) / (factorial(j - k) * al(k));
        }
        return xi;
    }
    if (n >= static_cast<int>(h.size())) {
        throw TabulationError("xi_table: norms tabulated only up to n = " + std::to_string(h.size() - 1));
    }
    auto hn = [&](int j) { return h[n](j - 1, j - 1).real(); };
    auto hp = [&](int j) { return h[n - 1](j - 1, j - 1).real(); };

    for (int k = 1; k <= N; ++k) {
        xi.at(N, k) = std::pow(2.0, -n) / factorial(N - k) * al(N) / al(k);
    }
    for (int j = N; j >= 2; --j) {
        const double cj = hn(j) / hp(j);
        const double ratio = j < N ? hn(j) / hn(j + 1) : 0.0;
        for (int k = 1; k <= N; ++k) {
            if (n + (j - 1) - k < 0) {
                xi.at(j - 1, k) = 0.0;
                continue;
            }
            double diag = al(j - 1) / al(j) * (n + j - k) - 2.0 * al(j - 1) / al(j) * cj;
            double value = 0.0;
            if (j < N) {
                diag += 2.0 * al(j - 1) * al(j + 1) * al(j + 1) / std::pow(al(j), 3) * ratio;
                value -= 2.0 * (n + j - k + 1) * al(j - 1) * al(j + 1) / (al(j) * al(j)) * ratio * xi(j + 1, k);
            }
            value += diag * xi(j, k);
            xi.at(j - 1, k) = value;
        }
    }
    return xi;
}

namespace {

CMatrix hermite_part(const XiTable& xi, double x) {
    CMatrix q = zeros(xi.N);
    for (int j = 1; j <= xi.N; ++j) {
        for (int k = 1; k <= xi.N; ++k) {
            const int m = xi.n + j - k;
            if (m >= 0) q(j - 1, k - 1) = xi(j, k) * hermite_h(m, x);
        }
    }
    return q;
}

}  // namespace

CMatrix assemble_Q(const XiTable& xi, double x) { return std::exp(-0.5 * x * x) * hermite_part(xi, x); }

CMatrix assemble_P(const XiTable& xi, const std::vector<double>& alpha, double x) {
    return hermite_part(xi, x) * unit_lower_inverse(hermite_alpha_l(alpha, x));
}

FastHermite fast_hermite(const std::vector<double>& alpha, int n_max) {
    FastHermite f;
    f.alpha = alpha;
    const CMatrix a = hermite_alpha_matrix(alpha);
    f.H = norm_recursion(h0_closed_form_value(alpha), a, n_max);
    auto [b, c] = recurrence_from_norms(f.H, a);
    f.B = std::move(b);
    f.C = std::move(c);
    for (int n = 0; n <= n_max; ++n) f.xi.push_back(xi_table(alpha, f.H, n));
    return f;
}

double fast_vs_oracle(const FastHermite& fast, const MVOPFamily& fam, std::span<const double> xs) {
    const int top = std::min(static_cast<int>(fast.xi.size()) - 1, fam.n_max);
    double worst = 0.0;
    for (int n = 0; n <= top; ++n) {
        for (double x : xs) worst = std::max(worst, scaled_residual(fast.P(n, x), fam.eval(n, x)));
    }
    return worst;
}

XiTable xi_from_oracle(const MVOPFamily& fam, const std::vector<double>& alpha, int n, std::span<const double> xs) {
    const int dim = static_cast<int>(alpha.size());
    XiTable out{n, dim, std::vector<double>(static_cast<std::size_t>(dim * dim), 0.0)};
    std::vector<double> num(out.values.size(), 0.0), den(out.values.size(), 0.0);
    for (double x : xs) {
        const CMatrix pl = fam.eval(n, x) * hermite_alpha_l(alpha, x);
        for (int j = 1; j <= dim; ++j) {
            for (int k = 1; k <= dim; ++k) {
                const int m = n + j - k;
                if (m < 0) continue;
                const double h = hermite_h(m, x);
                const auto idx = static_cast<std::size_t>((j - 1) * dim + (k - 1));
                num[idx] += pl(j - 1, k - 1).real() * h;
                den[idx] += h * h;
            }
        }
    }
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (den[i] > 0.0) out.values[i] = num[i] / den[i];
    }
    return out;
}

Residual second_order_D_check(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n) {
    const int dim = fam.dim();
    const CMatrix a = hermite_alpha_matrix(alpha);
    const CMatrix j = j_matrix(dim);
    const CMatrix p = fam.eval(n, x);
    const CMatrix lhs = -0.5 * fam.eval_derivative(n, x, 2) +
                        fam.eval_derivative(n, x, 1) * (x * identity(dim) - a) + p * j;
    const CMatrix rhs = (n * identity(dim) + j) * p;
    return make_residual(lhs, rhs);
}

DiffOp casimir_difference_operator(const MVOPFamily& fam, const std::vector<double>& alpha) {
    const int dim = fam.dim();
    const CMatrix a = hermite_alpha_matrix(alpha);
    const CMatrix j = j_matrix(dim);
    const CMatrix id = identity(dim);
    const int top = fam.n_max - 1;
    DiffOp op(dim, -1, 1, top);
    for (int n = 0; n <= top; ++n) {
        op.set(1, n, -a);
        op.set(0, n, n * id + j - 2.0 * fam.C[n] - a * fam.B[n] + 0.5 * a * a);
        if (n >= 1) op.set(-1, n, fam.C[n] * a - 2.0 * fam.C[n] * fam.B[n - 1]);
    }
    return op;
}

Residual casimir_check(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n) {
    const int dim = fam.dim();
    const CMatrix a = hermite_alpha_matrix(alpha);
    const CMatrix casimir = j_matrix(dim) - x * a + 0.5 * a * a;
    const CMatrix lhs = fam.eval(n, x) * casimir;
    const CMatrix rhs = apply(casimir_difference_operator(fam, alpha), fam, x, n);
    return make_residual(lhs, rhs);
}

Residual casimir_gamma_commutator(const MVOPFamily& fam, const std::vector<double>& alpha, double x, int n) {
    const int dim = fam.dim();
    const DiffOp c = casimir_difference_operator(fam, alpha);
    DiffOp gamma(dim, 0, 0, fam.n_max);
    for (int m = 0; m <= fam.n_max; ++m) gamma.set(0, m, m * identity(dim) + j_matrix(dim));
    const CMatrix lhs = apply(compose(c, gamma), fam, x, n);
    const CMatrix rhs = apply(compose(gamma, c), fam, x, n);
    return make_residual(lhs, rhs);
}

double ConjugationReport::max() const { return std::max({dq, cq, d2q, schrodinger, casimir_ode}); }

ConjugationReport conjugation_checks(const MVOPFamily& fam, const std::vector<double>& alpha,
                                     std::span<const double> xs, int n) {
    const int dim = fam.dim();
    const CMatrix a = hermite_alpha_matrix(alpha);
    const CMatrix j = j_matrix(dim);
    const CMatrix id = identity(dim);
    const CMatrix h = fam.H[n];
    const CMatrix hah = h * a.adjoint() * inverse(h);
    const CMatrix c = n >= 1 ? CMatrix(fam.C[n]) : zeros(dim);

    // L and its first two derivatives from H_m' = 2m H_{m-1}.
    auto l_deriv = [&](double x, int order) {
        CMatrix l = zeros(dim);
        for (int r = 0; r < dim; ++r) {
            for (int s = 0; s <= r; ++s) {
                const int m = r - s;
                double d = hermite_h(m, x);
                if (order == 1) d = 2.0 * m * hermite_h(m - 1, x);
                if (order == 2) d = 4.0 * m * (m - 1) * hermite_h(m - 2, x);
                l(r, s) = d / factorial(m) * alpha[r] / alpha[s];
            }
        }
        return l;
    };

    ConjugationReport rep;
    for (double x : xs) {
        const double g = std::exp(-0.5 * x * x);
        const CMatrix l0 = l_deriv(x, 0);
        const CMatrix l1 = l_deriv(x, 1);
        const CMatrix l2 = l_deriv(x, 2);
        const CMatrix phi = g * l0;
        const CMatrix phi1 = g * (l1 - x * l0);
        const CMatrix phi2 = g * (l2 - 2.0 * x * l1 + (x * x - 1.0) * l0);
        const CMatrix p = fam.eval(n, x);
        const CMatrix p1 = fam.eval_derivative(n, x, 1);
        const CMatrix p2 = fam.eval_derivative(n, x, 2);
        const CMatrix q = p * phi;
        const CMatrix q1 = p1 * phi + p * phi1;
        const CMatrix q2 = p2 * phi + 2.0 * p1 * phi1 + p * phi2;

        rep.dq = std::max(rep.dq, scaled_residual(q1 + x * q, (p1 + p * a) * phi));
        rep.cq = std::max(rep.cq, scaled_residual(q * j, p * (j - x * a + 0.5 * a * a) * phi));
        const CMatrix dp = -0.5 * p2 + p1 * (x * id - a) + p * j;
        rep.d2q = std::max(rep.d2q, scaled_residual(0.5 * (-q2 + x * x * q - q) + q * j, dp * phi));

        CMatrix eig = zeros(dim);
        for (int r = 0; r < dim; ++r) {
            for (int s = 0; s < dim; ++s) eig(r, s) = (n + r - s + 0.5) * q(r, s);
        }
        const CMatrix kinetic = -0.5 * q2 + 0.5 * x * x * q;
        rep.schrodinger = std::max(rep.schrodinger, scaled_residual(kinetic, eig));

        const CMatrix rhs = (n * id + j - 0.5 * x * a - 0.5 * hah * (x * id - a) - 2.0 * c) * q + 0.5 * (a - hah) * q1;
        rep.casimir_ode = std::max(rep.casimir_ode, scaled_residual(q * j, rhs));
    }
    return rep;
}

double OscillatorReport::max() const { return std::max({d_dd, d_ddd, dd_ddd}); }

OscillatorReport oscillator_brackets(const std::vector<double>& alpha, std::span<const double> xs) {
    using Op = std::function<MatrixPoly(const MatrixPoly&)>;
    const CMatrix a = hermite_alpha_matrix(alpha);
    const int dim = static_cast<int>(a.rows());
    const CMatrix j = j_matrix(dim);
    const ScalarPoly v({0.0, 0.0, 1.0});
    const Op d2 = [&](const MatrixPoly& f) {
        const MatrixPoly f1 = f.derivative();
        return f1.derivative() * Complex(-0.5) + f1.times_x() - f1.right_mul(a) + f.right_mul(j);
    };
    const Op cd = [&](const MatrixPoly& f) { return apply_D_poly(f, a); };
    const Op cdd = [&](const MatrixPoly& f) { return apply_D_dagger_poly(f, a, v); };
    auto bracket = [](Op x, Op y) -> Op {
        return [x, y](const MatrixPoly& f) { return y(x(f)) - x(y(f)); };
    };
    const Op b1 = bracket(d2, cd);
    const Op b2 = bracket(d2, cdd);
    const Op b3 = bracket(cd, cdd);

    OscillatorReport rep;
    for (const MatrixPoly& f : sample_polynomials(dim)) {
        const MatrixPoly r1 = b1(f), e1 = cd(f);
        const MatrixPoly r2 = b2(f), e2 = cdd(f) * Complex(-1.0);
        const MatrixPoly r3 = b3(f);
        for (double x : xs) {
            rep.d_dd = std::max(rep.d_dd, scaled_residual(r1(x), e1(x)));
            rep.d_ddd = std::max(rep.d_ddd, scaled_residual(r2(x), e2(x)));
            rep.dd_ddd = std::max(rep.dd_ddd, scaled_residual(r3(x), -2.0 * f(x)));
        }
    }
    return rep;
}

}  // namespace mvop
