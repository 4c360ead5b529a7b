#include "mvop/weights.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mvop {

ExponentialWeight::ExponentialWeight(ScalarPoly v, CMatrix a, std::optional<CMatrix> left)
    : v_(std::move(v)), a_(std::move(a)), left_(std::move(left)) {
    if (a_.rows() < 1 || a_.rows() != a_.cols()) {
        throw DomainError("ExponentialWeight: A must be a non-empty square matrix");
    }
    if (!all_finite(a_)) {
        throw DomainError("ExponentialWeight: A has non-finite entries");
    }
    if (v_.degree() < 2 || v_.degree() % 2 != 0 || !(v_.leading() > 0.0)) {
        throw DomainError("ExponentialWeight: potential must have even degree >= 2 and positive leading coefficient");
    }
    if (left_ && (left_->rows() != a_.rows() || left_->cols() != a_.cols())) {
        throw DomainError("ExponentialWeight: left factor has the wrong shape");
    }
}

CMatrix ExponentialWeight::left_factor() const { return left_ ? *left_ : identity(dim()); }

ExponentialWeight ExponentialWeight::with_potential(ScalarPoly v) const {
    ExponentialWeight w(std::move(v), a_, left_);
    w.family = family;
    w.alpha = alpha;
    return w;
}

CMatrix eval_weight(const ExponentialWeight& w, double x) {
    CMatrix e = mat_exp(w.a(), x);
    if (w.has_left()) {
        e = w.left_factor() * e;
    }
    return std::exp(-w.potential()(x)) * (e * e.adjoint());
}

NormalizedWeight normalize_weight(const ScalarPoly& v, const CMatrix& a, const CMatrix& t, const CMatrix& l) {
    const CMatrix k = cholesky(t);
    const CMatrix kinv = k.triangularView<Eigen::Lower>().solve(identity(static_cast<int>(k.rows())));
    ExponentialWeight reduced(v, kinv * a * k);
    return {std::move(reduced), l * k};
}

CMatrix eval_weight_atl(const ScalarPoly& v, const CMatrix& a, const CMatrix& t, const CMatrix& l, double x) {
    const CMatrix e = mat_exp(a, x);
    return std::exp(-v(x)) * (l * e * t * e.adjoint() * l.adjoint());
}

namespace {

void check_alpha(const std::vector<double>& alpha) {
    if (alpha.empty()) {
        throw DomainError("alpha must have at least one entry");
    }
    for (double a : alpha) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw DomainError("alpha entries must be positive, got " + std::to_string(a));
        }
    }
}

}  // namespace

CMatrix hermite_alpha_matrix(const std::vector<double>& alpha) {
    check_alpha(alpha);
    const int n = static_cast<int>(alpha.size());
    CMatrix a = zeros(n);
    for (int j = 1; j < n; ++j) {
        a(j, j - 1) = 2.0 * alpha[j] / alpha[j - 1];
    }
    return a;
}

CMatrix hermite_alpha_l(const std::vector<double>& alpha, double x) {
    check_alpha(alpha);
    const int n = static_cast<int>(alpha.size());
    CMatrix l = zeros(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k <= j; ++k) {
            l(j, k) = hermite_h(j - k, x) / factorial(j - k) * alpha[j] / alpha[k];
        }
    }
    return l;
}

CMatrix hermite_alpha_l0(const std::vector<double>& alpha) { return hermite_alpha_l(alpha, 0.0); }

ExponentialWeight hermite_alpha_weight(const std::vector<double>& alpha) {
    check_alpha(alpha);
    std::optional<CMatrix> left;
    const CMatrix l0 = hermite_alpha_l0(alpha);
    if (!l0.isIdentity(0.0)) {
        left = l0;
    }
    ExponentialWeight w(ScalarPoly({0.0, 0.0, 1.0}), hermite_alpha_matrix(alpha), left);
    w.family = "hermite-alpha";
    w.alpha = alpha;
    return w;
}

std::vector<double> pearson_alpha_parameters(int n) {
    if (n < 2) {
        throw DomainError("pearson_alpha_parameters: N must be at least 2");
    }
    std::vector<double> alpha(static_cast<std::size_t>(n));
    alpha[0] = 1.0;
    for (int j = 2; j <= n; ++j) {
        const double ratio = std::sqrt(static_cast<double>((j - 1) * (n - j + 1)));
        alpha[j - 1] = alpha[j - 2] * ratio / 2.0;
    }
    return alpha;
}

std::vector<double> freud_mu(int n, double alpha, double beta) {
    std::vector<double> mu(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        mu[i - 1] = (i - 1) * (n - i + 1) * (2.0 * n * alpha + 2.0 * alpha * i + 3.0 * beta + alpha) / 6.0;
    }
    return mu;
}

ExponentialWeight freud_weight(int n, double alpha, double beta, double t, FreudConvention convention) {
    if (n < 1) {
        throw DomainError("freud_weight: N must be positive");
    }
    const std::vector<double> mu = freud_mu(n, alpha, beta);
    CMatrix a = zeros(n);
    for (int i = 1; i < n; ++i) {
        if (mu[i] < 0.0) {
            throw DomainError("freud_weight: mu_" + std::to_string(i + 1) + " is negative");
        }
        a(i, i - 1) = std::sqrt(mu[i]);
    }
    const double t_coeff = convention == FreudConvention::WeightFactorization ? -t : t;
    ExponentialWeight w(ScalarPoly({0.0, 0.0, t_coeff, 0.0, 1.0}), a);
    w.family = "freud";
    return w;
}

CMatrix weight_log_derivative(const ExponentialWeight& w, double x) {
    const CMatrix& a = w.a();
    const CMatrix ex = mat_exp(a, x);
    const CMatrix exinv = mat_exp(a, -x);
    const CMatrix l0 = w.left_factor();
    const CMatrix l0inv = inverse(l0);
    const CMatrix e = l0 * ex;
    const CMatrix einv = exinv * l0inv;
    const CMatrix exs = ex.adjoint();
    const CMatrix exsinv = exinv.adjoint();
    const int n = w.dim();
    return -w.potential().derivative()(x) * identity(n) + e * a * einv + e * exs * a.adjoint() * exsinv * einv;
}

CMatrix weight_derivative(const ExponentialWeight& w, double x) {
    return weight_log_derivative(w, x) * eval_weight(w, x);
}

MatrixPoly pearson_V_hermite(const std::vector<double>& alpha) {
    const int n = static_cast<int>(alpha.size());
    const CMatrix a = hermite_alpha_matrix(alpha);
    const CMatrix as = a.adjoint();
    const CMatrix l0s = hermite_alpha_l0(alpha).adjoint();
    CMatrix j = zeros(n);
    for (int i = 0; i < n; ++i) j(i, i) = i + 1.0;
    const CMatrix minus_v0 = inverse(l0s) * a * l0s + as;
    const CMatrix minus_v1 = 2.0 * (j + 0.5 * as * as - (n + 3.0) / 2.0 * identity(n));
    const CMatrix minus_v2 = -as;
    return MatrixPoly({-minus_v0, -minus_v1, -minus_v2});
}

MatrixPoly pearson_V_numeric(const ExponentialWeight& w, int degree) {
    if (degree < 0) {
        throw DomainError("pearson_V_numeric: degree must be non-negative");
    }
    const int n = w.dim();
    auto v_at = [&](double x) -> CMatrix {
        // -W^{-1} W' = -W^{-1} (W' W^{-1}) W
        const CMatrix wx = eval_weight(w, x);
        return -wx.partialPivLu().solve(weight_log_derivative(w, x) * wx);
    };
    const int m = degree + 1;
    std::vector<double> nodes(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        nodes[i] = m == 1 ? 0.0 : 2.0 * std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * m));
    }
    Eigen::MatrixXd vander(m, m);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) vander(i, k) = std::pow(nodes[i], k);
    }
    const auto lu = vander.partialPivLu();
    std::vector<CMatrix> samples;
    samples.reserve(nodes.size());
    for (double x : nodes) samples.push_back(v_at(x));

    std::vector<CMatrix> coeffs(static_cast<std::size_t>(m), zeros(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            Eigen::VectorXd re(m), im(m);
            for (int i = 0; i < m; ++i) {
                re(i) = samples[i](r, c).real();
                im(i) = samples[i](r, c).imag();
            }
            const Eigen::VectorXd cr = lu.solve(re);
            const Eigen::VectorXd ci = lu.solve(im);
            for (int k = 0; k < m; ++k) coeffs[k](r, c) = Complex(cr(k), ci(k));
        }
    }
    MatrixPoly fit(std::move(coeffs));

    const int checks = std::max(2, 2 * degree);
    for (int i = 0; i < checks; ++i) {
        const double x = -2.5 + 5.0 * (i + 0.5) / checks;
        const double res = scaled_residual(fit(x), v_at(x));
        if (!(res < 1e-8)) {
            throw VerificationError("pearson_V_numeric: -W^{-1}W' is not a polynomial of degree " +
                                    std::to_string(degree) + " (residual " + std::to_string(res) +
                                    " at x = " + std::to_string(x) + ")");
        }
    }
    return fit;
}

}  // namespace mvop
