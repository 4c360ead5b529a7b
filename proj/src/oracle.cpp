#include "mvop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mvop {

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(order), 0.0);
    weights.assign(static_cast<std::size_t>(order), 0.0);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
}

namespace {

constexpr int kPanelOrder = 20;
constexpr int kStartPanels = 16;
constexpr int kMaxDoublings = 12;

double spectral_norm(const CMatrix& m) {
    if (m.isZero(0.0)) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double choose_cutoff(const ExponentialWeight& w, int n_max) {
    const double anorm = spectral_norm(w.a());
    const double lnorm = std::log(std::max(1.0, spectral_norm(w.left_factor())));
    const double k = 2.0 * n_max + 4.0;
    auto margin = [&](double r) {
        const double v = std::min(w.potential()(r), w.potential()(-r));
        return v - 2.0 * anorm * r - k * std::log(r) - 2.0 * lnorm;
    };
    double r = 1.0;
    while (margin(r) <= 160.0) {
        r += 0.25;
        if (r > 1e4) {
            throw QuadratureError("build_quadrature: weight does not decay fast enough");
        }
    }
    return r;
}

QuadratureRule composite_rule(double cutoff, int panels) {
    std::vector<double> gx, gw;
    gauss_legendre(kPanelOrder, gx, gw);
    QuadratureRule rule;
    rule.cutoff = cutoff;
    rule.panels = panels;
    rule.nodes.reserve(static_cast<std::size_t>(panels * kPanelOrder));
    rule.weights.reserve(rule.nodes.capacity());
    const double h = 2.0 * cutoff / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = -cutoff + p * h;
        const double mid = a + 0.5 * h;
        for (int i = 0; i < kPanelOrder; ++i) {
            rule.nodes.push_back(mid + 0.5 * h * gx[i]);
            rule.weights.push_back(0.5 * h * gw[i]);
        }
    }
    return rule;
}

std::pair<double, double> trace_moments(const QuadratureRule& rule, const ExponentialWeight& w, int k) {
    double m0 = 0.0;
    double mk = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double tr = eval_weight(w, rule.nodes[q]).trace().real();
        m0 += rule.weights[q] * tr;
        mk += rule.weights[q] * tr * std::pow(rule.nodes[q], k);
    }
    return {m0, mk};
}

}  // namespace

QuadratureRule build_quadrature(const ExponentialWeight& w, int n_max) {
    if (n_max < 0) {
        throw DomainError("build_quadrature: n_max must be non-negative");
    }
    const double cutoff = choose_cutoff(w, n_max);
    int panels = kStartPanels;
    QuadratureRule rule = composite_rule(cutoff, panels);
    auto [m0, mk] = trace_moments(rule, w, 2 * n_max);
    for (int d = 0; d < kMaxDoublings; ++d) {
        panels *= 2;
        QuadratureRule finer = composite_rule(cutoff, panels);
        const auto [f0, fk] = trace_moments(finer, w, 2 * n_max);
        const bool settled = std::abs(f0 - m0) <= 1e-13 * std::abs(f0) && std::abs(fk - mk) <= 1e-13 * std::abs(fk);
        // Keep the coarser rule when it already agrees with the refinement.
        if (settled) {
            return rule;
        }
        rule = std::move(finer);
        m0 = f0;
        mk = fk;
    }
    throw QuadratureError("build_quadrature: moments did not settle after " + std::to_string(kMaxDoublings) +
                          " doublings");
}

WeightedRule::WeightedRule(QuadratureRule r, const ExponentialWeight& w) : rule(std::move(r)) {
    weighted.reserve(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        weighted.push_back(rule.weights[q] * eval_weight(w, rule.nodes[q]));
    }
}

CMatrix WeightedRule::pair(std::span<const CMatrix> f, std::span<const CMatrix> g) const {
    const auto n = weighted.front().rows();
    CMatrix acc = CMatrix::Zero(n, n);
    for (std::size_t q = 0; q < weighted.size(); ++q) {
        acc.noalias() += f[q] * weighted[q] * g[q].adjoint();
    }
    return acc;
}

std::vector<CMatrix> WeightedRule::sample(const MatrixPoly& p) const {
    std::vector<CMatrix> out;
    out.reserve(rule.nodes.size());
    for (double x : rule.nodes) out.push_back(p(x));
    return out;
}

CMatrix inner_product(const MatrixPoly& f, const MatrixPoly& g, const ExponentialWeight& w,
                      const QuadratureRule& rule) {
    CMatrix acc = zeros(w.dim());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = rule.nodes[q];
        acc += rule.weights[q] * (f(x) * eval_weight(w, x) * g(x).adjoint());
    }
    return acc;
}

// ---------------------------------------------------------------------------

CMatrix MVOPFamily::eval(int n, double x) const {
    if (n < 0) return zeros(dim());
    if (n > n_max) {
        throw TabulationError("MVOPFamily::eval: degree " + std::to_string(n) + " beyond n_max " +
                              std::to_string(n_max));
    }
    return P[static_cast<std::size_t>(n)](x);
}

CMatrix MVOPFamily::eval_derivative(int n, double x, int order) const {
    if (n < 0) return zeros(dim());
    if (n > n_max) {
        throw TabulationError("MVOPFamily::eval_derivative: degree beyond n_max");
    }
    MatrixPoly d = P[static_cast<std::size_t>(n)];
    for (int k = 0; k < order; ++k) d = d.derivative();
    return d(x);
}

CMatrix MVOPFamily::inner(const MatrixPoly& f, const MatrixPoly& g) const {
    const auto fv = quad->sample(f);
    const auto gv = quad->sample(g);
    return quad->pair(fv, gv);
}

MVOPFamily gram_schmidt_family(const ExponentialWeight& w, int n_max) {
    if (n_max > kMaxTrustedDegree) {
        throw ConditioningError("gram_schmidt_family: n_max = " + std::to_string(n_max) +
                                " exceeds the trusted degree budget of " + std::to_string(kMaxTrustedDegree));
    }
    // Margin of four degrees for the derivative/Pearson integrals run on the same rule.
    auto quad = std::make_shared<const WeightedRule>(build_quadrature(w, std::max(n_max, 0) + 4), w);
    return gram_schmidt_family(w, n_max, std::move(quad));
}

MVOPFamily gram_schmidt_family(const ExponentialWeight& w, int n_max, std::shared_ptr<const WeightedRule> quad) {
    if (n_max < 0) {
        throw DomainError("gram_schmidt_family: n_max must be non-negative");
    }
    if (n_max > kMaxTrustedDegree) {
        throw ConditioningError("gram_schmidt_family: n_max = " + std::to_string(n_max) +
                                " exceeds the trusted degree budget of " + std::to_string(kMaxTrustedDegree));
    }
    const int dim = w.dim();
    MVOPFamily fam{w, n_max, {}, {}, {}, {}, {}, std::move(quad), {}};
    const auto& nodes = fam.quad->rule.nodes;
    const std::size_t nq = nodes.size();

    fam.P.reserve(static_cast<std::size_t>(n_max) + 1);
    fam.P.push_back(MatrixPoly::constant(identity(dim)));
    fam.node_values.emplace_back(nq, identity(dim));
    std::vector<CMatrix> hinv;

    auto finish_norm = [&](int n) {
        CMatrix h = fam.quad->pair(fam.node_values[n], fam.node_values[n]);
        h = 0.5 * (h + h.adjoint());
        try {
            (void)cholesky(h);
        } catch (const NotPositiveDefinite&) {
            throw ConditioningError("gram_schmidt_family: H(" + std::to_string(n) +
                                    ") lost positive definiteness; degree is beyond double-precision conditioning");
        }
        fam.H.push_back(h);
        hinv.push_back(inverse(h));
    };
    finish_norm(0);

    for (int n = 1; n <= n_max; ++n) {
        MatrixPoly p = fam.P.back().times_x();
        std::vector<CMatrix> pv(nq);
        for (std::size_t q = 0; q < nq; ++q) pv[q] = nodes[q] * fam.node_values.back()[q];
        for (int pass = 0; pass < 2; ++pass) {
            for (int m = 0; m < n; ++m) {
                const CMatrix c = fam.quad->pair(pv, fam.node_values[m]) * hinv[m];
                p = p - fam.P[m].left_mul(c);
                for (std::size_t q = 0; q < nq; ++q) pv[q] -= c * fam.node_values[m][q];
            }
        }
        // Monic by construction; pin the leading coefficient exactly.
        std::vector<CMatrix> coeffs = p.coeffs();
        coeffs.resize(static_cast<std::size_t>(n) + 1, zeros(dim));
        coeffs[n] = identity(dim);
        fam.P.emplace_back(std::move(coeffs));
        fam.node_values.push_back(std::move(pv));
        finish_norm(n);
    }

    fam.X.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        fam.X[n] = n == 0 ? zeros(dim) : fam.P[n].coeff(n - 1);
    }
    for (int n = 0; n < n_max; ++n) {
        fam.B.push_back(fam.X[n] - fam.X[n + 1]);
    }
    fam.C.push_back(zeros(dim));
    for (int n = 1; n <= n_max; ++n) {
        fam.C.push_back(fam.H[n] * hinv[n - 1]);
    }

    const double defect = orthogonality_defect(fam);
    if (!(defect < 1e-9)) {
        throw ConditioningError("gram_schmidt_family: orthogonality defect " + std::to_string(defect) +
                                " exceeds 1e-9");
    }
    return fam;
}

double orthogonality_defect(const MVOPFamily& fam) {
    double worst = 0.0;
    for (int n = 1; n <= fam.n_max; ++n) {
        const double hn = fam.H[n].norm();
        for (int m = 0; m < n; ++m) {
            const CMatrix g = fam.quad->pair(fam.node_values[n], fam.node_values[m]);
            worst = std::max(worst, g.norm() / hn);
        }
    }
    return worst;
}

double recurrence_residual(const MVOPFamily& fam, std::span<const double> xs) {
    double worst = 0.0;
    for (int n = 0; n < fam.n_max; ++n) {
        for (double x : xs) {
            const CMatrix lhs = x * fam.eval(n, x);
            CMatrix rhs = fam.eval(n + 1, x) + fam.B[n] * fam.eval(n, x);
            if (n > 0) rhs += fam.C[n] * fam.eval(n - 1, x);
            worst = std::max(worst, scaled_residual(lhs, rhs));
        }
    }
    return worst;
}

double christoffel_darboux_residual(const MVOPFamily& fam, double x, double y, int n) {
    if (n < 1 || n > fam.n_max) {
        throw DomainError("christoffel_darboux_residual: need 1 <= n <= n_max");
    }
    CMatrix kernel = zeros(fam.dim());
    for (int k = 0; k < n; ++k) {
        kernel += fam.eval(k, y).adjoint() * inverse(fam.H[k]) * fam.eval(k, x);
    }
    const CMatrix lhs = (x - y) * kernel;
    const CMatrix hinv = inverse(fam.H[n - 1]);
    const CMatrix rhs = fam.eval(n - 1, y).adjoint() * hinv * fam.eval(n, x) -
                        fam.eval(n, y).adjoint() * hinv * fam.eval(n - 1, x);
    return scaled_residual(lhs, rhs);
}

std::vector<double> default_grid() { return {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}; }

}  // namespace mvop
