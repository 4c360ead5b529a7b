#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvop/oracle.hpp"
#include "test_util.hpp"

using namespace mvop;
using testutil::kSqrtPi;
using testutil::rel;
using testutil::scalar;

namespace {

const ScalarPoly kGauss({0.0, 0.0, 1.0});

ExponentialWeight gauss() { return ExponentialWeight(kGauss, zeros(1)); }

}  // namespace

TEST_CASE("quadrature reproduces Gaussian moments") {
    const QuadratureRule rule = build_quadrature(gauss(), 10);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m20 = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double x = rule.nodes[q], w = rule.weights[q] * std::exp(-x * x);
        m0 += w;
        m1 += x * w;
        m2 += x * x * w;
        m20 += std::pow(x, 20) * w;
    }
    CHECK(std::abs(m0 - kSqrtPi) / kSqrtPi < 1e-13);
    CHECK(std::abs(m1) < 1e-15);
    CHECK(std::abs(m2 - kSqrtPi / 2) / kSqrtPi < 1e-13);
    // int x^{2k} e^{-x^2} = Gamma(k + 1/2)
    CHECK(std::abs(m20 - std::tgamma(10.5)) / std::tgamma(10.5) < 1e-12);
}

TEST_CASE("inner_product on scalar Hermite") {
    const ExponentialWeight w = gauss();
    const QuadratureRule rule = build_quadrature(w, 4);
    const MatrixPoly one = MatrixPoly::monomial(1, 0);
    const MatrixPoly x = MatrixPoly::monomial(1, 1);
    CHECK(rel(inner_product(one, one, w, rule), scalar(kSqrtPi)) < 1e-13);
    CHECK(inner_product(one, x, w, rule).norm() < 1e-15);
}

TEST_CASE("property: <F, G> = <G, F>*") {
    const ExponentialWeight w = hermite_alpha_weight({1.0, 0.7, 2.0});
    const QuadratureRule rule = build_quadrature(w, 6);
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const MatrixPoly f = testutil::random_poly(3, 3, seed);
        const MatrixPoly g = testutil::random_poly(3, 2, seed + 100);
        CHECK(rel(inner_product(f, g, w, rule), inner_product(g, f, w, rule).adjoint()) < 1e-13);
        CHECK(is_hermitian(inner_product(f, f, w, rule), 1e-13));
    }
}

TEST_CASE("quadrature agrees with an independent trapezoid rule") {
    const ExponentialWeight w = hermite_alpha_weight({1.0, 0.7});
    const testutil::Trapezoid tz(w);
    const QuadratureRule rule = build_quadrature(w, 8);
    for (unsigned seed = 3; seed <= 5; ++seed) {
        const MatrixPoly f = testutil::random_poly(2, 4, seed);
        const MatrixPoly g = testutil::random_poly(2, 4, seed + 50);
        CHECK(rel(inner_product(f, g, w, rule), tz.inner(f, g)) < 1e-12);
    }
}

TEST_CASE("scalar Hermite family") {
    const MVOPFamily fam = gram_schmidt_family(gauss(), 10);
    CHECK(rel(fam.H[0], scalar(kSqrtPi)) < 1e-12);
    for (int n = 0; n <= 10; ++n) {
        // H(n) = sqrt(pi) n! / 2^n for monic Hermite
        CHECK(rel(fam.H[n], scalar(kSqrtPi * testutil::factorial(n) / std::pow(2.0, n))) < 1e-11);
        if (n < 10) CHECK(std::abs(fam.B[n](0, 0)) < 1e-10);
        if (n >= 1) CHECK(rel(fam.C[n], scalar(n / 2.0)) < 1e-9);
        const auto coeffs = testutil::monic_hermite(n);
        for (int k = 0; k <= n; ++k) {
            CHECK(std::abs(fam.P[n].coeff(k)(0, 0) - coeffs[k]) < 1e-9 * std::max(1.0, std::abs(coeffs[k])));
        }
    }
    CHECK(fam.C[0].norm() == 0.0);
}

TEST_CASE("shifted Hermite: v = x^2 + x gives B = -1/2") {
    const MVOPFamily fam = gram_schmidt_family(ExponentialWeight(ScalarPoly({0.0, 1.0, 1.0}), zeros(1)), 8);
    for (int n = 0; n < 8; ++n) CHECK(std::abs(fam.B[n](0, 0) + 0.5) < 1e-10);
    for (int n = 1; n <= 8; ++n) CHECK(rel(fam.C[n], scalar(n / 2.0)) < 1e-9);
}

TEST_CASE("P(x, 0) = I for every weight") {
    for (const auto& w : {hermite_alpha_weight({1.0, 0.7}), freud_weight(3, 1.0, 1.0, 0.2)}) {
        const MVOPFamily fam = gram_schmidt_family(w, 2);
        for (double x : testutil::grid()) CHECK(rel(fam.eval(0, x), identity(w.dim())) == 0.0);
    }
}

TEST_CASE("property: family invariants for N <= 3, n_max = 12") {
    const std::vector<ExponentialWeight> ws{hermite_alpha_weight({1.0, 0.7}), hermite_alpha_weight({1.0, 0.7, 2.0}),
                                            hermite_alpha_weight(pearson_alpha_parameters(3)),
                                            freud_weight(2, 1.0, 1.0, 1.0)};
    for (const auto& w : ws) {
        const MVOPFamily fam = gram_schmidt_family(w, 12);
        CHECK(orthogonality_defect(fam) < 1e-9);
        CHECK(recurrence_residual(fam, default_grid()) < 1e-9);
        for (int n = 0; n <= 12; ++n) {
            CHECK(fam.P[n].degree() == n);
            CHECK(rel(fam.P[n].coeff(n), identity(w.dim())) == 0.0);
            CHECK(is_hermitian(fam.H[n], 1e-12));
            CHECK_NOTHROW(cholesky(0.5 * (fam.H[n] + fam.H[n].adjoint())));
            if (n >= 1) CHECK(rel(fam.C[n] * fam.H[n - 1], fam.H[n]) < 1e-12);
        }
        for (double x : {-1.0, 0.5}) {
            for (int n = 1; n <= 6; ++n) CHECK(christoffel_darboux_residual(fam, x, x + 0.7, n) < 1e-8);
        }
    }
}

TEST_CASE("Gram-Schmidt agrees with an independent Hankel moment solve") {
    for (const auto& w : {hermite_alpha_weight({1.0, 0.7}), freud_weight(2, 1.0, 1.0, 0.5)}) {
        const testutil::Trapezoid tz(w, 7.0, 14001);
        const MVOPFamily fam = gram_schmidt_family(w, 6);
        for (int n = 1; n <= 6; ++n) {
            const auto coeffs = testutil::hankel_monic(tz, n);
            for (int k = 0; k < n; ++k) CHECK(rel(fam.P[n].coeff(k), coeffs[k]) < 1e-8);
        }
    }
}

TEST_CASE("property: a left factor S conjugates the monic family") {
    const CMatrix a = hermite_alpha_matrix({1.0, 0.7});
    const CMatrix s = testutil::mat2(1.0, Complex(0.3, 0.2), -0.5, 2.0);
    const MVOPFamily plain = gram_schmidt_family(ExponentialWeight(kGauss, a), 6);
    const MVOPFamily left = gram_schmidt_family(ExponentialWeight(kGauss, a, s), 6);
    const CMatrix sinv = inverse(s);
    for (int n = 0; n <= 6; ++n) {
        for (double x : testutil::grid()) CHECK(rel(left.eval(n, x), s * plain.eval(n, x) * sinv) < 1e-10);
        CHECK(rel(left.H[n], s * plain.H[n] * s.adjoint()) < 1e-10);
    }
}

TEST_CASE("degree budget and tabulation bounds") {
    CHECK_THROWS_AS(gram_schmidt_family(gauss(), kMaxTrustedDegree + 1), ConditioningError);
    const MVOPFamily fam = gram_schmidt_family(gauss(), 4);
    CHECK_THROWS_AS(fam.eval(5, 0.0), TabulationError);
    CHECK(fam.eval(-1, 0.0).norm() == 0.0);
}
