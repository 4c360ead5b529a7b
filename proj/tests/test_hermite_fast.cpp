#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "mvop/hermite_fast.hpp"
#include "test_util.hpp"

using namespace mvop;
using testutil::kSqrtPi;
using testutil::rel;
using testutil::scalar;

namespace {

const std::vector<double> kA11{1.0, 1.0};
const std::vector<double> kA2{1.0, 0.7};
const std::vector<double> kA3{1.0, 0.7, 2.0};

const MVOPFamily& family(const std::vector<double>& alpha) {
    static std::map<std::vector<double>, MVOPFamily> cache;
    auto it = cache.find(alpha);
    if (it == cache.end()) it = cache.emplace(alpha, gram_schmidt_family(hermite_alpha_weight(alpha), 12)).first;
    return it->second;
}

std::vector<double> grid21() {
    std::vector<double> xs;
    for (int i = 0; i <= 20; ++i) xs.push_back(-3.0 + 0.3 * i);
    return xs;
}

double off_diagonal(const CMatrix& m) {
    CMatrix d = m;
    d.diagonal().setZero();
    return d.norm();
}

}  // namespace

TEST_CASE("H(0) closed form carries the Gaussian factor sqrt(pi)") {
    CHECK(rel(h0_closed_form_value({1.0}), scalar(kSqrtPi)) < 1e-15);
    CMatrix d = zeros(2);
    d(0, 0) = kSqrtPi;
    d(1, 1) = 3 * kSqrtPi;
    CHECK(rel(h0_closed_form_value(kA11), d) < 1e-15);

    // zeroth moment by an independent trapezoid rule
    for (const auto& al : {kA11, kA2, kA3, pearson_alpha_parameters(3)}) {
        const testutil::Trapezoid tz(hermite_alpha_weight(al));
        const CMatrix m0 = tz.moment(0);
        CHECK(rel(h0_closed_form_value(al), m0) < 1e-10);
        CHECK(off_diagonal(m0) < 1e-12);
        const QuadratureRule rule = build_quadrature(hermite_alpha_weight(al), 4);
        CHECK(rel(h0_closed_form(al, rule), m0) < 1e-10);
    }
}

TEST_CASE("norm recursion") {
    const auto h1 = norm_recursion(scalar(kSqrtPi), zeros(1), 10);
    for (int n = 0; n <= 10; ++n) {
        CHECK(rel(h1[n], scalar(kSqrtPi * testutil::factorial(n) / std::pow(2.0, n))) < 1e-13);
    }
    for (const auto& al : {kA11, kA2, kA3}) {
        const auto h = norm_recursion(h0_closed_form_value(al), hermite_alpha_matrix(al), 10);
        const MVOPFamily& fam = family(al);
        for (int n = 0; n <= 10; ++n) {
            CHECK(off_diagonal(h[n]) < 1e-12 * h[n].norm());
            CHECK(rel(h[n], fam.H[n]) < 1e-8);
        }
    }
}

TEST_CASE("recurrence from norms") {
    const auto h1 = norm_recursion(scalar(kSqrtPi), zeros(1), 10);
    auto [b, c] = recurrence_from_norms(h1, zeros(1));
    CHECK(c[0].norm() == 0.0);
    for (int n = 0; n <= 10; ++n) {
        CHECK(b[n].norm() < 1e-15);
        CHECK(std::abs(c[n](0, 0).real() - n / 2.0) < 1e-12);
    }
    auto [bt, ct] = recurrence_from_norms(h1, zeros(1), 1.0);
    for (const auto& bn : bt) CHECK(std::abs(bn(0, 0).real() + 0.5) < 1e-15);

    for (const auto& al : {kA2, kA3}) {
        const FastHermite fast = fast_hermite(al, 10);
        const MVOPFamily& fam = family(al);
        for (int n = 0; n <= 10; ++n) {
            if (n < 10) CHECK(scaled_residual(fast.B[n], fam.B[n]) < 1e-8);
            CHECK(scaled_residual(fast.C[n], fam.C[n]) < 1e-8);
        }
    }
}

TEST_CASE("xi boundary row and zero pattern") {
    for (const auto& al : {kA2, kA3}) {
        const int big_n = static_cast<int>(al.size());
        const FastHermite fast = fast_hermite(al, 10);
        for (int n = 0; n <= 10; ++n) {
            const XiTable& xi = fast.xi[n];
            for (int k = 1; k <= big_n; ++k) {
                const double expect = std::pow(2.0, -n) * al[big_n - 1] / (testutil::factorial(big_n - k) * al[k - 1]);
                CHECK(xi(big_n, k) == doctest::Approx(expect).epsilon(1e-13));
            }
            for (int j = 1; j <= big_n; ++j) {
                for (int k = 1; k <= big_n; ++k) {
                    if (n + j - k < 0) CHECK(xi(j, k) == 0.0);
                    else CHECK(xi(j, k) != 0.0);
                }
            }
        }
    }
}

TEST_CASE("xi at n = 0 and N = 1") {
    const FastHermite f3 = fast_hermite(kA3, 2);
    for (int j = 1; j <= 3; ++j) {
        for (int k = 1; k <= j; ++k) {
            CHECK(f3.xi[0](j, k) == doctest::Approx(kA3[j - 1] / (testutil::factorial(j - k) * kA3[k - 1])));
        }
    }
    const FastHermite f1 = fast_hermite({1.0}, 8);
    for (int n = 0; n <= 8; ++n) CHECK(f1.xi[n](1, 1) == doctest::Approx(std::pow(2.0, -n)));
}

TEST_CASE("xi recursion against a least-squares fit of the oracle") {
    for (const auto& al : {kA11, kA2, kA3}) {
        const FastHermite fast = fast_hermite(al, 8);
        for (int n = 1; n <= 8; ++n) {
            const XiTable fit = xi_from_oracle(family(al), al, n, grid21());
            const int big_n = static_cast<int>(al.size());
            for (int j = 1; j <= big_n; ++j) {
                for (int k = 1; k <= big_n; ++k) {
                    CHECK(std::abs(fast.xi[n](j, k) - fit(j, k)) < 1e-8 * std::max(1e-3, std::abs(fit(j, k))) + 1e-14);
                }
            }
        }
    }
}

TEST_CASE("assemble_P") {
    const FastHermite f3 = fast_hermite(kA3, 10);
    for (double x : testutil::grid()) CHECK(rel(f3.P(0, x), identity(3)) < 1e-14);

    const FastHermite f1 = fast_hermite({1.0}, 4);
    for (double x : testutil::grid()) CHECK(std::abs(f1.P(3, x)(0, 0) - (x * x * x - 1.5 * x)) < 1e-13);

    const FastHermite f11 = fast_hermite(kA11, 10);
    for (double x : testutil::grid()) CHECK(scaled_residual(f11.P(1, x), family(kA11).eval(1, x)) < 1e-9);

    // Q(x, 0) = L(x) e^{-x^2/2}
    for (double x : testutil::grid()) {
        CHECK(rel(assemble_Q(f3.xi[0], x), std::exp(-x * x / 2) * hermite_alpha_l(kA3, x)) < 1e-14);
    }
}

TEST_CASE("property: fast path agrees with Gram-Schmidt, N = 2, 3, n <= 10, 21 points") {
    for (const auto& al : {kA11, kA2, kA3, pearson_alpha_parameters(3)}) {
        const FastHermite fast = fast_hermite(al, 10);
        CHECK(fast_vs_oracle(fast, family(al), grid21()) < 1e-8);
    }
}

TEST_CASE("second-order operator D has eigenvalues nI + J") {
    const MVOPFamily s = gram_schmidt_family(hermite_alpha_weight({1.0}), 8);
    for (int n = 0; n <= 8; ++n) {
        for (double x : testutil::grid()) CHECK(second_order_D_check(s, {1.0}, x, n).scaled < 1e-9);
    }
    for (const auto& al : {kA2, kA3}) {
        for (int n = 0; n <= 8; ++n) {
            for (double x : testutil::grid()) CHECK(second_order_D_check(family(al), al, x, n).scaled < 1e-8);
        }
    }
}

TEST_CASE("Casimir: differential and difference sides agree") {
    const MVOPFamily s = gram_schmidt_family(hermite_alpha_weight({1.0}), 8);
    const DiffOp c1 = casimir_difference_operator(s, {1.0});
    for (int n = 1; n <= 6; ++n) {
        CHECK(std::abs(c1.coefficient(0, n)(0, 0) - 1.0) < 1e-9);
        CHECK(std::abs(c1.coefficient(-1, n)(0, 0)) < 1e-9);
        CHECK(c1.coefficient(1, n).norm() == 0.0);
    }
    for (const auto& al : {kA2, kA3}) {
        for (int n = 0; n <= 8; ++n) {
            for (double x : testutil::grid()) {
                CHECK(casimir_check(family(al), al, x, n).scaled < 1e-8);
                CHECK(casimir_gamma_commutator(family(al), al, x, n).scaled < 1e-8);
            }
        }
    }
}

TEST_CASE("conjugation by Phi and the Schrodinger equation") {
    const MVOPFamily s = gram_schmidt_family(hermite_alpha_weight({1.0}), 8);
    for (int n = 0; n <= 6; ++n) CHECK(conjugation_checks(s, {1.0}, testutil::grid(), n).schrodinger < 1e-9);
    for (const auto& al : {kA2, kA3}) {
        for (int n = 0; n <= 6; ++n) {
            const ConjugationReport r = conjugation_checks(family(al), al, testutil::grid(), n);
            CHECK(r.max() < 1e-8);
        }
    }
}

TEST_CASE("oscillator brackets") {
    for (const auto& al : {std::vector<double>{1.0}, kA2, kA3}) {
        const OscillatorReport r = oscillator_brackets(al, testutil::grid());
        CHECK(r.d_dd < 1e-10);
        CHECK(r.d_ddd < 1e-10);
        CHECK(r.dd_ddd < 1e-10);
    }
}

TEST_CASE("j_matrix and recursion failure") {
    const CMatrix j = j_matrix(3);
    CHECK(j(0, 0) == Complex(1.0));
    CHECK(j(2, 2) == Complex(3.0));
    CHECK(off_diagonal(j) == 0.0);
    CHECK_THROWS_AS(norm_recursion(scalar(-1.0), zeros(1), 3), NotPositiveDefinite);
}
