#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvop/ladder.hpp"
#include "test_util.hpp"

using namespace mvop;
using testutil::rel;
using testutil::scalar;

namespace {

const ScalarPoly kGauss({0.0, 0.0, 1.0});

const MVOPFamily& hermite1() {
    static const MVOPFamily fam = gram_schmidt_family(ExponentialWeight(kGauss, zeros(1)), 12);
    return fam;
}

const MVOPFamily& hermite11() {
    static const MVOPFamily fam = gram_schmidt_family(hermite_alpha_weight({1.0, 1.0}), 12);
    return fam;
}

const MVOPFamily& freud2() {
    static const MVOPFamily fam = gram_schmidt_family(freud_weight(2, 1.0, 1.0, 0.0), 16);
    return fam;
}

// C(n) of the scalar quartic weight e^{-x^4 - t x^2}, n <= 8, from the test oracle.
std::vector<double> quartic_c(double t) {
    const ExponentialWeight w(ScalarPoly({0.0, 0.0, t, 0.0, 1.0}), zeros(1));
    const testutil::Trapezoid tz(w, 5.0, 8001);
    std::vector<double> b, c;
    testutil::stieltjes(tz, 8, b, c);
    return c;
}

double max_ladder(const MVOPFamily& fam, int n_hi) {
    const LadderPair lp = ladder_pair(fam);
    return ladder_max_residual(fam, lp, default_grid(), n_hi);
}

}  // namespace

TEST_CASE("lowering operator for Hermite-type potentials is A + 2C(n) delta^{-1}") {
    const LadderPair lp = ladder_pair(hermite11());
    CHECK(lp.M.lo() == -1);
    CHECK(lp.M.hi() == 0);
    for (int n = 0; n <= lp.M.n_max(); ++n) {
        CHECK(rel(lp.M.coefficient(0, n), lp.A) < 1e-12);
        CHECK(rel(lp.M.coefficient(-1, n), 2.0 * hermite11().C[n]) < 1e-10);
    }

    const LadderPair s = ladder_pair(hermite1());
    for (int n = 1; n <= s.M.n_max(); ++n) CHECK(std::abs(s.M.coefficient(-1, n)(0, 0) - double(n)) < 1e-9);
    CHECK(s.M.coefficient(0, 3).norm() == 0.0);
}

TEST_CASE("effective A for a left factor") {
    const std::vector<double> al{1.0, 0.7, 2.0};
    const ExponentialWeight w = hermite_alpha_weight(al);
    const CMatrix l0 = hermite_alpha_l0(al);
    CHECK(rel(effective_a(w), l0 * hermite_alpha_matrix(al) * inverse(l0)) < 1e-14);
    CHECK(rel(effective_a(ExponentialWeight(kGauss, w.a())), w.a()) == 0.0);
}

TEST_CASE("quartic lowering operator: A_{-3}(n) = 4 C(n) C(n-1) C(n-2)") {
    const MVOPFamily& fam = freud2();
    const LadderPair lp = ladder_pair(fam);
    CHECK(lp.M.lo() == -3);
    for (int n = 0; n <= lp.M.n_max(); ++n) {
        const CMatrix expect = n >= 2 ? CMatrix(4.0 * fam.C[n] * fam.C[n - 1] * fam.C[n - 2]) : zeros(2);
        CHECK(lp.M.coefficient(-3, n).norm() == doctest::Approx(expect.norm()).epsilon(1e-9));
        CHECK((lp.M.coefficient(-3, n) - expect).norm() < 1e-9 * std::max(1.0, expect.norm()));
    }
}

TEST_CASE("apply_D") {
    const MVOPFamily& fam = hermite11();
    const CMatrix a = effective_a(fam.weight);
    CHECK(rel(apply_D(fam, 0.7, 0, a), a) == 0.0);
    for (double x : testutil::grid()) CHECK(std::abs(apply_D(hermite1(), x, 2, zeros(1))(0, 0) - 2 * x) < 1e-12);

    const double h = 1e-4;
    double prev = 0.0;
    for (double step : {h, h / 2}) {
        const double x = 0.6;
        const CMatrix fd = (fam.eval(4, x + step) - fam.eval(4, x - step)) / (2 * step) + fam.eval(4, x) * a;
        const double err = (fd - apply_D(fam, x, 4, a)).norm();
        if (prev > 0.0) CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("apply_D_dagger") {
    const MVOPFamily& fam = hermite11();
    const CMatrix a = effective_a(fam.weight);
    const ScalarPoly& v = fam.weight.potential();
    const double x = -1.3;
    CHECK(rel(apply_D_dagger(fam, x, 0, a, v), v.derivative()(x) * identity(2) - a) < 1e-15);

    for (int n = 0; n <= 6; ++n) {
        const MatrixPoly up = apply_D_dagger_poly(hermite1().P[n], zeros(1), kGauss);
        CHECK(up.degree() == n + 1);
        CHECK(std::abs(up.coeff(n + 1)(0, 0) - 2.0) < 1e-12);
    }
}

TEST_CASE("property: <P_n.D, P_m> = <P_n, P_m.D^dagger>") {
    for (const MVOPFamily* fam : {&hermite11(), &freud2()}) {
        const CMatrix a = effective_a(fam->weight);
        const ScalarPoly& v = fam->weight.potential();
        for (int n = 0; n <= 8; ++n) {
            for (int m = 0; m <= 8; ++m) {
                const CMatrix lhs = fam->inner(apply_D_poly(fam->P[n], a), fam->P[m]);
                const CMatrix rhs = fam->inner(fam->P[n], apply_D_dagger_poly(fam->P[m], a, v));
                const double scale = std::max({1.0, lhs.norm(), fam->H[std::max(n, m)].norm()});
                CHECK((lhs - rhs).norm() / scale < 1e-9);
            }
        }
    }
}

TEST_CASE("ladder relations") {
    CHECK(max_ladder(hermite1(), 8) < 1e-9);
    CHECK(max_ladder(hermite11(), 8) < 1e-8);
    CHECK(max_ladder(freud2(), 6) < 1e-7);
    const MVOPFamily freud1 = gram_schmidt_family(freud_weight(1, 1.0, 1.0, 0.5), 16);
    CHECK(max_ladder(freud1, 8) < 1e-8);
}

TEST_CASE("property: M has nonpositive shifts, M^dagger nonnegative") {
    for (const MVOPFamily* fam : {&hermite1(), &hermite11(), &freud2()}) {
        const LadderPair lp = ladder_pair(*fam);
        CHECK(lp.M.hi() == 0);
        CHECK(lp.Mdag.lo() == 0);
        CHECK(lp.Mdag.hi() == -lp.M.lo());
    }
}

TEST_CASE("property: Hermite raising operator 2 delta + 2B(n) - A + t I") {
    for (double t : {0.0, 0.3, -0.8}) {
        const ExponentialWeight w = hermite_alpha_weight({1.0, 0.7}).with_potential(ScalarPoly({0.0, t, 1.0}));
        const MVOPFamily fam = gram_schmidt_family(w, 10);
        const LadderPair lp = ladder_pair(fam);
        const DiffOp closed = hermite_raising_closed(fam, lp.A, t);
        CHECK(closed.max_difference(lp.Mdag) < 1e-10);
        for (int n = 0; n < fam.n_max; ++n) {
            // B(n) = (A + H A* H^{-1} - t) / 2, so B is not zero once t != 0
            if (t != 0.0) CHECK(std::abs(fam.B[n].trace().real() / 2.0 + t / 2.0) < 1e-8);
        }
    }
}

TEST_CASE("property: uniqueness, M from projections equals M from v'(L)") {
    for (const MVOPFamily* fam : {&hermite11(), &freud2()}) {
        const LadderPair lp = ladder_pair(*fam);
        const int k = fam->weight.potential().degree();
        const DiffOp proj = lowering_by_projection(*fam, lp.A, k);
        double scale = 1.0;
        for (int j = lp.M.lo(); j <= 0; ++j) {
            for (int n = 0; n <= std::min(proj.n_max(), lp.M.n_max()); ++n) scale = std::max(scale, lp.M.coefficient(j, n).norm());
        }
        CHECK(proj.max_difference(lp.M) / scale < 1e-8);
    }
}

TEST_CASE("string relations") {
    const auto scalar_res = string_residuals(hermite1(), zeros(1), kGauss);
    CHECK(!scalar_res.empty());
    for (const auto& r : scalar_res) {
        CHECK(r.first_scaled < 1e-9);
        CHECK(r.second_scaled < 1e-9);
    }
    // with A = 0 the first relation reduces to 2(C(n) - C(n+1)) + 1 = 0
    for (int n = 0; n < 10; ++n) CHECK(std::abs(hermite1().C[n + 1](0, 0).real() - hermite1().C[n](0, 0).real() - 0.5) < 1e-9);

    for (const MVOPFamily* fam : {&hermite11(), &freud2()}) {
        const CMatrix a = effective_a(fam->weight);
        for (const auto& r : string_residuals(*fam, a, fam->weight.potential())) {
            CHECK(r.first_scaled < 1e-8);
            CHECK(r.second_scaled < 1e-8);
        }
        CHECK(zero_coefficient_residual(*fam, a, fam->weight.potential()) < 1e-8);
    }
    CHECK(telescoped_sum_residual(hermite11(), effective_a(hermite11().weight)) < 1e-8);
}

TEST_CASE("discrete Painleve I at t = 0") {
    const std::vector<double> c = quartic_c(0.0);
    CHECK(c[0] == 0.0);
    for (int n = 1; n <= 6; ++n) {
        CHECK(dpainleve1_residual(c, 0.0, n) < 1e-6);
        CHECK(dpainleve1_corrected_residual(c, 0.0, n) == doctest::Approx(dpainleve1_residual(c, 0.0, n)));
    }
    // the library family agrees with the Stieltjes oracle
    const MVOPFamily fam = gram_schmidt_family(freud_weight(1, 1.0, 1.0, 0.0), 16);
    for (int n = 1; n <= 7; ++n) CHECK(std::abs(fam.C[n](0, 0).real() - c[n]) < 1e-10);
}

TEST_CASE("discrete Painleve I at t = 1, corrected form") {
    const std::vector<double> c = quartic_c(1.0);
    for (int n = 1; n <= 6; ++n) CHECK(dpainleve1_corrected_residual(c, 1.0, n) < 1e-6);
}

// The form n = 4C(n)(C(n-1)+C(n)+C(n+1)+2t) multiplies 2t by 4. Expanding
// A_{-1}(n) = 0 for v = x^4 + t x^2 gives 2t outside the factor 4, so the
// printed form cannot hold for t != 0. Kept as an expected failure.
TEST_CASE("discrete Painleve I at t = 1, printed form" * doctest::should_fail()) {
    const std::vector<double> c = quartic_c(1.0);
    for (int n = 1; n <= 6; ++n) CHECK(dpainleve1_residual(c, 1.0, n) < 1e-6);
}

TEST_CASE("operator brackets") {
    const CommutatorReport h = commutator_checks(zeros(1), kGauss, default_grid());
    CHECK(h.bracket < 1e-10);
    CHECK(h.sum < 1e-10);

    const CommutatorReport h2 = commutator_checks(hermite_alpha_matrix({1.0, 0.7}), kGauss, default_grid());
    CHECK(h2.max() < 1e-10);

    const ScalarPoly quartic({0.0, 0.0, 0.7, 0.0, 1.0});
    const CommutatorReport f = commutator_checks(freud_weight(2, 1.0, 1.0, 0.0).a(), quartic, default_grid());
    CHECK(f.bracket < 1e-9);
    CHECK(f.double_bracket < 1e-9);
    CHECK(f.triple_bracket < 1e-9);
    CHECK(f.sum < 1e-9);

    // the bracket on P(x, 3) is multiplication by v'' = 2
    const MVOPFamily& fam = hermite1();
    for (double x : testutil::grid()) {
        const MatrixPoly p = fam.P[3];
        const MatrixPoly dd = apply_D_poly(apply_D_dagger_poly(p, zeros(1), kGauss), zeros(1));
        const MatrixPoly ddag = apply_D_dagger_poly(apply_D_poly(p, zeros(1)), zeros(1), kGauss);
        CHECK(scaled_residual((dd - ddag)(x), 2.0 * p(x)) < 1e-10);
    }
}
