#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mvop/deformation.hpp"
#include "mvop/ladder.hpp"
#include "test_util.hpp"

using namespace mvop;
using testutil::rel;
using testutil::scalar;

namespace {

const ScalarPoly kX({0.0, 1.0});
const ScalarPoly kX2({0.0, 0.0, 1.0});

ExponentialWeight gauss() { return ExponentialWeight(kX2, zeros(1)); }

const MVOPFamily& hermite2() {
    static const MVOPFamily fam = gram_schmidt_family(hermite_alpha_weight({1.0, 0.7}), 16);
    return fam;
}

// A non-symmetric family, so B(n) is not zero and both Langmuir terms are live.
const MVOPFamily& shifted2() {
    static const MVOPFamily fam =
        gram_schmidt_family(hermite_alpha_weight({1.0, 0.7}).with_potential(ScalarPoly({0.0, 0.4, 1.0})), 16);
    return fam;
}

std::vector<Complex> traces(const BlockTridiag& l, int kmax) {
    const CMatrix d = l.dense();
    CMatrix p = d;
    std::vector<Complex> out;
    for (int k = 1; k <= kmax; ++k) {
        out.push_back(p.trace());
        p = p * d;
    }
    return out;
}

BlockTridiag from_sample(const TodaSample& s, int dim) {
    return BlockTridiag{static_cast<int>(s.B.size()), dim, s.B, s.C};
}

}  // namespace

TEST_CASE("Toda right-hand side") {
    for (const MVOPFamily* fam : {&hermite2(), &shifted2()}) {
        const LatticeRhs r = lattice_rhs(*fam, kX);
        CHECK(r.bdot.size() >= 8);
        for (std::size_t n = 0; n < r.bdot.size(); ++n) {
            CHECK(scaled_residual(r.bdot[n], fam->C[n] - fam->C[n + 1]) < 1e-12);
            const CMatrix bprev = n >= 1 ? fam->B[n - 1] : zeros(2);
            CHECK(scaled_residual(r.cdot[n], fam->C[n] * bprev - fam->B[n] * fam->C[n]) < 1e-12);
        }
    }
}

TEST_CASE("Langmuir right-hand side") {
    const MVOPFamily& fam = shifted2();
    const auto& b = fam.B;
    const auto& c = fam.C;
    const LatticeRhs r = lattice_rhs(fam, kX2);
    for (std::size_t n = 1; n < r.cdot.size(); ++n) {
        const CMatrix expect = c[n] * c[n - 1] - c[n + 1] * c[n] + c[n] * b[n - 1] * b[n - 1] - b[n] * b[n] * c[n];
        CHECK(scaled_residual(r.cdot[n], expect) < 1e-11);
        // (L^2)_{-1}(n) = B(n)C(n) + C(n)B(n-1)
        const CMatrix l2n = b[n] * c[n] + c[n] * b[n - 1];
        const CMatrix l2n1 = b[n + 1] * c[n + 1] + c[n + 1] * b[n];
        CHECK(scaled_residual(r.bdot[n], l2n - l2n1) < 1e-11);
    }
}

TEST_CASE("scalar Hermite along v = x^2 + t x") {
    const MVOPFamily fam = gram_schmidt_family(gauss(), 10);
    const LatticeRhs r = lattice_rhs(fam, kX);
    for (const auto& bd : r.bdot) CHECK(std::abs(bd(0, 0) + 0.5) < 1e-9);
    for (double t : {-0.5, 0.3, 1.0}) {
        const MVOPFamily ft = gram_schmidt_family(gauss().with_potential(ScalarPoly({0.0, t, 1.0})), 8);
        for (int n = 0; n < 8; ++n) CHECK(std::abs(ft.B[n](0, 0) + t / 2) < 1e-9);
    }
}

TEST_CASE("finite differences of re-solved families match the lattice equations") {
    const FiniteDiffReport toda1 = finite_diff_check(gauss(), kX, 0.0, 1e-4, 10);
    CHECK(toda1.n_checked >= 6);
    CHECK(toda1.max() < 1e-6);

    const ExponentialWeight w2 = hermite_alpha_weight({1.0, 0.7});
    CHECK(finite_diff_check(w2, kX, 0.2, 1e-4, 10).max() < 1e-6);
    CHECK(finite_diff_check(w2, kX2, 0.1, 1e-4, 10).max() < 1e-6);
    CHECK(finite_diff_check(freud_weight(2, 1.0, 1.0, 0.0), kX2, 0.0, 1e-4, 14).max() < 1e-6);
}

TEST_CASE("Langmuir flow of an even scalar weight keeps B = 0") {
    const ExponentialWeight quartic(ScalarPoly({0.0, 0.0, 0.5, 0.0, 1.0}), zeros(1));
    const MVOPFamily fam = gram_schmidt_family(quartic, 14);
    const LatticeRhs r = lattice_rhs(fam, kX2);
    for (const auto& bd : r.bdot) CHECK(std::abs(bd(0, 0)) < 1e-10);
    CHECK(finite_diff_check(quartic, kX2, 0.0, 1e-4, 14).b < 1e-6);
}

TEST_CASE("Hermite string relation 2 dB/dt = [B, A] - I") {
    CHECK(hermite_string_fd_residual(hermite_alpha_weight({1.0, 0.7}), 0.0, 1e-4, 10) < 1e-6);
    CHECK(hermite_string_fd_residual(hermite_alpha_weight({1.0, 0.7, 2.0}), 0.3, 1e-4, 10) < 1e-6);
    CHECK(hermite_string_fd_residual(gauss(), 0.0, 1e-4, 10) < 1e-6);
}

TEST_CASE("block truncation") {
    const BlockTridiag l = BlockTridiag::from_family(hermite2(), 5);
    const CMatrix d = l.dense();
    CHECK(d.rows() == 10);
    CHECK(rel(block(d, 2, 1, 2), identity(2)) == 0.0);
    CHECK(rel(block(d, 2, 3, 3), hermite2().B[3]) == 0.0);
    CHECK(rel(block(d, 2, 3, 2), hermite2().C[3]) == 0.0);
    CHECK(block(d, 2, 4, 1).norm() == 0.0);

    const CMatrix s = testutil::random_matrix(10, 3);
    CHECK(rel(upper_part(s, 2) + lower_part(s, 2), s) == 0.0);
    CHECK(block(upper_part(s, 2), 2, 2, 1).norm() == 0.0);
    CHECK(rel(block(upper_part(s, 2), 2, 2, 2), block(s, 2, 2, 2)) == 0.0);
    CHECK(block(lower_part(s, 2), 2, 2, 2).norm() == 0.0);
}

TEST_CASE("Lax bracket blocks for j = 1") {
    const MVOPFamily& fam = shifted2();
    const LaxBracket lb = lax_bracket(BlockTridiag::from_family(fam, 10), 1);
    CHECK(lb.interior > 0);
    for (int n = 0; n < lb.interior; ++n) {
        CHECK(scaled_residual(block(lb.plus, 2, n, n), fam.C[n] - fam.C[n + 1]) < 1e-12);
        if (n >= 1) {
            CHECK(scaled_residual(block(lb.plus, 2, n, n - 1), fam.C[n] * fam.B[n - 1] - fam.B[n] * fam.C[n]) < 1e-12);
        }
    }
    CHECK_THROWS_AS(lax_bracket(BlockTridiag::from_family(fam, 3), 1), DomainError);
    CHECK_THROWS_AS(lax_bracket(BlockTridiag::from_family(fam, 8), 0), DomainError);
}

TEST_CASE("Lax equation against the lattice equations") {
    for (int j = 1; j <= 3; ++j) {
        for (const MVOPFamily* fam : {&hermite2(), &shifted2()}) {
            const BlockTridiag l = BlockTridiag::from_family(*fam, 6 + j + 3);
            CHECK(lax_split_residual(lax_bracket(l, j), 2) < 1e-10);
            CHECK(lax_vs_lattice(*fam, j, 6) < 1e-8);
            CHECK(lax_truncation_change(*fam, j, 6) < 1e-12);
        }
    }
    const MVOPFamily even = gram_schmidt_family(freud_weight(1, 1.0, 1.0, 0.0), 16);
    const LaxBracket lb = lax_bracket(BlockTridiag::from_family(even, 11), 2);
    for (int n = 0; n < lb.interior; ++n) CHECK(std::abs(block(lb.plus, 1, n, n)(0, 0)) < 1e-10);
}

TEST_CASE("multi-time flows commute") {
    CHECK(multi_time_residual(gauss(), 0.0, 0.0, 1e-3, 8) < 1e-5);
    CHECK(multi_time_residual(hermite_alpha_weight({1.0, 0.7}), 0.1, 0.05, 1e-3, 8) < 1e-5);
}

TEST_CASE("property: toda_evolve is isospectral on the truncation") {
    const BlockTridiag l0 = BlockTridiag::from_family(shifted2(), 6);
    for (int j : {1, 2}) {
        const auto samples = toda_evolve(l0, j, 0.2, 1e-3, 50);
        CHECK(samples.front().t == 0.0);
        CHECK(samples.back().t == doctest::Approx(0.2));
        const auto t0 = traces(l0, 4);
        const auto t1 = traces(from_sample(samples.back(), 2), 4);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(t1[k] - t0[k]) < 1e-8 * std::max(1.0, std::abs(t0[k])));
        // the flow actually moves
        CHECK((samples.back().B[1] - l0.B[1]).norm() > 1e-3);
    }
    CHECK_THROWS_AS(toda_evolve(l0, 0, 1.0, 1e-3, 1), DomainError);
}
