#include "mvop/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvop/ladder.hpp"
#include "mvop/op_algebra.hpp"

namespace mvop {

LatticeRhs lattice_rhs(const MVOPFamily& fam, const ScalarPoly& vdot) {
    const DiffOp vl = op_poly(recurrence_operator(fam), vdot);
    LatticeRhs out;
    const int dim = fam.dim();
    for (int n = 0; n < vl.n_max(); ++n) {
        const CMatrix m1 = vl.coefficient(-1, n);
        out.bdot.push_back(m1 - vl.coefficient(-1, n + 1));
        const CMatrix bprev = n >= 1 ? CMatrix(fam.B[n - 1]) : zeros(dim);
        out.cdot.push_back(vl.coefficient(-2, n) - vl.coefficient(-2, n + 1) + m1 * bprev - fam.B[n] * m1);
    }
    return out;
}

namespace {

MVOPFamily family_at(const ExponentialWeight& wbase, const ScalarPoly& direction, double t, int n_max) {
    return gram_schmidt_family(wbase.with_potential(wbase.potential() + direction * t), n_max);
}

double rel(const CMatrix& diff, const CMatrix& ref) { return diff.norm() / std::max(1.0, ref.norm()); }

}  // namespace

FiniteDiffReport finite_diff_check(const ExponentialWeight& wbase, const ScalarPoly& direction, double t, double h,
                                   int n_max) {
    const MVOPFamily f0 = family_at(wbase, direction, t, n_max);
    const MVOPFamily fp = family_at(wbase, direction, t + h, n_max);
    const MVOPFamily fm = family_at(wbase, direction, t - h, n_max);
    const LatticeRhs rhs = lattice_rhs(f0, direction);
    FiniteDiffReport rep;
    rep.n_checked = static_cast<int>(rhs.bdot.size());
    for (int n = 0; n < rep.n_checked; ++n) {
        const CMatrix db = (fp.B[n] - fm.B[n]) / (2.0 * h);
        const CMatrix dc = (fp.C[n] - fm.C[n]) / (2.0 * h);
        rep.b = std::max(rep.b, rel(db - rhs.bdot[n], rhs.bdot[n]));
        rep.c = std::max(rep.c, rel(dc - rhs.cdot[n], rhs.cdot[n]));
    }
    return rep;
}

double hermite_string_fd_residual(const ExponentialWeight& wbase, double t, double h, int n_max) {
    const ScalarPoly dir({0.0, 1.0});
    const MVOPFamily f0 = family_at(wbase, dir, t, n_max);
    const MVOPFamily fp = family_at(wbase, dir, t + h, n_max);
    const MVOPFamily fm = family_at(wbase, dir, t - h, n_max);
    const CMatrix a = effective_a(wbase);
    const CMatrix id = identity(wbase.dim());
    double worst = 0.0;
    for (int n = 0; n < n_max; ++n) {
        const CMatrix lhs = (fp.B[n] - fm.B[n]) / h;  // 2 dB/dt
        const CMatrix rhs = commutator(f0.B[n], a) - id;
        worst = std::max(worst, scaled_residual(lhs, rhs));
    }
    return worst;
}

double multi_time_residual(const ExponentialWeight& wbase, double t1, double t2, double h, int n_max) {
    const ScalarPoly x1({0.0, 1.0});
    const ScalarPoly x2({0.0, 0.0, 1.0});
    auto family = [&](double s1, double s2) {
        return gram_schmidt_family(wbase.with_potential(wbase.potential() + x1 * s1 + x2 * s2), n_max);
    };
    // d/dt2 of the t1-flow right-hand side
    const LatticeRhs r1p = lattice_rhs(family(t1, t2 + h), x1);
    const LatticeRhs r1m = lattice_rhs(family(t1, t2 - h), x1);
    // d/dt1 of the t2-flow right-hand side
    const LatticeRhs r2p = lattice_rhs(family(t1 + h, t2), x2);
    const LatticeRhs r2m = lattice_rhs(family(t1 - h, t2), x2);
    const std::size_t count = std::min(r1p.bdot.size(), r2p.bdot.size());
    double worst = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
        const CMatrix d21 = (r1p.bdot[n] - r1m.bdot[n]) / (2.0 * h);
        const CMatrix d12 = (r2p.bdot[n] - r2m.bdot[n]) / (2.0 * h);
        worst = std::max(worst, scaled_residual(d21, d12));
    }
    return worst;
}

BlockTridiag BlockTridiag::from_family(const MVOPFamily& fam, int n_blocks) {
    if (n_blocks < 1 || n_blocks > fam.n_max) {
        throw TabulationError("BlockTridiag: need 1 <= n_blocks <= n_max (" + std::to_string(fam.n_max) + ")");
    }
    BlockTridiag l;
    l.n_blocks = n_blocks;
    l.dim = fam.dim();
    l.B.assign(fam.B.begin(), fam.B.begin() + n_blocks);
    l.C.assign(fam.C.begin(), fam.C.begin() + n_blocks);
    return l;
}

CMatrix BlockTridiag::dense() const {
    const int size = n_blocks * dim;
    CMatrix m = CMatrix::Zero(size, size);
    for (int n = 0; n < n_blocks; ++n) {
        m.block(n * dim, n * dim, dim, dim) = B[n];
        if (n + 1 < n_blocks) m.block(n * dim, (n + 1) * dim, dim, dim) = identity(dim);
        if (n >= 1) m.block(n * dim, (n - 1) * dim, dim, dim) = C[n];
    }
    return m;
}

CMatrix block(const CMatrix& m, int dim, int r, int c) { return m.block(r * dim, c * dim, dim, dim); }

CMatrix upper_part(const CMatrix& s, int dim) {
    CMatrix out = s;
    const int nb = static_cast<int>(s.rows()) / dim;
    for (int r = 0; r < nb; ++r) {
        for (int c = 0; c < r; ++c) out.block(r * dim, c * dim, dim, dim).setZero();
    }
    return out;
}

CMatrix lower_part(const CMatrix& s, int dim) { return s - upper_part(s, dim); }

LaxBracket lax_bracket(const BlockTridiag& l, int j) {
    if (j < 1 || l.n_blocks <= j + 2) {
        throw DomainError("lax_bracket: need j >= 1 and n_blocks > j + 2");
    }
    const CMatrix ld = l.dense();
    CMatrix lj = ld;
    for (int k = 1; k < j; ++k) lj = lj * ld;
    const CMatrix plus = upper_part(lj, l.dim);
    const CMatrix minus = lower_part(lj, l.dim);
    LaxBracket out;
    out.plus = ld * plus - plus * ld;
    out.minus = -(ld * minus - minus * ld);
    out.interior = l.n_blocks - j - 1;
    return out;
}

double lax_split_residual(const LaxBracket& lb, int dim) {
    double worst = 0.0;
    const int nb = static_cast<int>(lb.plus.rows()) / dim;
    for (int r = 0; r < lb.interior; ++r) {
        for (int c = 0; c < nb; ++c) {
            worst = std::max(worst, scaled_residual(block(lb.plus, dim, r, c), block(lb.minus, dim, r, c)));
        }
    }
    return worst;
}

double lax_vs_lattice(const MVOPFamily& fam, int j, int n_interior) {
    const int n_blocks = n_interior + j + 3;
    const LaxBracket lb = lax_bracket(BlockTridiag::from_family(fam, n_blocks), j);
    const LatticeRhs rhs = lattice_rhs(fam, ScalarPoly::monomial(j));
    if (static_cast<int>(rhs.bdot.size()) < n_interior) {
        throw TabulationError("lax_vs_lattice: family too short for n_interior = " + std::to_string(n_interior));
    }
    const int dim = fam.dim();
    double worst = 0.0;
    for (int n = 0; n < n_interior; ++n) {
        worst = std::max(worst, scaled_residual(block(lb.plus, dim, n, n), rhs.bdot[n]));
        if (n >= 1) worst = std::max(worst, scaled_residual(block(lb.plus, dim, n, n - 1), rhs.cdot[n]));
    }
    return worst;
}

double lax_truncation_change(const MVOPFamily& fam, int j, int n_interior) {
    const int n_blocks = n_interior + j + 3;
    const LaxBracket small = lax_bracket(BlockTridiag::from_family(fam, n_blocks), j);
    const LaxBracket large = lax_bracket(BlockTridiag::from_family(fam, n_blocks + 4), j);
    const int dim = fam.dim();
    double worst = 0.0;
    for (int r = 0; r < small.interior; ++r) {
        for (int c = 0; c < n_blocks; ++c) {
            worst = std::max(worst, scaled_residual(block(small.plus, dim, r, c), block(large.plus, dim, r, c)));
        }
    }
    return worst;
}

namespace {

struct State {
    std::vector<CMatrix> b;
    std::vector<CMatrix> c;
};

State flow(const State& s, int dim, int j) {
    BlockTridiag l{static_cast<int>(s.b.size()), dim, s.b, s.c};
    const CMatrix ld = l.dense();
    CMatrix lj = ld;
    for (int k = 1; k < j; ++k) lj = lj * ld;
    const CMatrix plus = upper_part(lj, dim);
    const CMatrix dl = ld * plus - plus * ld;
    State out;
    for (int n = 0; n < l.n_blocks; ++n) {
        out.b.push_back(block(dl, dim, n, n));
        out.c.push_back(n >= 1 ? block(dl, dim, n, n - 1) : zeros(dim));
    }
    return out;
}

State axpy(const State& s, double h, const State& d) {
    State out = s;
    for (std::size_t n = 0; n < s.b.size(); ++n) {
        out.b[n] += h * d.b[n];
        out.c[n] += h * d.c[n];
    }
    return out;
}

}  // namespace

std::vector<TodaSample> toda_evolve(const BlockTridiag& l0, int j, double t_end, double step, int every) {
    if (j < 1 || step <= 0.0 || every < 1) {
        throw DomainError("toda_evolve: need j >= 1, step > 0, every >= 1");
    }
    State s{l0.B, l0.C};
    std::vector<TodaSample> out{{0.0, s.b, s.c}};
    const int steps = static_cast<int>(std::ceil(t_end / step - 1e-12));
    for (int i = 1; i <= steps; ++i) {
        const State k1 = flow(s, l0.dim, j);
        const State k2 = flow(axpy(s, 0.5 * step, k1), l0.dim, j);
        const State k3 = flow(axpy(s, 0.5 * step, k2), l0.dim, j);
        const State k4 = flow(axpy(s, step, k3), l0.dim, j);
        for (std::size_t n = 0; n < s.b.size(); ++n) {
            s.b[n] += step / 6.0 * (k1.b[n] + 2.0 * k2.b[n] + 2.0 * k3.b[n] + k4.b[n]);
            s.c[n] += step / 6.0 * (k1.c[n] + 2.0 * k2.c[n] + 2.0 * k3.c[n] + k4.c[n]);
        }
        if (i % every == 0 || i == steps) out.push_back({i * step, s.b, s.c});
    }
    return out;
}

}  // namespace mvop
