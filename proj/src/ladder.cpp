#include "mvop/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace mvop {

CMatrix effective_a(const ExponentialWeight& w) {
    if (!w.has_left()) return w.a();
    const CMatrix l0 = w.left_factor();
    return l0 * w.a() * inverse(l0);
}

DiffOp lowering_operator(const MVOPFamily& fam, const ScalarPoly& v, const CMatrix& a) {
    const int k = v.degree();
    if (k < 2 || k % 2 != 0) {
        throw DomainError("lowering_operator: potential must have even degree >= 2");
    }
    const DiffOp vl = op_poly(recurrence_operator(fam), v.derivative());
    DiffOp m(fam.dim(), -k + 1, 0, vl.n_max());
    for (int n = 0; n <= vl.n_max(); ++n) {
        m.set(0, n, a);
        for (int j = -k + 1; j < 0; ++j) m.set(j, n, vl.coefficient(j, n));
    }
    return m;
}

LadderPair ladder_pair(const MVOPFamily& fam) {
    const CMatrix a = effective_a(fam.weight);
    const ScalarPoly& v = fam.weight.potential();
    DiffOp m = lowering_operator(fam, v, a);
    DiffOp mdag = dagger(m, fam.H);
    return {std::move(m), std::move(mdag), a, v};
}

MatrixPoly apply_D_poly(const MatrixPoly& p, const CMatrix& a) { return p.derivative() + p.right_mul(a); }

MatrixPoly apply_D_dagger_poly(const MatrixPoly& p, const CMatrix& a, const ScalarPoly& v) {
    return p.scalar_mul(v.derivative()) - apply_D_poly(p, a);
}

DiffOp lowering_by_projection(const MVOPFamily& fam, const CMatrix& a, int k) {
    DiffOp m(fam.dim(), -k + 1, 0, fam.n_max);
    for (int n = 0; n <= fam.n_max; ++n) {
        const auto pd = fam.quad->sample(apply_D_poly(fam.P[n], a));
        for (int j = -k + 1; j <= 0; ++j) {
            if (n + j < 0) continue;
            m.set(j, n, fam.quad->pair(pd, fam.node_values[n + j]) * inverse(fam.H[n + j]));
        }
    }
    return m;
}

CMatrix apply_D(const MVOPFamily& fam, double x, int n, const CMatrix& a) {
    return fam.eval_derivative(n, x) + fam.eval(n, x) * a;
}

CMatrix apply_D_dagger(const MVOPFamily& fam, double x, int n, const CMatrix& a, const ScalarPoly& v) {
    return -apply_D(fam, x, n, a) + v.derivative()(x) * fam.eval(n, x);
}

LadderResidual ladder_residual(const MVOPFamily& fam, const LadderPair& pair, double x, int n) {
    LadderResidual r;
    const CMatrix d = apply_D(fam, x, n, pair.A);
    const CMatrix mp = apply(pair.M, fam, x, n);
    const CMatrix dd = apply_D_dagger(fam, x, n, pair.A, pair.v);
    const CMatrix mdp = apply(pair.Mdag, fam, x, n);
    r.lowering = d - mp;
    r.raising = dd - mdp;
    r.lowering_scaled = scaled_residual(d, mp);
    r.raising_scaled = scaled_residual(dd, mdp);
    return r;
}

double ladder_max_residual(const MVOPFamily& fam, const LadderPair& pair, std::span<const double> xs, int n_hi) {
    double worst = 0.0;
    for (int n = 0; n <= n_hi; ++n) {
        for (double x : xs) {
            const LadderResidual r = ladder_residual(fam, pair, x, n);
            worst = std::max({worst, r.lowering_scaled, r.raising_scaled});
        }
    }
    return worst;
}

std::vector<StringResidual> string_residuals(const MVOPFamily& fam, const CMatrix& a, const ScalarPoly& v) {
    const DiffOp vl = op_poly(recurrence_operator(fam), v.derivative());
    const CMatrix id = identity(fam.dim());
    std::vector<StringResidual> out;
    for (int n = 0; n < vl.n_max(); ++n) {
        StringResidual s;
        s.n = n;
        const CMatrix ba = commutator(fam.B[n], a);
        const CMatrix m1 = vl.coefficient(-1, n);
        const CMatrix m1next = vl.coefficient(-1, n + 1);
        s.first = ba - id - m1 + m1next;
        s.first_scaled = scaled_norm(s.first, {&ba, &id, &m1, &m1next});
        if (n >= 1) {
            const CMatrix ca = commutator(fam.C[n], a);
            const CMatrix left = fam.C[n] * vl.coefficient(0, n - 1);
            const CMatrix right = vl.coefficient(0, n) * fam.C[n];
            s.second = ca - left + right;
            s.second_scaled = scaled_norm(s.second, {&ca, &left, &right});
        } else {
            s.second = zeros(fam.dim());
        }
        out.push_back(std::move(s));
    }
    return out;
}

double zero_coefficient_residual(const MVOPFamily& fam, const CMatrix& a, const ScalarPoly& v) {
    const DiffOp vl = op_poly(recurrence_operator(fam), v.derivative());
    double worst = 0.0;
    for (int n = 0; n <= vl.n_max(); ++n) {
        const CMatrix rhs = a + fam.H[n] * a.adjoint() * inverse(fam.H[n]);
        worst = std::max(worst, scaled_residual(vl.coefficient(0, n), rhs));
    }
    return worst;
}

double telescoped_sum_residual(const MVOPFamily& fam, const CMatrix& a) {
    double worst = 0.0;
    CMatrix sum = zeros(fam.dim());
    for (int n = 0; n <= fam.n_max; ++n) {
        if (n > 0) sum += commutator(fam.B[n - 1], a);
        const CMatrix rhs = static_cast<double>(n) * identity(fam.dim()) - 2.0 * fam.C[n];
        worst = std::max(worst, scaled_residual(sum, rhs));
    }
    return worst;
}

double dpainleve1_residual(std::span<const double> c, double t, int n) {
    if (n < 1 || n + 1 >= static_cast<int>(c.size())) {
        throw DomainError("dpainleve1_residual: need 1 <= n and C(n+1) available");
    }
    return std::abs(n - 4.0 * c[n] * (c[n - 1] + c[n] + c[n + 1] + 2.0 * t));
}

double dpainleve1_corrected_residual(std::span<const double> c, double t, int n) {
    if (n < 1 || n + 1 >= static_cast<int>(c.size())) {
        throw DomainError("dpainleve1_corrected_residual: need 1 <= n and C(n+1) available");
    }
    return std::abs(n - c[n] * (4.0 * (c[n - 1] + c[n] + c[n + 1]) + 2.0 * t));
}

DiffOp hermite_raising_closed(const MVOPFamily& fam, const CMatrix& a, double t) {
    const int top = fam.n_max - 1;
    const CMatrix id = identity(fam.dim());
    DiffOp op(fam.dim(), 0, 1, top);
    for (int n = 0; n <= top; ++n) {
        op.set(1, n, 2.0 * id);
        op.set(0, n, 2.0 * fam.B[n] - a + t * id);
    }
    return op;
}

double CommutatorReport::max() const { return std::max({bracket, double_bracket, triple_bracket, sum}); }

std::vector<MatrixPoly> sample_polynomials(int dim) {
    std::mt19937 gen(20240917u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<MatrixPoly> out;
    for (int deg = 0; deg <= 4; ++deg) {
        std::vector<CMatrix> c;
        for (int k = 0; k <= deg; ++k) {
            CMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) m(i, j) = Complex(u(gen), u(gen));
            }
            c.push_back(m);
        }
        out.emplace_back(std::move(c));
    }
    return out;
}

CommutatorReport commutator_checks(const CMatrix& a, const ScalarPoly& v, std::span<const double> xs) {
    using Op = std::function<MatrixPoly(const MatrixPoly&)>;
    const Op d = [&a](const MatrixPoly& f) { return apply_D_poly(f, a); };
    const Op dd = [&a, &v](const MatrixPoly& f) { return apply_D_dagger_poly(f, a, v); };
    // F.[X, Y] = (F.X).Y - (F.Y).X
    auto bracket = [](Op x, Op y) -> Op {
        return [x, y](const MatrixPoly& f) { return y(x(f)) - x(y(f)); };
    };
    const Op b1 = bracket(dd, d);
    const Op b2 = bracket(b1, d);
    const Op b3 = bracket(b2, d);
    const ScalarPoly v1 = v.derivative();
    const ScalarPoly v2 = v1.derivative();
    const ScalarPoly v3 = v2.derivative();
    const ScalarPoly v4 = v3.derivative();

    CommutatorReport rep;
    for (const MatrixPoly& f : sample_polynomials(static_cast<int>(a.rows()))) {
        const MatrixPoly r1 = b1(f);
        const MatrixPoly r2 = b2(f);
        const MatrixPoly r3 = b3(f);
        const MatrixPoly rs = d(f) + dd(f);
        for (double x : xs) {
            const CMatrix fx = f(x);
            rep.bracket = std::max(rep.bracket, scaled_residual(r1(x), v2(x) * fx));
            rep.double_bracket = std::max(rep.double_bracket, scaled_residual(r2(x), v3(x) * fx));
            rep.triple_bracket = std::max(rep.triple_bracket, scaled_residual(r3(x), v4(x) * fx));
            rep.sum = std::max(rep.sum, scaled_residual(rs(x), v1(x) * fx));
        }
    }
    return rep;
}

}  // namespace mvop
