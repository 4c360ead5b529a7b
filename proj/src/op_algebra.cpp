#include "mvop/op_algebra.hpp"

#include <algorithm>
#include <string>

namespace mvop {

DiffOp::DiffOp(int dim, int lo, int hi, int n_max) : dim_(dim), lo_(lo), hi_(hi), n_max_(n_max) {
    if (dim < 1 || lo > hi) {
        throw DomainError("DiffOp: invalid dimension or band");
    }
    if (n_max < 0) {
        throw TabulationError("DiffOp: empty tabulation (n_max = " + std::to_string(n_max) + ")");
    }
    coeff_.assign(static_cast<std::size_t>(hi - lo + 1),
                  std::vector<CMatrix>(static_cast<std::size_t>(n_max) + 1, zeros(dim)));
}

DiffOp DiffOp::constant(const CMatrix& c, int n_max) {
    DiffOp op(static_cast<int>(c.rows()), 0, 0, n_max);
    for (int n = 0; n <= n_max; ++n) op.set(0, n, c);
    return op;
}

DiffOp DiffOp::identity(int dim, int n_max) { return constant(mvop::identity(dim), n_max); }

DiffOp DiffOp::shift(int dim, int k, int n_max) {
    DiffOp op(dim, std::min(k, 0), std::max(k, 0), n_max);
    for (int n = 0; n <= n_max; ++n) op.set(k, n, mvop::identity(dim));
    return op;
}

CMatrix DiffOp::coefficient(int j, int n) const {
    if (n > n_max_) {
        throw TabulationError("DiffOp: coefficient at n = " + std::to_string(n) + " beyond n_max = " +
                              std::to_string(n_max_));
    }
    if (j < lo_ || j > hi_ || n < 0 || n + j < 0) {
        return zeros(dim_);
    }
    return coeff_[static_cast<std::size_t>(j - lo_)][static_cast<std::size_t>(n)];
}

void DiffOp::set(int j, int n, const CMatrix& c) {
    if (j < lo_ || j > hi_ || n < 0 || n > n_max_) {
        throw TabulationError("DiffOp::set: (j, n) = (" + std::to_string(j) + ", " + std::to_string(n) +
                              ") outside the tabulation");
    }
    if (n + j < 0) return;
    coeff_[static_cast<std::size_t>(j - lo_)][static_cast<std::size_t>(n)] = c;
}

DiffOp DiffOp::truncated(int n_max) const {
    if (n_max > n_max_) {
        throw TabulationError("DiffOp::truncated: cannot extend the tabulation");
    }
    DiffOp out(dim_, lo_, hi_, n_max);
    for (int j = lo_; j <= hi_; ++j) {
        for (int n = 0; n <= n_max; ++n) out.set(j, n, coefficient(j, n));
    }
    return out;
}

DiffOp DiffOp::operator+(const DiffOp& other) const {
    DiffOp out(dim_, std::min(lo_, other.lo_), std::max(hi_, other.hi_), std::min(n_max_, other.n_max_));
    for (int j = out.lo_; j <= out.hi_; ++j) {
        for (int n = 0; n <= out.n_max_; ++n) out.set(j, n, coefficient(j, n) + other.coefficient(j, n));
    }
    return out;
}

DiffOp DiffOp::operator-(const DiffOp& other) const { return *this + other * Complex(-1.0); }

DiffOp DiffOp::operator*(Complex s) const {
    DiffOp out = *this;
    for (auto& row : out.coeff_) {
        for (CMatrix& c : row) c *= s;
    }
    return out;
}

double DiffOp::max_difference(const DiffOp& other) const {
    const int n_top = std::min(n_max_, other.n_max_);
    double worst = 0.0;
    for (int j = std::min(lo_, other.lo_); j <= std::max(hi_, other.hi_); ++j) {
        for (int n = 0; n <= n_top; ++n) {
            worst = std::max(worst, (coefficient(j, n) - other.coefficient(j, n)).norm());
        }
    }
    return worst;
}

DiffOp recurrence_operator(const MVOPFamily& fam) {
    if (fam.n_max < 1) {
        throw TabulationError("recurrence_operator: family needs n_max >= 1");
    }
    const int top = fam.n_max - 1;
    DiffOp l(fam.dim(), -1, 1, top);
    for (int n = 0; n <= top; ++n) {
        l.set(1, n, identity(fam.dim()));
        l.set(0, n, fam.B[n]);
        l.set(-1, n, fam.C[n]);
    }
    return l;
}

DiffOp compose(const DiffOp& s, const DiffOp& t) {
    if (s.dim() != t.dim()) {
        throw DomainError("compose: dimension mismatch");
    }
    const int top = std::min(s.n_max(), t.n_max() - std::max(0, s.hi()));
    if (top < 0) {
        throw TabulationError("compose: tabulations too short for the product band");
    }
    DiffOp out(s.dim(), s.lo() + t.lo(), s.hi() + t.hi(), top);
    for (int n = 0; n <= top; ++n) {
        for (int a = s.lo(); a <= s.hi(); ++a) {
            if (n + a < 0) continue;
            const CMatrix sa = s.coefficient(a, n);
            if (sa.isZero(0.0)) continue;
            for (int b = t.lo(); b <= t.hi(); ++b) {
                const int j = a + b;
                if (n + j < 0) continue;
                out.set(j, n, out.coefficient(j, n) + sa * t.coefficient(b, n + a));
            }
        }
    }
    return out;
}

DiffOp op_poly(const DiffOp& l, const ScalarPoly& q) {
    const int d = q.degree();
    if (d < 0) {
        return DiffOp(l.dim(), 0, 0, l.n_max()) * Complex(0.0);
    }
    // A constant carries any tabulation length; give it enough that only L limits the result.
    DiffOp r = DiffOp::constant(q.coeff(d) * identity(l.dim()), l.n_max() + d);
    for (int k = d - 1; k >= 0; --k) {
        r = compose(l, r);
        r = r + DiffOp::constant(q.coeff(k) * identity(l.dim()), r.n_max());
    }
    return r;
}

DiffOp star(const DiffOp& m) {
    const int top = m.n_max() + std::min(0, m.lo());
    if (top < 0) {
        throw TabulationError("star: tabulation too short for the band");
    }
    DiffOp out(m.dim(), -m.hi(), -m.lo(), top);
    for (int j = m.lo(); j <= m.hi(); ++j) {
        for (int n = 0; n <= top; ++n) {
            const int src = n - j;
            if (src < 0) continue;
            out.set(-j, n, m.coefficient(j, src).adjoint());
        }
    }
    return out;
}

DiffOp dagger(const DiffOp& m, const std::vector<CMatrix>& h) {
    const DiffOp s = star(m);
    const int top = std::min(s.n_max(), static_cast<int>(h.size()) - 1 - std::max(0, s.hi()));
    if (top < 0) {
        throw TabulationError("dagger: not enough norms for the band");
    }
    std::vector<CMatrix> hinv;
    hinv.reserve(h.size());
    for (const CMatrix& hn : h) hinv.push_back(inverse(hn));
    DiffOp out(m.dim(), s.lo(), s.hi(), top);
    for (int i = s.lo(); i <= s.hi(); ++i) {
        for (int n = 0; n <= top; ++n) {
            if (n + i < 0) continue;
            out.set(i, n, h[n] * s.coefficient(i, n) * hinv[n + i]);
        }
    }
    return out;
}

namespace {

void check_apply_range(const DiffOp& m, const MVOPFamily& fam, int n) {
    if (n < 0 || n > m.n_max() || n + m.hi() > fam.n_max) {
        throw TabulationError("apply: n = " + std::to_string(n) + " outside the tabulated range of the operator (n_max " +
                              std::to_string(m.n_max()) + ") or family (n_max " + std::to_string(fam.n_max) + ")");
    }
}

}  // namespace

CMatrix apply(const DiffOp& m, const MVOPFamily& fam, double x, int n) {
    check_apply_range(m, fam, n);
    CMatrix acc = zeros(fam.dim());
    for (int j = m.lo(); j <= m.hi(); ++j) {
        if (n + j < 0) continue;
        acc += m.coefficient(j, n) * fam.eval(n + j, x);
    }
    return acc;
}

MatrixPoly apply_poly(const DiffOp& m, const MVOPFamily& fam, int n) {
    check_apply_range(m, fam, n);
    MatrixPoly acc = MatrixPoly::zero(fam.dim());
    for (int j = m.lo(); j <= m.hi(); ++j) {
        if (n + j < 0) continue;
        acc = acc + fam.P[n + j].left_mul(m.coefficient(j, n));
    }
    return acc;
}

}  // namespace mvop
