#pragma once

#include <vector>

#include "mvop/numerics.hpp"
#include "mvop/oracle.hpp"
#include "mvop/poly.hpp"

namespace mvop {

/// Banded difference operator sum_{j=lo}^{hi} c_j(n) delta^j acting on
/// sequences of matrix polynomials from the left:
///
///     (M . P)(x, n) = sum_j c_j(n) P(x, n + j).
///
/// Coefficients are tabulated for 0 <= n <= n_max. Coefficients that could
/// only multiply P at a negative index (n + j < 0) are identically zero, which
/// makes the representation canonical.
class DiffOp {
public:
    DiffOp(int dim, int lo, int hi, int n_max);

    /// c(n) delta^0 with c constant.
    static DiffOp constant(const CMatrix& c, int n_max);
    static DiffOp identity(int dim, int n_max);
    /// I delta^k.
    static DiffOp shift(int dim, int k, int n_max);

    int dim() const { return dim_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int n_max() const { return n_max_; }

    /// c_j(n). Zero outside the band, for n < 0 and for n + j < 0.
    /// Throws TabulationError for n > n_max.
    CMatrix coefficient(int j, int n) const;
    void set(int j, int n, const CMatrix& c);

    /// Copy restricted to 0 <= n <= n_max (n_max must not grow).
    DiffOp truncated(int n_max) const;

    DiffOp operator+(const DiffOp& other) const;
    DiffOp operator-(const DiffOp& other) const;
    DiffOp operator*(Complex s) const;

    /// Largest coefficient difference, max_{j,n} ||c_j(n) - d_j(n)||_F over the
    /// common tabulation.
    double max_difference(const DiffOp& other) const;

private:
    int dim_;
    int lo_;
    int hi_;
    int n_max_;
    std::vector<std::vector<CMatrix>> coeff_;  // coeff_[j - lo][n]
};

/// L = delta + B(n) + C(n) delta^{-1}, tabulated for n <= n_max - 1.
DiffOp recurrence_operator(const MVOPFamily& fam);

/// (S o T)_j(n) = sum_{a+b=j} S_a(n) T_b(n+a).
DiffOp compose(const DiffOp& s, const DiffOp& t);

/// q(L) by Horner's scheme in compose.
DiffOp op_poly(const DiffOp& l, const ScalarPoly& q);

/// A_j(n) delta^j -> A_j(n-j)^* delta^{-j}.
DiffOp star(const DiffOp& m);

/// Coefficient at shift i: H(n) (M^*)_i(n) H(n+i)^{-1}.
DiffOp dagger(const DiffOp& m, const std::vector<CMatrix>& h);

/// sum_j c_j(n) P(x, n+j). Throws TabulationError if n or n + hi is out of range.
CMatrix apply(const DiffOp& m, const MVOPFamily& fam, double x, int n);

/// Same, as a matrix polynomial.
MatrixPoly apply_poly(const DiffOp& m, const MVOPFamily& fam, int n);

}  // namespace mvop
