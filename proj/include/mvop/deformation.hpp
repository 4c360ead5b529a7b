#pragma once

#include <vector>

#include "mvop/oracle.hpp"
#include "mvop/poly.hpp"

namespace mvop {

/// Right-hand sides of the deformation equations for v(x, t) with dv/dt = vdot:
///
///     B'(n) = (vdot(L))_{-1}(n) - (vdot(L))_{-1}(n+1)
///     C'(n) = (vdot(L))_{-2}(n) - (vdot(L))_{-2}(n+1)
///             + (vdot(L))_{-1}(n) B(n-1) - B(n) (vdot(L))_{-1}(n)
struct LatticeRhs {
    std::vector<CMatrix> bdot;
    std::vector<CMatrix> cdot;
};

/// Tabulated for n < n_max - deg vdot (B(-1) taken as zero).
LatticeRhs lattice_rhs(const MVOPFamily& fam, const ScalarPoly& vdot);

struct FiniteDiffReport {
    double b = 0.0;  ///< max_n ||dB/dt - rhs|| / max(1, ||rhs||)
    double c = 0.0;
    int n_checked = 0;
    double max() const { return b > c ? b : c; }
};

/// Central differences of B and C from families of wbase with potential
/// base + (t +- h) direction, against lattice_rhs(family at t, direction).
FiniteDiffReport finite_diff_check(const ExponentialWeight& wbase, const ScalarPoly& direction, double t, double h,
                                   int n_max);

/// Hermite-type string relation 2 dB/dt = [B, A] - I along v = x^2 + t x,
/// by central differences. Returns max_n scaled residual.
double hermite_string_fd_residual(const ExponentialWeight& wbase, double t, double h, int n_max);

/// Mixed partials of B(n) for v = base + t1 x + t2 x^2: d/dt2 of the t1-flow
/// right-hand side against d/dt1 of the t2-flow right-hand side.
double multi_time_residual(const ExponentialWeight& wbase, double t1, double t2, double h, int n_max);

/// Truncation of the Jacobi operator: blocks L(n,n+1) = I, L(n,n) = B(n),
/// L(n,n-1) = C(n) for 0 <= n < n_blocks.
struct BlockTridiag {
    int n_blocks = 0;
    int dim = 0;
    std::vector<CMatrix> B;
    std::vector<CMatrix> C;

    static BlockTridiag from_family(const MVOPFamily& fam, int n_blocks);
    /// Dense (n_blocks dim) x (n_blocks dim) matrix.
    CMatrix dense() const;
};

/// Block (r, c) of a dense block matrix.
CMatrix block(const CMatrix& m, int dim, int r, int c);

/// S_+ keeps the blocks on and above the diagonal, S_- the blocks below it.
CMatrix upper_part(const CMatrix& s, int dim);
CMatrix lower_part(const CMatrix& s, int dim);

struct LaxBracket {
    CMatrix plus;   ///< [L, (L^j)_+]
    CMatrix minus;  ///< -[L, (L^j)_-]
    int interior = 0;  ///< block rows < interior are free of truncation effects
};

/// Throws DomainError unless j >= 1 and n_blocks > j + 2.
LaxBracket lax_bracket(const BlockTridiag& l, int j);

/// max over interior blocks of ||plus - minus||, scaled.
double lax_split_residual(const LaxBracket& lb, int dim);

/// Diagonal and subdiagonal blocks of [L, (L^j)_+] against lattice_rhs(x^j),
/// for n < n_interior, with n_blocks = n_interior + j + 3.
double lax_vs_lattice(const MVOPFamily& fam, int j, int n_interior);

/// Interior blocks of the bracket with n_blocks and n_blocks + 4.
double lax_truncation_change(const MVOPFamily& fam, int j, int n_interior);

/// One row of an RK4 trajectory.
struct TodaSample {
    double t = 0.0;
    std::vector<CMatrix> B;
    std::vector<CMatrix> C;
};

/// Explicit RK4 on dL/dt = [L, (L^j)_+] for the truncated operator. For
/// demonstration; no accuracy claims are attached.
std::vector<TodaSample> toda_evolve(const BlockTridiag& l0, int j, double t_end, double step, int every);

}  // namespace mvop
