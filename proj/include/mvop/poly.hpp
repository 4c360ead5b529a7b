#pragma once

#include <span>
#include <vector>

#include "mvop/numerics.hpp"

namespace mvop {

/// Real scalar polynomial, coefficients stored constant term first.
class ScalarPoly {
public:
    ScalarPoly() = default;
    explicit ScalarPoly(std::vector<double> coeffs);

    /// x^k.
    static ScalarPoly monomial(int k, double scale = 1.0);

    /// -1 for the zero polynomial.
    int degree() const;
    double leading() const;
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const;

    double operator()(double x) const;
    ScalarPoly derivative() const;

    ScalarPoly operator+(const ScalarPoly& other) const;
    ScalarPoly operator*(double s) const;
    bool is_zero() const { return degree() < 0; }

private:
    std::vector<double> coeffs_;
};

/// Polynomial in the real variable x with N x N complex matrix coefficients,
/// stored constant term first.
class MatrixPoly {
public:
    MatrixPoly() = default;
    explicit MatrixPoly(std::vector<CMatrix> coeffs);

    static MatrixPoly zero(int dim);
    static MatrixPoly constant(const CMatrix& c);
    /// x^k I.
    static MatrixPoly monomial(int dim, int k);

    int dim() const { return dim_; }
    /// -1 for the zero polynomial (all coefficients exactly zero).
    int degree() const;
    const std::vector<CMatrix>& coeffs() const { return coeffs_; }
    /// Coefficient of x^k; zero matrix outside the stored range.
    CMatrix coeff(int k) const;

    CMatrix operator()(double x) const;
    MatrixPoly derivative() const;

    MatrixPoly operator+(const MatrixPoly& other) const;
    MatrixPoly operator-(const MatrixPoly& other) const;
    MatrixPoly operator*(const MatrixPoly& other) const;
    MatrixPoly operator*(Complex s) const;
    /// Multiply every coefficient from the left / right by a constant matrix.
    MatrixPoly left_mul(const CMatrix& m) const;
    MatrixPoly right_mul(const CMatrix& m) const;
    /// Multiply by a scalar polynomial.
    MatrixPoly scalar_mul(const ScalarPoly& q) const;
    /// Multiply by x.
    MatrixPoly times_x() const;

    /// Divided difference (F(x) - F(y)) / (x - y) evaluated as a polynomial in
    /// (x, y), so it is exact on the diagonal x == y.
    CMatrix divided_difference(double x, double y) const;

private:
    int dim_ = 0;
    std::vector<CMatrix> coeffs_;
};

/// Physicists' Hermite polynomial H_n(x) (H_0 = 1, H_1 = 2x).
double hermite_h(int n, double x);

/// Physicists' Hermite polynomial as coefficients.
ScalarPoly hermite_poly(int n);

double factorial(int n);

}  // namespace mvop
