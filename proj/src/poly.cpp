#include "mvop/poly.hpp"

#include <algorithm>
#include <cmath>

namespace mvop {

ScalarPoly::ScalarPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

ScalarPoly ScalarPoly::monomial(int k, double scale) {
    std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
    c.back() = scale;
    return ScalarPoly(std::move(c));
}

int ScalarPoly::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

double ScalarPoly::leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

double ScalarPoly::coeff(int k) const {
    if (k < 0 || k > degree()) {
        return 0.0;
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

double ScalarPoly::operator()(double x) const {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        r = r * x + *it;
    }
    return r;
}

ScalarPoly ScalarPoly::derivative() const {
    if (coeffs_.size() <= 1) {
        return ScalarPoly();
    }
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return ScalarPoly(std::move(d));
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& other) const {
    std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
    return ScalarPoly(std::move(c));
}

ScalarPoly ScalarPoly::operator*(double s) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= s;
    return ScalarPoly(std::move(c));
}

// ---------------------------------------------------------------------------

MatrixPoly::MatrixPoly(std::vector<CMatrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw DomainError("MatrixPoly: needs at least one coefficient to fix the dimension");
    }
    dim_ = static_cast<int>(coeffs_.front().rows());
    for (const CMatrix& c : coeffs_) {
        if (c.rows() != dim_ || c.cols() != dim_) {
            throw DomainError("MatrixPoly: coefficient shapes differ");
        }
    }
    while (coeffs_.size() > 1 && coeffs_.back().isZero(0.0)) {
        coeffs_.pop_back();
    }
}

MatrixPoly MatrixPoly::zero(int dim) { return MatrixPoly({mvop::zeros(dim)}); }

MatrixPoly MatrixPoly::constant(const CMatrix& c) { return MatrixPoly({c}); }

MatrixPoly MatrixPoly::monomial(int dim, int k) {
    std::vector<CMatrix> c(static_cast<std::size_t>(k) + 1, mvop::zeros(dim));
    c.back() = identity(dim);
    return MatrixPoly(std::move(c));
}

int MatrixPoly::degree() const {
    if (coeffs_.size() == 1 && coeffs_.front().isZero(0.0)) {
        return -1;
    }
    return static_cast<int>(coeffs_.size()) - 1;
}

CMatrix MatrixPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) {
        return mvop::zeros(dim_);
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

CMatrix MatrixPoly::operator()(double x) const {
    CMatrix r = coeffs_.back();
    for (auto k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
        r = r * x + coeffs_[static_cast<std::size_t>(k)];
    }
    return r;
}

MatrixPoly MatrixPoly::derivative() const {
    if (coeffs_.size() <= 1) {
        return zero(dim_);
    }
    std::vector<CMatrix> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d.push_back(coeffs_[k] * static_cast<double>(k));
    }
    return MatrixPoly(std::move(d));
}

MatrixPoly MatrixPoly::operator+(const MatrixPoly& other) const {
    const std::size_t n = std::max(coeffs_.size(), other.coeffs_.size());
    std::vector<CMatrix> c(n, mvop::zeros(dim_));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::operator-(const MatrixPoly& other) const { return *this + other * Complex(-1.0); }

MatrixPoly MatrixPoly::operator*(const MatrixPoly& other) const {
    std::vector<CMatrix> c(coeffs_.size() + other.coeffs_.size() - 1, mvop::zeros(dim_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
            c[i + j] += coeffs_[i] * other.coeffs_[j];
        }
    }
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::operator*(Complex s) const {
    std::vector<CMatrix> c = coeffs_;
    for (CMatrix& m : c) m *= s;
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::left_mul(const CMatrix& m) const {
    std::vector<CMatrix> c;
    c.reserve(coeffs_.size());
    for (const CMatrix& k : coeffs_) c.push_back(m * k);
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::right_mul(const CMatrix& m) const {
    std::vector<CMatrix> c;
    c.reserve(coeffs_.size());
    for (const CMatrix& k : coeffs_) c.push_back(k * m);
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::scalar_mul(const ScalarPoly& q) const {
    if (q.is_zero()) {
        return zero(dim_);
    }
    const auto& qc = q.coeffs();
    std::vector<CMatrix> c(coeffs_.size() + qc.size() - 1, mvop::zeros(dim_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < qc.size(); ++j) {
            c[i + j] += coeffs_[i] * qc[j];
        }
    }
    return MatrixPoly(std::move(c));
}

MatrixPoly MatrixPoly::times_x() const {
    std::vector<CMatrix> c;
    c.reserve(coeffs_.size() + 1);
    c.push_back(mvop::zeros(dim_));
    for (const CMatrix& k : coeffs_) c.push_back(k);
    return MatrixPoly(std::move(c));
}

CMatrix MatrixPoly::divided_difference(double x, double y) const {
    // (x^m - y^m)/(x - y) = sum_{a+b=m-1} x^a y^b
    CMatrix r = mvop::zeros(dim_);
    for (std::size_t m = 1; m < coeffs_.size(); ++m) {
        double s = 0.0;
        double xa = 1.0;
        for (std::size_t a = 0; a < m; ++a) {
            s += xa * std::pow(y, static_cast<double>(m - 1 - a));
            xa *= x;
        }
        r += coeffs_[m] * s;
    }
    return r;
}

// ---------------------------------------------------------------------------

double hermite_h(int n, double x) {
    if (n < 0) return 0.0;
    double h0 = 1.0;
    if (n == 0) return h0;
    double h1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

ScalarPoly hermite_poly(int n) {
    std::vector<double> h0{1.0};
    if (n == 0) return ScalarPoly(h0);
    std::vector<double> h1{0.0, 2.0};
    for (int k = 1; k < n; ++k) {
        std::vector<double> h2(h1.size() + 1, 0.0);
        for (std::size_t i = 0; i < h1.size(); ++i) h2[i + 1] += 2.0 * h1[i];
        for (std::size_t i = 0; i < h0.size(); ++i) h2[i] -= 2.0 * k * h0[i];
        h0 = std::move(h1);
        h1 = std::move(h2);
    }
    return ScalarPoly(h1);
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace mvop
