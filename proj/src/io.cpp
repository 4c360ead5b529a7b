#include "mvop/io.hpp"

#include <iomanip>
#include <limits>

namespace mvop {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix_from_json: expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("matrix_from_json: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2) throw ConfigError("matrix_from_json: entries must be [re, im]");
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

json weight_descriptor(const ExponentialWeight& w) {
    json d;
    d["family"] = w.family;
    d["v"] = w.potential().coeffs();
    d["A"] = to_json(w.a());
    if (w.has_left()) d["left"] = to_json(w.left_factor());
    if (!w.alpha.empty()) d["alpha"] = w.alpha;
    return d;
}

namespace {

json matrices(const std::vector<CMatrix>& ms) {
    json out = json::array();
    for (const CMatrix& m : ms) out.push_back(to_json(m));
    return out;
}

}  // namespace

json family_to_json(const MVOPFamily& fam) {
    json j;
    j["N"] = fam.dim();
    j["n_max"] = fam.n_max;
    j["weight"] = weight_descriptor(fam.weight);
    json p = json::array();
    for (const MatrixPoly& poly : fam.P) p.push_back(matrices(poly.coeffs()));
    j["P"] = std::move(p);
    j["H"] = matrices(fam.H);
    j["B"] = matrices(fam.B);
    j["C"] = matrices(fam.C);
    return j;
}

json diffop_to_json(const DiffOp& m) {
    json j;
    j["band"] = {m.lo(), m.hi()};
    j["n_max"] = m.n_max();
    json coeff = json::array();
    for (int k = m.lo(); k <= m.hi(); ++k) {
        json row = json::array();
        for (int n = 0; n <= m.n_max(); ++n) row.push_back(to_json(m.coefficient(k, n)));
        coeff.push_back(std::move(row));
    }
    j["coeff"] = std::move(coeff);
    return j;
}

json fast_hermite_to_json(const FastHermite& fast, const std::vector<double>& xs) {
    json j;
    j["alpha"] = fast.alpha;
    j["H"] = matrices(fast.H);
    j["B"] = matrices(fast.B);
    j["C"] = matrices(fast.C);
    json xi = json::array();
    for (const XiTable& t : fast.xi) {
        json rows = json::array();
        for (int a = 1; a <= t.N; ++a) {
            json row = json::array();
            for (int b = 1; b <= t.N; ++b) row.push_back(t(a, b));
            rows.push_back(std::move(row));
        }
        xi.push_back({{"n", t.n}, {"values", std::move(rows)}});
    }
    j["xi"] = std::move(xi);
    json samples = json::array();
    for (std::size_t n = 0; n < fast.xi.size(); ++n) {
        for (double x : xs) {
            samples.push_back({{"n", n}, {"x", x}, {"P", to_json(fast.P(static_cast<int>(n), x))}});
        }
    }
    j["samples"] = std::move(samples);
    return j;
}

void write_h_diagonal_csv(std::ostream& out, const std::vector<CMatrix>& h) {
    const int dim = h.empty() ? 0 : static_cast<int>(h[0].rows());
    out << "n";
    for (int i = 0; i < dim; ++i) out << ",H" << i;
    out << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t n = 0; n < h.size(); ++n) {
        out << n;
        for (int i = 0; i < dim; ++i) out << ',' << h[n](i, i).real();
        out << '\n';
    }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "family,N,n_max,oracle_ms,fast_ms,max_residual\n";
    out << std::setprecision(6);
    for (const BenchRow& r : rows) {
        out << r.family << ',' << r.N << ',' << r.n_max << ',' << r.oracle_ms << ',' << r.fast_ms << ','
            << r.max_residual << '\n';
    }
}

void write_toda_csv(std::ostream& out, const std::vector<TodaSample>& samples, const std::vector<int>& blocks) {
    if (samples.empty()) return;
    const int dim = static_cast<int>(samples[0].B[0].rows());
    out << "t";
    for (int n : blocks) {
        for (const char* name : {"B", "C"}) {
            for (int r = 0; r < dim; ++r) {
                for (int c = 0; c < dim; ++c) {
                    out << ',' << name << n << '_' << r << c << "_re," << name << n << '_' << r << c << "_im";
                }
            }
        }
    }
    out << '\n' << std::setprecision(12);
    for (const TodaSample& s : samples) {
        out << s.t;
        for (int n : blocks) {
            for (const CMatrix* m : {&s.B[static_cast<std::size_t>(n)], &s.C[static_cast<std::size_t>(n)]}) {
                for (int r = 0; r < dim; ++r) {
                    for (int c = 0; c < dim; ++c) out << ',' << (*m)(r, c).real() << ',' << (*m)(r, c).imag();
                }
            }
        }
        out << '\n';
    }
}

}  // namespace mvop
