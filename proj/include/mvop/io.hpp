#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvop/deformation.hpp"
#include "mvop/hermite_fast.hpp"
#include "mvop/op_algebra.hpp"
#include "mvop/oracle.hpp"

namespace mvop {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are arrays of rows.
json to_json(Complex z);
json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json weight_descriptor(const ExponentialWeight& w);

/// {N, n_max, weight, P: [[coeff_0, ..., coeff_n], ...], H, B, C}
json family_to_json(const MVOPFamily& fam);

/// {band: [lo, hi], n_max, coeff[j - lo][n]}
json diffop_to_json(const DiffOp& m);

/// {alpha, H, B, C, xi: [{n, values}], samples: [{n, x, P}]}
json fast_hermite_to_json(const FastHermite& fast, const std::vector<double>& xs);

/// n, then Re H(n)_ii for each i.
void write_h_diagonal_csv(std::ostream& out, const std::vector<CMatrix>& h);

struct BenchRow {
    std::string family;
    int N = 0;
    int n_max = 0;
    double oracle_ms = 0.0;
    double fast_ms = 0.0;
    double max_residual = 0.0;
};

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// t, then Re/Im of every B(n) and C(n) entry for the selected blocks.
void write_toda_csv(std::ostream& out, const std::vector<TodaSample>& samples, const std::vector<int>& blocks);

}  // namespace mvop
