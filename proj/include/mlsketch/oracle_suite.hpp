#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mlsketch {

/// One instance/sample-size cell of the enumeration oracle.
///
/// For each deterministic instance the suite enumerates every realization of
/// the sketch (weighted by its product probability), under both the uniform
/// and the variance-minimizing index distribution, and compares the resulting
/// mean and variance against the independently computed closed forms.
/// Errors are measured against a mixed absolute/relative tolerance:
/// |lhs - rhs| <= tol * max(1, |rhs|).
struct OracleResult {
    std::string instance;
    std::size_t n;
    std::size_t sample_size;
    bool matrix;

    double mean_err_uniform;    // |enumerated mean - exact product|
    double mean_err_optimal;
    double var_uniform_enum;    // enumerated variance about the exact value
    double var_uniform_formula; // (n nu + mu) / s
    double var_optimal_enum;
    double var_optimal_formula; // mu / s
    double nu;

    bool pass;
};

struct OracleReport {
    std::vector<OracleResult> rows;
    double tolerance;
    std::size_t failures;

    bool all_pass() const { return failures == 0; }
};

/// Run the full grid: inner and matrix instances with n = 1..max_n and
/// s = 1..max_s.  `rescale_perturbation` multiplies every enumerated sketch
/// value and exists as a negative control — any value other than 1.0 must
/// make the suite fail.
OracleReport run_oracle_suite(std::size_t max_n, std::size_t max_s,
                              double tolerance = 1e-10,
                              double rescale_perturbation = 1.0);

} // namespace mlsketch
