#include "mlsketch/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mlsketch/analysis.hpp"
#include "mlsketch/sketch.hpp"

namespace mlsketch {

namespace {

bool within(double lhs, double rhs, double tol) {
    return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

/// Odometer over all n^s tuples of 1-based indices.
bool advance(std::vector<std::uint32_t>& idx, std::size_t n) {
    for (std::size_t pos = idx.size(); pos-- > 0;) {
        if (idx[pos] < n) {
            ++idx[pos];
            return true;
        }
        idx[pos] = 1;
    }
    return false;
}

double tuple_weight(const std::vector<std::uint32_t>& idx,
                    const IndexDistribution& dist) {
    double w = 1.0;
    for (std::uint32_t j : idx) {
        w *= dist.prob(j);
    }
    return w;
}

struct EnumMoments {
    double mean_err;  // |weighted mean - exact| (Frobenius for matrices)
    double variance;  // weighted squared deviation from the exact value
};

EnumMoments enumerate_inner(const DenseVector& a, const DenseVector& b,
                            const IndexDistribution& dist, std::size_t s,
                            double perturb) {
    const double exact = exact_inner(a, b);
    double mean = 0.0, var = 0.0;
    std::vector<std::uint32_t> idx(s, 1);
    do {
        const double w = tuple_weight(idx, dist);
        Realization r{idx};
        const double v = perturb * sketch_inner(a, b, r, dist);
        mean += w * v;
        var += w * (v - exact) * (v - exact);
    } while (advance(idx, a.size()));
    return EnumMoments{std::abs(mean - exact), var};
}

EnumMoments enumerate_matrix(const DenseMatrix& A, const DenseMatrix& B,
                             const IndexDistribution& dist, std::size_t s,
                             double perturb) {
    const DenseMatrix exact = exact_matmul(A, B);
    const std::size_t cells = exact.data().size();
    std::vector<double> mean(cells, 0.0);
    double var = 0.0;
    std::vector<std::uint32_t> idx(s, 1);
    do {
        const double w = tuple_weight(idx, dist);
        Realization r{idx};
        const DenseMatrix v = sketch_matmul(A, B, r, dist);
        for (std::size_t t = 0; t < cells; ++t) {
            const double x = perturb * v.data()[t];
            mean[t] += w * x;
            const double dev = x - exact.data()[t];
            var += w * dev * dev;
        }
    } while (advance(idx, A.cols()));
    double mean_err = 0.0;
    for (std::size_t t = 0; t < cells; ++t) {
        const double dev = mean[t] - exact.data()[t];
        mean_err += dev * dev;
    }
    return EnumMoments{std::sqrt(mean_err), var};
}

struct InnerInstance {
    std::string name;
    DenseVector a;
    DenseVector b;
};

std::vector<InnerInstance> inner_instances(std::size_t n) {
    std::vector<double> a1(n), b1(n), b2(n), ones(n, 1.0), a4(n), b4(n);
    for (std::size_t j = 0; j < n; ++j) {
        a1[j] = static_cast<double>(j + 1);
        b1[j] = static_cast<double>(n + j + 1);
        b2[j] = (j % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(n + j + 1);
        a4[j] = std::pow(2.0, static_cast<double>(j));
        b4[j] = 3.0 * std::pow(2.0, -static_cast<double>(j));
    }
    std::vector<InnerInstance> out;
    out.push_back({"ascending", DenseVector(a1), DenseVector(b1)});
    out.push_back({"alternating-sign", DenseVector(a1), DenseVector(b2)});
    out.push_back({"flat-ones", DenseVector(ones), DenseVector(ones)});
    out.push_back({"constant-product", DenseVector(a4), DenseVector(b4)});
    return out;
}

struct MatrixInstance {
    std::string name;
    DenseMatrix A;
    DenseMatrix B;
};

std::vector<MatrixInstance> matrix_instances(std::size_t n) {
    const std::size_t m = 2, d = 2;
    std::vector<double> A1(m * n), A2(m * n), B1(n * d), Arow(n), Bwide(n * 3);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = static_cast<double>(i + j + 2);
            A1[i * n + j] = v;
            A2[i * n + j] = ((i + j) % 2 == 0 ? 1.0 : -1.0) * v;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            B1[j * d + k] = static_cast<double>(j + k + 2);
        }
        Arow[j] = static_cast<double>(j + 1);
        for (std::size_t k = 0; k < 3; ++k) {
            Bwide[j * 3 + k] = static_cast<double>(n + j + k + 1);
        }
    }
    std::vector<MatrixInstance> out;
    out.push_back({"grid-positive", DenseMatrix(m, n, A1), DenseMatrix(n, d, B1)});
    out.push_back({"grid-signed", DenseMatrix(m, n, A2), DenseMatrix(n, d, B1)});
    out.push_back({"ones", DenseMatrix(m, n, 1.0), DenseMatrix(n, d, 1.0)});
    out.push_back({"row-times-wide", DenseMatrix(1, n, Arow), DenseMatrix(n, 3, Bwide)});
    return out;
}

std::vector<double> inner_moments(const DenseVector& a, const DenseVector& b) {
    std::vector<double> m(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double p = a.data()[j] * b.data()[j];
        m[j] = p * p;
    }
    return m;
}

} // namespace

OracleReport run_oracle_suite(std::size_t max_n, std::size_t max_s, double tolerance,
                              double rescale_perturbation) {
    if (max_n == 0 || max_s == 0) {
        throw std::invalid_argument("run_oracle_suite: grid must be non-empty");
    }
    double guard = 1.0;
    for (std::size_t i = 0; i < max_s; ++i) {
        guard *= static_cast<double>(max_n);
        if (guard > 1e6) {
            throw std::invalid_argument(
                "run_oracle_suite: n^s exceeds the 10^6 enumeration guard");
        }
    }

    OracleReport report;
    report.tolerance = tolerance;
    report.failures = 0;

    auto push = [&](OracleResult row) {
        row.pass = row.mean_err_uniform <= tolerance &&
                   row.mean_err_optimal <= tolerance &&
                   within(row.var_uniform_enum, row.var_uniform_formula, tolerance) &&
                   within(row.var_optimal_enum, row.var_optimal_formula, tolerance);
        if (!row.pass) {
            ++report.failures;
        }
        report.rows.push_back(std::move(row));
    };

    for (std::size_t n = 1; n <= max_n; ++n) {
        for (const auto& inst : inner_instances(n)) {
            const auto moments = inner_moments(inst.a, inst.b);
            const double ip = exact_inner(inst.a, inst.b);
            MomentTable table;
            table.inner_moments = moments;
            table.cross_term = ip * ip;
            const VarianceConstants c = inner_constants(table);
            const IndexDistribution uni = IndexDistribution::uniform(n);
            const IndexDistribution opt = IndexDistribution::optimal_inner(moments);
            for (std::size_t s = 1; s <= max_s; ++s) {
                const EnumMoments eu =
                    enumerate_inner(inst.a, inst.b, uni, s, rescale_perturbation);
                const EnumMoments eo =
                    enumerate_inner(inst.a, inst.b, opt, s, rescale_perturbation);
                OracleResult row;
                row.instance = inst.name;
                row.n = n;
                row.sample_size = s;
                row.matrix = false;
                row.mean_err_uniform =
                    eu.mean_err / std::max(1.0, std::abs(ip));
                row.mean_err_optimal =
                    eo.mean_err / std::max(1.0, std::abs(ip));
                row.var_uniform_enum = eu.variance;
                row.var_uniform_formula = expected_variance_uniform(c, s);
                row.var_optimal_enum = eo.variance;
                row.var_optimal_formula = expected_variance_optimal(c, s);
                row.nu = c.nu;
                push(std::move(row));
            }
        }
        for (const auto& inst : matrix_instances(n)) {
            std::vector<double> cA(n), rB(n);
            for (std::size_t j = 1; j <= n; ++j) {
                double s2 = 0.0;
                for (double v : inst.A.col(j)) {
                    s2 += v * v;
                }
                cA[j - 1] = s2;
                s2 = 0.0;
                for (double v : inst.B.row(j)) {
                    s2 += v * v;
                }
                rB[j - 1] = s2;
            }
            MomentTable table;
            table.colA_moments = cA;
            table.rowB_moments = rB;
            const DenseMatrix exact = exact_matmul(inst.A, inst.B);
            table.cross_term = frobenius_norm_sq(exact);
            const VarianceConstants c = matrix_constants(table);
            const double scale = std::sqrt(*table.cross_term);
            const IndexDistribution uni = IndexDistribution::uniform(n);
            const IndexDistribution opt = IndexDistribution::optimal_matrix(cA, rB);
            for (std::size_t s = 1; s <= max_s; ++s) {
                const EnumMoments eu =
                    enumerate_matrix(inst.A, inst.B, uni, s, rescale_perturbation);
                const EnumMoments eo =
                    enumerate_matrix(inst.A, inst.B, opt, s, rescale_perturbation);
                OracleResult row;
                row.instance = inst.name;
                row.n = n;
                row.sample_size = s;
                row.matrix = true;
                row.mean_err_uniform = eu.mean_err / std::max(1.0, scale);
                row.mean_err_optimal = eo.mean_err / std::max(1.0, scale);
                row.var_uniform_enum = eu.variance;
                row.var_uniform_formula = expected_frobenius_error_uniform(c, s);
                row.var_optimal_enum = eo.variance;
                row.var_optimal_formula = expected_frobenius_error_optimal(c, s);
                row.nu = c.nu;
                push(std::move(row));
            }
        }
    }
    return report;
}

} // namespace mlsketch
