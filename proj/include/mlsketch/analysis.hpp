#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlsketch/models.hpp"
#include "mlsketch/sampling.hpp"
#include "mlsketch/tensor.hpp"

namespace mlsketch {

/// Second-moment inputs for the variance formulas.
///
/// Inner-product case: inner_moments[j] = E[a_j^2 b_j^2] and
/// cross_term = E[(a^T b)^2].  Matrix case: colA_moments[j] = E[|A_col_j|^2],
/// rowB_moments[j] = E[|B_row_j|^2], cross_term = E[|AB|_F^2].
struct MomentTable {
    std::optional<std::vector<double>> inner_moments;
    std::optional<std::vector<double>> colA_moments;
    std::optional<std::vector<double>> rowB_moments;
    std::optional<double> cross_term;
};

/// mu and nu for a problem of size n:
///   mu = (sum_j sqrt(m_j))^2 - cross_term
///   nu = sum_j (sqrt(m_j) - mean_i sqrt(m_i))^2
/// where m_j is the per-index second moment (inner) or the column/row moment
/// product (matrix).
struct VarianceConstants {
    double mu;
    double nu;
    std::size_t n;
};

VarianceConstants inner_constants(const MomentTable& moments);
VarianceConstants matrix_constants(const MomentTable& moments);

/// Variance of a uniform-sampling sketch with s index samples: (n*nu + mu)/s.
double expected_variance_uniform(const VarianceConstants& c, std::size_t sample_size);

/// Variance under the optimal sampling distribution: mu/s.
double expected_variance_optimal(const VarianceConstants& c, std::size_t sample_size);

/// Matrix analogues of the two functions above; the "variance" is the
/// expected squared Frobenius deviation from the exact product.
double expected_frobenius_error_uniform(const VarianceConstants& c,
                                        std::size_t sample_size);
double expected_frobenius_error_optimal(const VarianceConstants& c,
                                        std::size_t sample_size);

struct EnumeratedMoments {
    double mean;
    /// E[(shat - a^T b)^2] over all realizations (equals the variance for an
    /// unbiased distribution).
    double variance;
};

/// Exact sketch moments by exhaustive enumeration of all n^s realizations,
/// each weighted by its product probability.  Guarded to n^s <= 10^6.
EnumeratedMoments enumerate_inner_moments(const DenseVector& a, const DenseVector& b,
                                          const IndexDistribution& dist,
                                          std::size_t sample_size);

struct EnumeratedMatrixMoments {
    DenseMatrix mean;
    /// E[|sketch - AB|_F^2] over all realizations.
    double expected_sq_frobenius_error;
};

EnumeratedMatrixMoments enumerate_matmul_moments(const DenseMatrix& A,
                                                 const DenseMatrix& B,
                                                 const IndexDistribution& dist,
                                                 std::size_t sample_size);

/// Cost-per-accuracy curve  f(M) = (M+1)^2 / (M * ln(M)^2)  governing the
/// choice of the per-level refinement factor; minimized over the integers at
/// M = 11.
double complexity_curve(double M);

/// Constants feeding the sample-size planner:
///   c1 = C_f^2 (n nu + mu)
///   c2 = 2 C_f^2 (M+1) (n nu + mu) + 2 var_P
///   c3 = md (1 + 1/M)        (md = 1 for the inner-product case)
struct TheoremConstants {
    double c1;
    double c2;
    double c3;
};

TheoremConstants theorem_constants(double lipschitz, const VarianceConstants& c,
                                   std::size_t M, double var_P, std::size_t md);

/// Plain-average moment estimation from model draws (default count 10^4);
/// draw k uses substream (seed, 0, k).
MomentTable estimate_inner_moments(const VectorPairModel& model, std::size_t count,
                                   std::uint64_t seed);
MomentTable estimate_matrix_moments(const MatrixPairModel& model, std::size_t count,
                                    std::uint64_t seed);

} // namespace mlsketch
