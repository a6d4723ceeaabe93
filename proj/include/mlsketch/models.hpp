#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "mlsketch/rng.hpp"
#include "mlsketch/tensor.hpp"

namespace mlsketch {

/// Random vector-pair stream (a, b) in R^n.  `draw` consumes the stream in a
/// fixed documented order (all of a, then all of b), so a draw is reproducible
/// from the stream state alone.
struct VectorPairModel {
    std::size_t n;
    std::string label;
    std::function<std::pair<DenseVector, DenseVector>(RngStream&)> draw;
};

/// Random matrix-pair stream A (m x n), B (n x d); A is generated row-major
/// first, then B row-major.
struct MatrixPairModel {
    std::size_t m;
    std::size_t n;
    std::size_t d;
    std::string label;
    std::function<std::pair<DenseMatrix, DenseMatrix>(RngStream&)> draw;
};

/// Scalar post-processing function applied to sketch outputs, with the
/// Lipschitz constant used by the planner's theoretical constants.
struct TargetFunction {
    std::function<double(double)> f;
    double lipschitz_constant;
    std::string label;
};

/// Step function with H(0) = 1.
inline double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

/// a_j = (j/50) * (0.5 - N(0,1)),  b_j = cos(Poisson(10) + 2*Exponential(1)),
/// n = 1000, fresh variates per coordinate.
VectorPairModel paper_inner_model();

/// A_ij = g1((j/100) * (0.5 - z_ij)) with g1(x) = sin(x) + N(0,1)*x (a fresh
/// normal per entry), B_jk = g2(Poisson(10)) with g2(x) = cos(x) * H(5 - x);
/// m = d = 10, n = 1000.
MatrixPairModel paper_matrix_model();

/// a = b = ones(n); every sketch of it is exactly n.
VectorPairModel constant_ones_model(std::size_t n);

/// A = ones(m x n), B = ones(n x d).
MatrixPairModel constant_ones_matrix_model(std::size_t m, std::size_t n, std::size_t d);

/// Fixed vectors a_j = j, b_j = n + j  (n = 2 gives a = (1,2), b = (3,4)).
VectorPairModel deterministic_model(std::size_t n);

/// Fixed 2x2 pair A = [[1,2],[3,4]], B = [[5,6],[7,8]].
MatrixPairModel deterministic_matrix_model();

TargetFunction target_identity();

/// f(x) = |x| * H(x - 10).
TargetFunction target_f1();

/// f(x) = x^2 * sin(1 / (|x| + zeta)); zeta > 0 keeps the argument finite.
TargetFunction target_f2(double zeta = 1e-12);

/// String-keyed lookup used by the CLI config; empty optional for unknown keys.
std::optional<VectorPairModel> vector_model_by_key(const std::string& key);
std::optional<MatrixPairModel> matrix_model_by_key(const std::string& key);
std::optional<TargetFunction> target_by_key(const std::string& key);

struct ScalarReference {
    double value;
    double std_error;
    std::size_t sample_count;
};

struct MatrixReference {
    DenseMatrix value;
    double std_error;   // Frobenius-norm standard error of the mean
    std::size_t sample_count;
};

/// Monte Carlo ground truth for E[f(a^T b)]: the average of f over exact
/// inner products of `count` fresh draws, with its standard error.  Draw k
/// uses substream (seed, 0, k), so the result is independent of `threads`.
ScalarReference reference_inner(const VectorPairModel& model, const TargetFunction& f,
                                std::size_t count, std::uint64_t seed,
                                int threads = 1);

/// Same for E[f applied entrywise to AB], with a Frobenius standard error.
MatrixReference reference_matmul(const MatrixPairModel& model, const TargetFunction& f,
                                 std::size_t count, std::uint64_t seed,
                                 int threads = 1);

} // namespace mlsketch
