#include "mlsketch/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mlsketch/parallel.hpp"

namespace mlsketch {

VectorPairModel paper_inner_model() {
    const std::size_t n = 1000;
    return VectorPairModel{
        n, "paper-inner", [n](RngStream& rng) {
            std::vector<double> a(n), b(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double z = rng.normal();
                a[j] = (static_cast<double>(j + 1) / 50.0) * (0.5 - z);
            }
            for (std::size_t j = 0; j < n; ++j) {
                const double w = static_cast<double>(rng.poisson(10.0));
                const double e = rng.exponential();
                b[j] = std::cos(w + 2.0 * e);
            }
            return std::make_pair(DenseVector(std::move(a)), DenseVector(std::move(b)));
        }};
}

MatrixPairModel paper_matrix_model() {
    const std::size_t m = 10, n = 1000, d = 10;
    return MatrixPairModel{
        m, n, d, "paper-matrix", [m, n, d](RngStream& rng) {
            std::vector<double> A(m * n), B(n * d);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double z = rng.normal();
                    const double x = (static_cast<double>(j + 1) / 100.0) * (0.5 - z);
                    const double g = rng.normal();
                    A[i * n + j] = std::sin(x) + g * x;
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < d; ++k) {
                    const double p = static_cast<double>(rng.poisson(10.0));
                    B[j * d + k] = std::cos(p) * heaviside(5.0 - p);
                }
            }
            return std::make_pair(DenseMatrix(m, n, std::move(A)),
                                  DenseMatrix(n, d, std::move(B)));
        }};
}

VectorPairModel constant_ones_model(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("constant_ones_model: n must be positive");
    }
    return VectorPairModel{n, "constant-ones", [n](RngStream&) {
                               return std::make_pair(DenseVector(n, 1.0),
                                                     DenseVector(n, 1.0));
                           }};
}

MatrixPairModel constant_ones_matrix_model(std::size_t m, std::size_t n,
                                           std::size_t d) {
    if (m == 0 || n == 0 || d == 0) {
        throw std::invalid_argument(
            "constant_ones_matrix_model: dimensions must be positive");
    }
    return MatrixPairModel{m, n, d, "constant-ones", [m, n, d](RngStream&) {
                               return std::make_pair(DenseMatrix(m, n, 1.0),
                                                     DenseMatrix(n, d, 1.0));
                           }};
}

VectorPairModel deterministic_model(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("deterministic_model: n must be positive");
    }
    return VectorPairModel{n, "deterministic", [n](RngStream&) {
                               std::vector<double> a(n), b(n);
                               for (std::size_t j = 0; j < n; ++j) {
                                   a[j] = static_cast<double>(j + 1);
                                   b[j] = static_cast<double>(n + j + 1);
                               }
                               return std::make_pair(DenseVector(std::move(a)),
                                                     DenseVector(std::move(b)));
                           }};
}

MatrixPairModel deterministic_matrix_model() {
    return MatrixPairModel{2, 2, 2, "deterministic", [](RngStream&) {
                               return std::make_pair(
                                   DenseMatrix::from_rows({{1, 2}, {3, 4}}),
                                   DenseMatrix::from_rows({{5, 6}, {7, 8}}));
                           }};
}

TargetFunction target_identity() {
    return TargetFunction{[](double x) { return x; }, 1.0, "identity"};
}

TargetFunction target_f1() {
    return TargetFunction{[](double x) { return std::abs(x) * heaviside(x - 10.0); },
                          1.0, "f1"};
}

TargetFunction target_f2(double zeta) {
    if (!(zeta > 0.0)) {
        throw std::invalid_argument("target_f2: zeta must be positive");
    }
    // No global Lipschitz constant is claimed for this target; 1.0 is the
    // nominal value used wherever a constant is needed.
    return TargetFunction{
        [zeta](double x) { return x * x * std::sin(1.0 / (std::abs(x) + zeta)); },
        1.0, "f2"};
}

std::optional<VectorPairModel> vector_model_by_key(const std::string& key) {
    if (key == "paper-inner") return paper_inner_model();
    if (key == "constant-ones") return constant_ones_model(1000);
    if (key == "deterministic") return deterministic_model(2);
    return std::nullopt;
}

std::optional<MatrixPairModel> matrix_model_by_key(const std::string& key) {
    if (key == "paper-matrix") return paper_matrix_model();
    if (key == "constant-ones") return constant_ones_matrix_model(10, 1000, 10);
    if (key == "deterministic") return deterministic_matrix_model();
    return std::nullopt;
}

std::optional<TargetFunction> target_by_key(const std::string& key) {
    if (key == "identity") return target_identity();
    if (key == "f1") return target_f1();
    if (key == "f2") return target_f2();
    return std::nullopt;
}

ScalarReference reference_inner(const VectorPairModel& model, const TargetFunction& f,
                                std::size_t count, std::uint64_t seed, int threads) {
    if (count == 0) {
        throw std::invalid_argument("reference_inner: count must be positive");
    }
    const std::size_t n_chunks =
        (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
    std::vector<double> sums(n_chunks, 0.0), sq_sums(n_chunks, 0.0);
    detail::parallel_chunks(count, detail::kReductionChunk, threads,
                            [&](std::size_t c, std::size_t begin, std::size_t end) {
                                double s = 0.0, s2 = 0.0;
                                for (std::size_t k = begin; k < end; ++k) {
                                    RngStream rng = RngStream::derive(seed, 0, k);
                                    auto [a, b] = model.draw(rng);
                                    const double v = f.f(exact_inner(a, b));
                                    s += v;
                                    s2 += v * v;
                                }
                                sums[c] = s;
                                sq_sums[c] = s2;
                            });
    double sum = 0.0, sq = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        sum += sums[c];
        sq += sq_sums[c];
    }
    const double mean = sum / static_cast<double>(count);
    double se = 0.0;
    if (count > 1) {
        const double var =
            std::max(0.0, (sq - static_cast<double>(count) * mean * mean) /
                              static_cast<double>(count - 1));
        se = std::sqrt(var / static_cast<double>(count));
    }
    return ScalarReference{mean, se, count};
}

MatrixReference reference_matmul(const MatrixPairModel& model, const TargetFunction& f,
                                 std::size_t count, std::uint64_t seed, int threads) {
    if (count == 0) {
        throw std::invalid_argument("reference_matmul: count must be positive");
    }
    const std::size_t cells = model.m * model.d;
    const std::size_t n_chunks =
        (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
    std::vector<std::vector<double>> sums(n_chunks);
    std::vector<double> sq_sums(n_chunks, 0.0);  // sum of ||f(AB)||_F^2
    detail::parallel_chunks(
        count, detail::kReductionChunk, threads,
        [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::vector<double> s(cells, 0.0);
            double s2 = 0.0;
            for (std::size_t k = begin; k < end; ++k) {
                RngStream rng = RngStream::derive(seed, 0, k);
                auto [A, B] = model.draw(rng);
                const DenseMatrix P = exact_matmul(A, B);
                for (std::size_t t = 0; t < cells; ++t) {
                    const double v = f.f(P.data()[t]);
                    s[t] += v;
                    s2 += v * v;
                }
            }
            sums[c] = std::move(s);
            sq_sums[c] = s2;
        });
    std::vector<double> total(cells, 0.0);
    double sq = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        for (std::size_t t = 0; t < cells; ++t) {
            total[t] += sums[c][t];
        }
        sq += sq_sums[c];
    }
    for (double& v : total) {
        v /= static_cast<double>(count);
    }
    DenseMatrix mean(model.m, model.d, std::move(total));
    double se = 0.0;
    if (count > 1) {
        // sum over entries of the per-entry variance of the mean
        const double mean_sq = frobenius_norm_sq(mean);
        const double var = std::max(
            0.0, (sq - static_cast<double>(count) * mean_sq) /
                     static_cast<double>(count - 1));
        se = std::sqrt(var / static_cast<double>(count));
    }
    return MatrixReference{std::move(mean), se, count};
}

} // namespace mlsketch
