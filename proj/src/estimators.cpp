#include "mlsketch/estimators.hpp"

#include <chrono>
#include <span>
#include <stdexcept>

#include "mlsketch/parallel.hpp"
#include "mlsketch/sketch.hpp"

namespace mlsketch {

namespace {

// Substream tag separating MC baseline draws from multilevel level indices.
constexpr std::uint64_t kMcTag = 0xFFFFFFFFULL;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_plan(const LevelPlan& plan) {
    if (plan.M < 2 || plan.N.size() != plan.L + 1) {
        throw std::invalid_argument("estimator: malformed plan");
    }
    for (long long n : plan.N) {
        if (n < 1) {
            throw std::invalid_argument("estimator: all N_l must be at least 1");
        }
    }
}

long long level_cost_units(const LevelPlan& plan, std::size_t l, std::size_t md) {
    long long per_rep = int_pow(plan.M, l);
    if (l > 0) {
        per_rep += int_pow(plan.M, l - 1);
    }
    return plan.N[l] * per_rep * static_cast<long long>(md);
}

} // namespace

EstimateReport<double> mlmc_inner(const VectorPairModel& model,
                                  const TargetFunction& f, const LevelPlan& plan,
                                  std::uint64_t seed,
                                  const EstimatorOptions& options) {
    check_plan(plan);
    const auto t0 = Clock::now();
    const IndexDistribution dist = IndexDistribution::uniform(model.n);
    const int threads = options.probe ? 1 : options.threads;

    EstimateReport<double> report{0.0, {}, 0, 0.0, seed};
    report.per_level.reserve(plan.L + 1);

    for (std::size_t l = 0; l <= plan.L; ++l) {
        const std::size_t fine = static_cast<std::size_t>(int_pow(plan.M, l));
        const std::size_t coarse = l > 0 ? fine / plan.M : 0;
        const std::size_t count = static_cast<std::size_t>(plan.N[l]);
        const std::size_t n_chunks =
            (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
        std::vector<double> sums(n_chunks, 0.0), sq_sums(n_chunks, 0.0);
        detail::parallel_chunks(
            count, detail::kReductionChunk, threads,
            [&](std::size_t c, std::size_t begin, std::size_t end) {
                double s = 0.0, s2 = 0.0;
                for (std::size_t k = begin; k < end; ++k) {
                    RngStream rng = RngStream::derive(seed, l, k);
                    auto [a, b] = model.draw(rng);
                    const Realization r = draw_realization(dist, fine, rng);
                    double v = f.f(sketch_inner(a, b, r, dist));
                    if (l > 0) {
                        const std::span<const std::uint32_t> pre(r.indices.data(),
                                                                 coarse);
                        v -= f.f(sketch_inner(a, b, pre, dist));
                        if (options.probe) {
                            options.probe(l, static_cast<long long>(k), r,
                                          prefix(r, coarse));
                        }
                    }
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
        const double inv_n = 1.0 / static_cast<double>(count);
        const long long cost = level_cost_units(plan, l, 1);
        report.per_level.push_back(LevelStatistic<double>{
            l, sum * inv_n, plan.N[l], sq * inv_n, cost});
        report.total_cost_units += cost;
    }
    for (const auto& stat : report.per_level) {
        report.value += stat.estimate;
    }
    report.wall_time_seconds = seconds_since(t0);
    return report;
}

EstimateReport<DenseMatrix> mlmc_matmul(const MatrixPairModel& model,
                                        const TargetFunction& f,
                                        const LevelPlan& plan, std::uint64_t seed,
                                        const EstimatorOptions& options) {
    check_plan(plan);
    const auto t0 = Clock::now();
    const IndexDistribution dist = IndexDistribution::uniform(model.n);
    const int threads = options.probe ? 1 : options.threads;
    const std::size_t cells = model.m * model.d;
    const std::size_t md = cells;

    EstimateReport<DenseMatrix> report{DenseMatrix(model.m, model.d, 0.0), {}, 0,
                                       0.0, seed};
    report.per_level.reserve(plan.L + 1);

    for (std::size_t l = 0; l <= plan.L; ++l) {
        const std::size_t fine = static_cast<std::size_t>(int_pow(plan.M, l));
        const std::size_t coarse = l > 0 ? fine / plan.M : 0;
        const std::size_t count = static_cast<std::size_t>(plan.N[l]);
        const std::size_t n_chunks =
            (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
        std::vector<std::vector<double>> sums(n_chunks);
        std::vector<double> sq_sums(n_chunks, 0.0);
        detail::parallel_chunks(
            count, detail::kReductionChunk, threads,
            [&](std::size_t c, std::size_t begin, std::size_t end) {
                std::vector<double> s(cells, 0.0);
                double s2 = 0.0;
                for (std::size_t k = begin; k < end; ++k) {
                    RngStream rng = RngStream::derive(seed, l, k);
                    auto [A, B] = model.draw(rng);
                    const Realization r = draw_realization(dist, fine, rng);
                    DenseMatrix v = sketch_matmul(A, B, r, dist);
                    for (double& x : v.data()) {
                        x = f.f(x);
                    }
                    if (l > 0) {
                        const std::span<const std::uint32_t> pre(r.indices.data(),
                                                                 coarse);
                        const DenseMatrix cv = sketch_matmul(A, B, pre, dist);
                        for (std::size_t t = 0; t < cells; ++t) {
                            v.data()[t] -= f.f(cv.data()[t]);
                        }
                        if (options.probe) {
                            options.probe(l, static_cast<long long>(k), r,
                                          prefix(r, coarse));
                        }
                    }
                    for (std::size_t t = 0; t < cells; ++t) {
                        const double x = v.data()[t];
                        s[t] += x;
                        s2 += x * x;
                    }
                }
                sums[c] = std::move(s);
                sq_sums[c] = s2;
            });
        std::vector<double> sum(cells, 0.0);
        double sq = 0.0;
        for (std::size_t c = 0; c < n_chunks; ++c) {
            for (std::size_t t = 0; t < cells; ++t) {
                sum[t] += sums[c][t];
            }
            sq += sq_sums[c];
        }
        const double inv_n = 1.0 / static_cast<double>(count);
        for (double& v : sum) {
            v *= inv_n;
        }
        const long long cost = level_cost_units(plan, l, md);
        report.per_level.push_back(LevelStatistic<DenseMatrix>{
            l, DenseMatrix(model.m, model.d, std::move(sum)), plan.N[l],
            sq * inv_n, cost});
        report.total_cost_units += cost;
    }
    for (const auto& stat : report.per_level) {
        for (std::size_t t = 0; t < cells; ++t) {
            report.value.data()[t] += stat.estimate.data()[t];
        }
    }
    report.wall_time_seconds = seconds_since(t0);
    return report;
}

EstimateReport<double> mc_inner(const VectorPairModel& model, const TargetFunction& f,
                                std::size_t L, long long N, std::size_t M,
                                std::uint64_t seed,
                                const EstimatorOptions& options) {
    if (M < 2 || N < 1) {
        throw std::invalid_argument("mc_inner: need M >= 2 and N >= 1");
    }
    const auto t0 = Clock::now();
    const IndexDistribution dist = IndexDistribution::uniform(model.n);
    const std::size_t s = static_cast<std::size_t>(int_pow(M, L));
    const std::size_t count = static_cast<std::size_t>(N);
    const std::size_t n_chunks =
        (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
    std::vector<double> sums(n_chunks, 0.0);
    detail::parallel_chunks(count, detail::kReductionChunk, options.threads,
                            [&](std::size_t c, std::size_t begin, std::size_t end) {
                                double acc = 0.0;
                                for (std::size_t k = begin; k < end; ++k) {
                                    RngStream rng = RngStream::derive(seed, kMcTag, k);
                                    auto [a, b] = model.draw(rng);
                                    const Realization r =
                                        draw_realization(dist, s, rng);
                                    acc += f.f(sketch_inner(a, b, r, dist));
                                }
                                sums[c] = acc;
                            });
    double sum = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        sum += sums[c];
    }
    EstimateReport<double> report{sum / static_cast<double>(count),
                                  {},
                                  N * int_pow(M, L),
                                  0.0,
                                  seed};
    report.wall_time_seconds = seconds_since(t0);
    return report;
}

EstimateReport<DenseMatrix> mc_matmul(const MatrixPairModel& model,
                                      const TargetFunction& f, std::size_t L,
                                      long long N, std::size_t M, std::uint64_t seed,
                                      const EstimatorOptions& options) {
    if (M < 2 || N < 1) {
        throw std::invalid_argument("mc_matmul: need M >= 2 and N >= 1");
    }
    const auto t0 = Clock::now();
    const IndexDistribution dist = IndexDistribution::uniform(model.n);
    const std::size_t s = static_cast<std::size_t>(int_pow(M, L));
    const std::size_t cells = model.m * model.d;
    const std::size_t count = static_cast<std::size_t>(N);
    const std::size_t n_chunks =
        (count + detail::kReductionChunk - 1) / detail::kReductionChunk;
    std::vector<std::vector<double>> sums(n_chunks);
    detail::parallel_chunks(
        count, detail::kReductionChunk, options.threads,
        [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::vector<double> acc(cells, 0.0);
            for (std::size_t k = begin; k < end; ++k) {
                RngStream rng = RngStream::derive(seed, kMcTag, k);
                auto [A, B] = model.draw(rng);
                const Realization r = draw_realization(dist, s, rng);
                const DenseMatrix v = sketch_matmul(A, B, r, dist);
                for (std::size_t t = 0; t < cells; ++t) {
                    acc[t] += f.f(v.data()[t]);
                }
            }
            sums[c] = std::move(acc);
        });
    std::vector<double> total(cells, 0.0);
    for (std::size_t c = 0; c < n_chunks; ++c) {
        for (std::size_t t = 0; t < cells; ++t) {
            total[t] += sums[c][t];
        }
    }
    for (double& v : total) {
        v /= static_cast<double>(count);
    }
    EstimateReport<DenseMatrix> report{
        DenseMatrix(model.m, model.d, std::move(total)),
        {},
        N * int_pow(M, L) * static_cast<long long>(cells),
        0.0,
        seed};
    report.wall_time_seconds = seconds_since(t0);
    return report;
}

} // namespace mlsketch
