#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mlsketch/models.hpp"
#include "mlsketch/planner.hpp"
#include "mlsketch/sampling.hpp"
#include "mlsketch/tensor.hpp"

namespace mlsketch {

/// Per-level summary of a multilevel run.  `estimate` is the level's average
/// coupled difference (the level-0 term for l = 0), `sample_mean_of_squares`
/// averages the squared difference (squared Frobenius norm in the matrix
/// case) for variance diagnostics, and `cost_units` counts sampled-index
/// contributions: N_l * (M^l + M^(l-1) for l > 0), times m*d output entries
/// in the matrix case.
template <class ValueT>
struct LevelStatistic {
    std::size_t level;
    ValueT estimate;
    long long replication_count;
    double sample_mean_of_squares;
    long long cost_units;
};

template <class ValueT>
struct EstimateReport {
    ValueT value;
    std::vector<LevelStatistic<ValueT>> per_level;  // empty for the MC baselines
    long long total_cost_units;
    double wall_time_seconds;
    std::uint64_t seed;
};

/// Test hook observing each coupled difference: (level, replication, fine
/// realization, coarse realization).  Only invoked for levels >= 1.
using CouplingProbe = std::function<void(std::size_t, long long, const Realization&,
                                         const Realization&)>;

struct EstimatorOptions {
    int threads = 1;
    /// Setting a probe forces sequential execution so observations arrive in
    /// deterministic (level, replication) order.
    CouplingProbe probe{};
};

/// Multilevel estimate of E[f(a^T b)] under the plan's schedule.
///
/// Replication k of level l owns substream (seed, l, k), draws a fresh (a, b)
/// pair and a fresh realization of M^l uniform indices, and evaluates
/// f(fine sketch) - f(coarse sketch on the first M^(l-1) indices); level 0
/// evaluates f of the single-index sketch.  Partial sums are reduced over
/// fixed-width chunks in (level, replication) order, so the report is
/// bit-identical for any thread count.
EstimateReport<double> mlmc_inner(const VectorPairModel& model,
                                  const TargetFunction& f, const LevelPlan& plan,
                                  std::uint64_t seed,
                                  const EstimatorOptions& options = {});

/// Multilevel estimate of E[f applied entrywise to AB]; same scheme with
/// column/row outer-product sketches.
EstimateReport<DenseMatrix> mlmc_matmul(const MatrixPairModel& model,
                                        const TargetFunction& f,
                                        const LevelPlan& plan, std::uint64_t seed,
                                        const EstimatorOptions& options = {});

/// Single-level baseline: the average of f(sketch at M^L uniform indices)
/// over N fresh draws.  Draw k owns substream (seed, mc tag, k).
EstimateReport<double> mc_inner(const VectorPairModel& model, const TargetFunction& f,
                                std::size_t L, long long N, std::size_t M,
                                std::uint64_t seed,
                                const EstimatorOptions& options = {});

EstimateReport<DenseMatrix> mc_matmul(const MatrixPairModel& model,
                                      const TargetFunction& f, std::size_t L,
                                      long long N, std::size_t M, std::uint64_t seed,
                                      const EstimatorOptions& options = {});

} // namespace mlsketch
