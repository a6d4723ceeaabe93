#pragma once

#include <cstdint>
#include <vector>

#include "mlsketch/analysis.hpp"

namespace mlsketch {

/// A multilevel sampling schedule: level sizes M^0, ..., M^L with N[l]
/// replications of the coupled difference at level l.
struct LevelPlan {
    std::size_t M;
    std::size_t L;
    std::vector<long long> N;   // N[l], l = 0..L
    double epsilon;
    double c1;
    double c2;
    bool n_cap_applied;         // true when ceil(ln n / ln M) determined L
};

/// Depth needed to push the sketch bias below the target:
///   L = ceil( ln(2 c1^2 / eps^2) / ln M ), floored at 0.
/// Requires 0 < eps < 1/e and M >= 2.
std::size_t plan_L(double epsilon, std::size_t M, double c1);

/// plan_L, but never finer than one index per ambient dimension:
///   max(plan_L, ceil(ln n / ln M)).
std::size_t plan_L_capped(double epsilon, std::size_t M, double c1, std::size_t n);

/// Per-level replication counts N_l = ceil( 2 (L+1) c2 / (eps^2 M^l) ).
std::vector<long long> plan_Nl(double epsilon, std::size_t M, std::size_t L,
                               double c2);

/// Single-level baseline sample count N = ceil(2 c2 / eps^2).
long long plan_N_mc(double epsilon, double c2);

/// Full schedule with the dimension cap applied.
LevelPlan make_plan(double epsilon, std::size_t M, double c1, double c2,
                    std::size_t n);

/// Index-contribution cost accounting (one unit = one sampled index feeding
/// one output entry; md = 1 for the inner-product case):
///   mlmc_cost = sum_l N_l (M^l + [l>0] M^(l-1)) * md
///   mc_cost   = N * M^L * md
/// `bound` is the theoretical multilevel budget c4 / (eps^2 (ln eps)^-2)
/// evaluated for the plan's c1, c2.
struct CostReport {
    long long mlmc_cost;
    long long mc_cost;
    double bound;
};

CostReport predicted_cost(const LevelPlan& plan, long long N_mc, std::size_t md);

/// Constant in the multilevel cost bound  cost <= c4 * eps^-2 * (ln eps)^2.
double c4_constant(double c1, double c2, std::size_t M, std::size_t md);

/// Constant in the single-level cost bound  cost <= c6 * eps^-4.
double c6_constant(double c1, double c2, std::size_t M, std::size_t md);

/// M^l as an integer.
long long int_pow(std::size_t M, std::size_t l);

} // namespace mlsketch
