#include "mlsketch/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlsketch {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

/// Ceiling with a small absolute snap so values that are integers in exact
/// arithmetic (e.g. 2*(L+1)*c2/eps^2 at eps = 0.1) do not round up twice.
long long ceil_snapped(double x) {
    const double eps = 1e-9 + 1e-12 * std::abs(x);
    return static_cast<long long>(std::ceil(x - eps));
}

void check_plan_inputs(double epsilon, std::size_t M) {
    if (!(epsilon > 0.0) || !(epsilon < kInvE)) {
        throw std::invalid_argument("planner: epsilon must lie in (0, 1/e)");
    }
    if (M < 2) {
        throw std::invalid_argument("planner: M must be at least 2");
    }
}

} // namespace

long long int_pow(std::size_t M, std::size_t l) {
    long long p = 1;
    for (std::size_t i = 0; i < l; ++i) {
        p *= static_cast<long long>(M);
    }
    return p;
}

std::size_t plan_L(double epsilon, std::size_t M, double c1) {
    check_plan_inputs(epsilon, M);
    if (!(c1 > 0.0)) {
        throw std::invalid_argument("plan_L: c1 must be positive");
    }
    const double arg = 2.0 * c1 * c1 / (epsilon * epsilon);
    const double x = std::log(arg) / std::log(static_cast<double>(M));
    const long long L = ceil_snapped(x);
    return L > 0 ? static_cast<std::size_t>(L) : 0;
}

std::size_t plan_L_capped(double epsilon, std::size_t M, double c1, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("plan_L_capped: n must be positive");
    }
    const std::size_t base = plan_L(epsilon, M, c1);
    // Smallest L with M^L >= n, in integer arithmetic to dodge log rounding.
    std::size_t cap = 0;
    unsigned long long p = 1;
    while (p < n) {
        p *= M;
        ++cap;
    }
    return base > cap ? base : cap;
}

std::vector<long long> plan_Nl(double epsilon, std::size_t M, std::size_t L,
                               double c2) {
    check_plan_inputs(epsilon, M);
    if (!(c2 > 0.0)) {
        throw std::invalid_argument("plan_Nl: c2 must be positive");
    }
    const double common =
        2.0 * static_cast<double>(L + 1) * c2 / (epsilon * epsilon);
    std::vector<long long> N(L + 1);
    double Ml = 1.0;
    for (std::size_t l = 0; l <= L; ++l) {
        const long long v = ceil_snapped(common / Ml);
        N[l] = v > 1 ? v : 1;
        Ml *= static_cast<double>(M);
    }
    return N;
}

long long plan_N_mc(double epsilon, double c2) {
    if (!(epsilon > 0.0) || !(epsilon < kInvE)) {
        throw std::invalid_argument("planner: epsilon must lie in (0, 1/e)");
    }
    if (!(c2 > 0.0)) {
        throw std::invalid_argument("plan_N_mc: c2 must be positive");
    }
    const long long v = ceil_snapped(2.0 * c2 / (epsilon * epsilon));
    return v > 1 ? v : 1;
}

LevelPlan make_plan(double epsilon, std::size_t M, double c1, double c2,
                    std::size_t n) {
    const std::size_t base = plan_L(epsilon, M, c1);
    const std::size_t L = plan_L_capped(epsilon, M, c1, n);
    return LevelPlan{M,  L, plan_Nl(epsilon, M, L, c2), epsilon, c1, c2,
                     L > base};
}

CostReport predicted_cost(const LevelPlan& plan, long long N_mc, std::size_t md) {
    if (md == 0) {
        throw std::invalid_argument("predicted_cost: md must be positive");
    }
    if (plan.N.size() != plan.L + 1) {
        throw std::invalid_argument("predicted_cost: malformed plan");
    }
    long long mlmc = 0;
    for (std::size_t l = 0; l <= plan.L; ++l) {
        long long per_rep = int_pow(plan.M, l);
        if (l > 0) {
            per_rep += int_pow(plan.M, l - 1);
        }
        mlmc += plan.N[l] * per_rep * static_cast<long long>(md);
    }
    const long long mc =
        N_mc * int_pow(plan.M, plan.L) * static_cast<long long>(md);
    const double lg = std::log(plan.epsilon);
    const double bound = c4_constant(plan.c1, plan.c2, plan.M, md) /
                         (plan.epsilon * plan.epsilon) * lg * lg;
    return CostReport{mlmc, mc, bound};
}

double c4_constant(double c1, double c2, std::size_t M, std::size_t md) {
    if (M < 2 || md == 0 || !(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("c4_constant: invalid inputs");
    }
    const double Md = static_cast<double>(M);
    const double c3 = static_cast<double>(md) * (1.0 + 1.0 / Md);
    const double c5 =
        (1.0 + std::max(0.0, std::log(2.0 * c1 * c1))) / std::log(Md) + 2.0;
    return 2.0 * c2 * c3 * c5 * c5 + 2.0 * c3 * c1 * c1 * Md * Md / (Md - 1.0);
}

double c6_constant(double c1, double c2, std::size_t M, std::size_t md) {
    if (M < 2 || md == 0 || !(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("c6_constant: invalid inputs");
    }
    const double Md = static_cast<double>(M);
    const double c3 = static_cast<double>(md) * (1.0 + 1.0 / Md);
    const double e_m2 = std::exp(-2.0);
    return 2.0 * c1 * c1 * c3 * Md * Md * (2.0 * c2 + e_m2);
}

} // namespace mlsketch
