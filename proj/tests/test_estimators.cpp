#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "mlsketch/estimators.hpp"

using namespace mlsketch;

namespace {

LevelPlan fixed_plan(std::size_t M, std::size_t L, std::vector<long long> N) {
    return LevelPlan{M, L, std::move(N), 0.1, 1.0, 1.0, false};
}

double combined_se(const EstimateReport<double>& r) {
    double v = 0.0;
    for (const auto& s : r.per_level) {
        const double var = s.sample_mean_of_squares - s.estimate * s.estimate;
        v += std::max(0.0, var) / static_cast<double>(s.replication_count);
    }
    return std::sqrt(v);
}

double combined_se_frob(const EstimateReport<DenseMatrix>& r) {
    double v = 0.0;
    for (const auto& s : r.per_level) {
        const double var =
            s.sample_mean_of_squares - frobenius_norm_sq(s.estimate);
        v += std::max(0.0, var) / static_cast<double>(s.replication_count);
    }
    return std::sqrt(v);
}

} // namespace

TEST_CASE("constant data collapses every level above zero") {
    const auto model = constant_ones_model(37);
    const auto plan = fixed_plan(3, 2, {9, 3, 1});
    const auto r = mlmc_inner(model, target_identity(), plan, 77);
    CHECK(r.value == 37.0);
    REQUIRE(r.per_level.size() == 3);
    CHECK(r.per_level[0].estimate == 37.0);
    CHECK(r.per_level[1].estimate == 0.0);
    CHECK(r.per_level[2].estimate == 0.0);
    CHECK(r.per_level[1].sample_mean_of_squares == 0.0);
    CHECK(r.seed == 77);
    CHECK(r.wall_time_seconds >= 0.0);

    const auto mm = constant_ones_matrix_model(3, 4, 2);
    const auto rm = mlmc_matmul(mm, target_identity(), plan, 77);
    for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = 1; j <= 2; ++j) {
            CHECK(rm.value(i, j) == 4.0);
        }
    }
    CHECK(frobenius_norm_sq(rm.per_level[2].estimate) == 0.0);
}

TEST_CASE("cost accounting per level") {
    const auto model = deterministic_model(2);
    const auto plan = fixed_plan(10, 3, {800, 80, 8, 1});
    const auto r = mlmc_inner(model, target_identity(), plan, 5);
    REQUIRE(r.per_level.size() == 4);
    CHECK(r.per_level[0].cost_units == 800);
    CHECK(r.per_level[1].cost_units == 80 * 11);
    CHECK(r.per_level[2].cost_units == 8 * 110);
    CHECK(r.per_level[3].cost_units == 1100);
    CHECK(r.total_cost_units == 3660);
    CHECK(r.per_level[2].replication_count == 8);
    CHECK(r.per_level[2].level == 2);

    const auto mm = deterministic_matrix_model();
    const auto small = fixed_plan(2, 2, {4, 2, 1});
    const auto rm = mlmc_matmul(mm, target_identity(), small, 5);
    CHECK(rm.per_level[0].cost_units == 4 * 1 * 4);
    CHECK(rm.per_level[1].cost_units == 2 * 3 * 4);
    CHECK(rm.per_level[2].cost_units == 1 * 6 * 4);
    CHECK(rm.total_cost_units == 16 * 4);
}

TEST_CASE("multilevel estimate is unbiased on the fixed 2-dimensional instance") {
    const auto model = deterministic_model(2);
    const auto plan = fixed_plan(2, 2, {100000, 100000, 100000});
    const auto r = mlmc_inner(model, target_identity(), plan, 2024);
    const double se = combined_se(r);
    // per-level variances 25, 12.5, 6.25 shrink geometrically with the level
    CHECK(r.per_level[0].sample_mean_of_squares - 121.0 ==
          doctest::Approx(25.0).epsilon(0.05));
    const double v1 = r.per_level[1].sample_mean_of_squares -
                      r.per_level[1].estimate * r.per_level[1].estimate;
    const double v2 = r.per_level[2].sample_mean_of_squares -
                      r.per_level[2].estimate * r.per_level[2].estimate;
    CHECK(v1 == doctest::Approx(12.5).epsilon(0.05));
    CHECK(v2 == doctest::Approx(6.25).epsilon(0.05));
    CHECK(std::abs(r.value - 11.0) <= 3.0 * se);

    double level_sum = 0.0;
    for (const auto& s : r.per_level) {
        level_sum += s.estimate;
    }
    CHECK(r.value == level_sum);
}

TEST_CASE("matrix multilevel estimate is unbiased on the fixed 2x2 pair") {
    const auto model = deterministic_matrix_model();
    const auto plan = fixed_plan(2, 2, {20000, 20000, 20000});
    const auto r = mlmc_matmul(model, target_identity(), plan, 99);
    const auto exact = DenseMatrix::from_rows({{19, 22}, {43, 50}});
    double gap = 0.0;
    for (std::size_t t = 0; t < 4; ++t) {
        const double d = r.value.data()[t] - exact.data()[t];
        gap += d * d;
    }
    CHECK(std::sqrt(gap) <= 3.0 * combined_se_frob(r));
    // single-draw spread at level 0 is 546, halving per level
    CHECK(r.per_level[0].sample_mean_of_squares - 5194.0 ==
          doctest::Approx(546.0).epsilon(0.1));
}

TEST_CASE("coupled-difference variance decays across levels on the random model") {
    // 200 replications per level give stable variance estimates; the geometric
    // gap between adjacent levels (factor ~M) dwarfs their sampling noise.
    const auto model = paper_inner_model();
    const auto f1 = target_f1();
    const auto plan = fixed_plan(7, 4, {200, 200, 200, 200, 200});
    int monotone_seeds = 0;
    for (std::uint64_t seed = 7000; seed < 7010; ++seed) {
        const auto r = mlmc_inner(model, f1, plan, seed);
        bool monotone = true;
        for (std::size_t l = 1; l + 1 <= 4; ++l) {
            const auto& lo = r.per_level[l];
            const auto& hi = r.per_level[l + 1];
            const double var_lo =
                lo.sample_mean_of_squares - lo.estimate * lo.estimate;
            const double var_hi =
                hi.sample_mean_of_squares - hi.estimate * hi.estimate;
            if (!(var_hi < var_lo)) {
                monotone = false;
            }
        }
        monotone_seeds += monotone ? 1 : 0;
    }
    CHECK(monotone_seeds >= 8);
}

TEST_CASE("multilevel and single-level estimates agree in expectation") {
    const auto model = deterministic_model(2);
    const auto id = target_identity();
    const auto ml = mlmc_inner(model, id, fixed_plan(2, 2, {40000, 40000, 40000}), 77);
    const auto mc = mc_inner(model, id, 2, 40000, 2, 78);
    // single-draw variance at 4 uniform indices is 25/4, so the baseline mean
    // has variance 25/(4 N); the multilevel side uses its empirical level sums
    const double mc_se = std::sqrt(25.0 / (4.0 * 40000.0));
    const double band = 3.0 * std::sqrt(combined_se(ml) * combined_se(ml) +
                                        mc_se * mc_se);
    CHECK(std::abs(ml.value - mc.value) <= band);
}

TEST_CASE("reports are bit-identical across seeds reuse and thread counts") {
    const auto model = paper_inner_model();
    const auto plan = fixed_plan(3, 2, {300, 100, 33});
    const auto a = mlmc_inner(model, target_f1(), plan, 314);
    const auto b = mlmc_inner(model, target_f1(), plan, 314);
    CHECK(a.value == b.value);
    CHECK(a.per_level[2].sample_mean_of_squares ==
          b.per_level[2].sample_mean_of_squares);

    EstimatorOptions four;
    four.threads = 4;
    const auto c = mlmc_inner(model, target_f1(), plan, 314, four);
    CHECK(a.value == c.value);
    CHECK(a.per_level[1].estimate == c.per_level[1].estimate);

    const auto d = mlmc_inner(model, target_f1(), plan, 315);
    CHECK(a.value != d.value);

    const auto mm = paper_matrix_model();
    const auto small = fixed_plan(4, 1, {40, 10});
    const auto m1 = mlmc_matmul(mm, target_f2(), small, 11);
    const auto m4 = mlmc_matmul(mm, target_f2(), small, 11, four);
    CHECK(m1.value(5, 5) == m4.value(5, 5));
    CHECK(m1.value(10, 1) == m4.value(10, 1));
}

TEST_CASE("coupling probe sees nested realizations in deterministic order") {
    const auto model = deterministic_model(2);
    const auto plan = fixed_plan(3, 2, {5, 4, 3});
    struct Seen {
        std::size_t level;
        long long rep;
        std::vector<std::uint32_t> fine;
        std::vector<std::uint32_t> coarse;
    };
    std::vector<Seen> seen;
    EstimatorOptions opt;
    opt.threads = 8;   // the probe forces sequential execution anyway
    opt.probe = [&](std::size_t level, long long rep, const Realization& fine,
                    const Realization& coarse) {
        seen.push_back(Seen{level, rep, fine.indices, coarse.indices});
    };
    mlmc_inner(model, target_identity(), plan, 321, opt);

    REQUIRE(seen.size() == 4 + 3);   // levels 1 and 2 only
    CHECK(seen[0].level == 1);
    CHECK(seen[0].rep == 0);
    CHECK(seen[3].rep == 3);
    CHECK(seen[4].level == 2);
    for (const auto& s : seen) {
        CHECK(s.fine.size() == (s.level == 1 ? 3u : 9u));
        REQUIRE(s.coarse.size() == s.fine.size() / 3);
        for (std::size_t i = 0; i < s.coarse.size(); ++i) {
            CHECK(s.coarse[i] == s.fine[i]);   // coarse = prefix of fine
        }
    }
    // fresh realization per replication: level-2 draws are not all identical
    CHECK((seen[4].fine != seen[5].fine || seen[5].fine != seen[6].fine));
}

TEST_CASE("malformed plans are rejected") {
    const auto model = deterministic_model(2);
    LevelPlan bad{2, 2, {10, 10}, 0.1, 1.0, 1.0, false};   // missing a level
    CHECK_THROWS_AS(mlmc_inner(model, target_identity(), bad, 1),
                    std::invalid_argument);
    LevelPlan zero{2, 1, {10, 0}, 0.1, 1.0, 1.0, false};
    CHECK_THROWS_AS(mlmc_inner(model, target_identity(), zero, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_inner(model, target_identity(), 2, 0, 2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_inner(model, target_identity(), 2, 10, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("single-level baseline") {
    const auto ones = constant_ones_model(7);
    const auto r = mc_inner(ones, target_identity(), 3, 11, 2, 5);
    CHECK(r.value == 7.0);
    CHECK(r.per_level.empty());
    CHECK(r.total_cost_units == 11 * 8);
    CHECK(r.seed == 5);

    const auto det = deterministic_model(2);
    const auto r0 = mc_inner(det, target_identity(), 0, 5, 2, 17);
    CHECK(r0.value >= 6.0);
    CHECK(r0.value <= 16.0);
    CHECK(r0.total_cost_units == 5);

    // sample size 2^3 = 8 gives variance 25/8; N = 20000 draws
    const auto rb = mc_inner(det, target_identity(), 3, 20000, 2, 41);
    const double se = std::sqrt(25.0 / 8.0 / 20000.0);
    CHECK(std::abs(rb.value - 11.0) <= 3.0 * se);

    const auto om = constant_ones_matrix_model(2, 3, 2);
    const auto rm = mc_matmul(om, target_identity(), 2, 6, 3, 5);
    CHECK(rm.value(1, 1) == 3.0);
    CHECK(rm.value(2, 2) == 3.0);
    CHECK(rm.total_cost_units == 6 * 9 * 4);

    const auto mm = paper_matrix_model();
    EstimatorOptions two;
    two.threads = 2;
    const auto m1 = mc_matmul(mm, target_identity(), 1, 70, 4, 23);
    const auto m2 = mc_matmul(mm, target_identity(), 1, 70, 4, 23, two);
    CHECK(m1.value(4, 9) == m2.value(4, 9));
}

TEST_CASE("baseline and multilevel substreams do not collide") {
    // same master seed: the baseline's draws must not replay any level's
    const auto model = paper_inner_model();
    const auto plan = fixed_plan(2, 1, {50, 50});
    const auto ml = mlmc_inner(model, target_identity(), plan, 1234);
    const auto mc = mc_inner(model, target_identity(), 1, 50, 2, 1234);
    CHECK(ml.per_level[1].estimate != mc.value);
    CHECK(ml.value != mc.value);
}
