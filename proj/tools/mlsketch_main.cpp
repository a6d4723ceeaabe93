#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlsketch/analysis.hpp"
#include "mlsketch/estimators.hpp"
#include "mlsketch/models.hpp"
#include "mlsketch/oracle_suite.hpp"
#include "mlsketch/planner.hpp"
#include "mlsketch/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOracle = 2;
constexpr int kExitIo = 3;

constexpr std::uint64_t kRefTag = 999983;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stream sink for --out; "-" means stdout.
class OutFile {
public:
    explicit OutFile(const std::string& path) {
        if (path == "-") {
            out_ = &std::cout;
            return;
        }
        file_.open(path, std::ios::binary);  // binary keeps LF endings as written
        if (!file_) {
            throw IoError("cannot open output file: " + path);
        }
        out_ = &file_;
    }

    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

std::string fmt_double(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct SweepConfig {
    std::string mode = "inner";
    std::string model;
    std::string target;
    std::vector<std::size_t> m_list;
    double epsilon = 0.1;
    double c1 = 1.0;
    double c2 = 1.0;
    std::uint64_t seed = 1;
    int reps = 1;
    std::size_t n_ref = 100000;
    std::string out = "-";
    int threads = 1;
    bool timing = true;
};

void apply_mode_defaults(SweepConfig& cfg) {
    if (cfg.mode != "inner" && cfg.mode != "matmul") {
        throw UsageError("unknown mode: " + cfg.mode);
    }
    if (cfg.model.empty()) {
        cfg.model = cfg.mode == "inner" ? "paper-inner" : "paper-matrix";
    }
    if (cfg.target.empty()) {
        cfg.target = cfg.mode == "inner" ? "f1" : "f2";
    }
    if (cfg.m_list.empty()) {
        if (cfg.mode == "inner") {
            cfg.m_list = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        } else {
            cfg.m_list = {3, 4, 6, 9, 10, 12, 32};
        }
    }
    for (std::size_t M : cfg.m_list) {
        if (M < 2) {
            throw UsageError("every M must be at least 2");
        }
    }
    if (cfg.reps < 1) {
        throw UsageError("--reps must be at least 1");
    }
    if (cfg.threads < 1) {
        throw UsageError("--threads must be at least 1");
    }
    if (cfg.n_ref < 1) {
        throw UsageError("--n-ref must be at least 1");
    }
}

int cmd_sweep(SweepConfig cfg) {
    apply_mode_defaults(cfg);
    const mlsketch::TargetFunction f = [&] {
        auto t = mlsketch::target_by_key(cfg.target);
        if (!t) {
            throw UsageError("unknown target: " + cfg.target);
        }
        return *t;
    }();

    OutFile out(cfg.out);
    out.stream() << "M,L,M_pow_L,RE_mlmc,time_mlmc_s,cost_units_mlmc,"
                    "RE_mc,time_mc_s,cost_units_mc,seed\n";

    const std::uint64_t ref_seed = mlsketch::RngStream::derive_seed(cfg.seed, kRefTag, 0);
    mlsketch::EstimatorOptions opts;
    opts.threads = cfg.threads;

    auto emit_row = [&](std::size_t M, std::size_t L, double re_mlmc, double t_mlmc,
                        long long cost_mlmc, double re_mc, double t_mc,
                        long long cost_mc, std::uint64_t row_seed) {
        out.stream() << M << ',' << L << ',' << mlsketch::int_pow(M, L) << ','
                     << fmt_double("%.6e", re_mlmc) << ','
                     << fmt_double("%.3f", cfg.timing ? t_mlmc : 0.0) << ','
                     << cost_mlmc << ',' << fmt_double("%.6e", re_mc) << ','
                     << fmt_double("%.3f", cfg.timing ? t_mc : 0.0) << ','
                     << cost_mc << ',' << row_seed << '\n';
        if (!out.stream()) {
            throw IoError("write failure on output stream");
        }
    };

    if (cfg.mode == "inner") {
        auto model = mlsketch::vector_model_by_key(cfg.model);
        if (!model) {
            throw UsageError("unknown vector model: " + cfg.model);
        }
        const auto ref = mlsketch::reference_inner(*model, f, cfg.n_ref, ref_seed,
                                                   cfg.threads);
        for (std::size_t M : cfg.m_list) {
            const auto plan =
                mlsketch::make_plan(cfg.epsilon, M, cfg.c1, cfg.c2, model->n);
            const long long N_mc = mlsketch::plan_N_mc(cfg.epsilon, cfg.c2);
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const std::uint64_t row_seed =
                    mlsketch::RngStream::derive_seed(cfg.seed, M, rep);
                const auto ml = mlsketch::mlmc_inner(
                    *model, f, plan, mlsketch::RngStream::derive_seed(row_seed, 1, 0),
                    opts);
                const auto mc = mlsketch::mc_inner(
                    *model, f, plan.L, N_mc, M,
                    mlsketch::RngStream::derive_seed(row_seed, 2, 0), opts);
                emit_row(M, plan.L, mlsketch::relative_error(ml.value, ref.value),
                         ml.wall_time_seconds, ml.total_cost_units,
                         mlsketch::relative_error(mc.value, ref.value),
                         mc.wall_time_seconds, mc.total_cost_units, row_seed);
            }
        }
    } else {
        auto model = mlsketch::matrix_model_by_key(cfg.model);
        if (!model) {
            throw UsageError("unknown matrix model: " + cfg.model);
        }
        const auto ref = mlsketch::reference_matmul(*model, f, cfg.n_ref, ref_seed,
                                                    cfg.threads);
        for (std::size_t M : cfg.m_list) {
            const auto plan =
                mlsketch::make_plan(cfg.epsilon, M, cfg.c1, cfg.c2, model->n);
            const long long N_mc = mlsketch::plan_N_mc(cfg.epsilon, cfg.c2);
            for (int rep = 0; rep < cfg.reps; ++rep) {
                const std::uint64_t row_seed =
                    mlsketch::RngStream::derive_seed(cfg.seed, M, rep);
                const auto ml = mlsketch::mlmc_matmul(
                    *model, f, plan, mlsketch::RngStream::derive_seed(row_seed, 1, 0),
                    opts);
                const auto mc = mlsketch::mc_matmul(
                    *model, f, plan.L, N_mc, M,
                    mlsketch::RngStream::derive_seed(row_seed, 2, 0), opts);
                emit_row(M, plan.L, mlsketch::relative_error(ml.value, ref.value),
                         ml.wall_time_seconds, ml.total_cost_units,
                         mlsketch::relative_error(mc.value, ref.value),
                         mc.wall_time_seconds, mc.total_cost_units, row_seed);
            }
        }
    }
    return kExitOk;
}

int cmd_fm_curve(std::size_t m_min, std::size_t m_max, const std::string& out_path) {
    if (m_min < 2 || m_max < m_min) {
        throw UsageError("fm-curve: need 2 <= m-min <= m-max");
    }
    OutFile out(out_path);
    out.stream() << "M,f_M\n";
    for (std::size_t M = m_min; M <= m_max; ++M) {
        out.stream() << M << ','
                     << fmt_double("%.12g",
                                   mlsketch::complexity_curve(static_cast<double>(M)))
                     << '\n';
    }
    if (!out.stream()) {
        throw IoError("write failure on output stream");
    }
    return kExitOk;
}

int cmd_oracle(std::size_t max_n, std::size_t max_s, bool inject_bug) {
    const double perturb = inject_bug ? 1.0 + 1e-6 : 1.0;
    const auto report = mlsketch::run_oracle_suite(max_n, max_s, 1e-10, perturb);
    std::printf("instance            kind    n  s  mean_err_u    mean_err_o    "
                "var_u_enum    var_u_formula  var_o_enum    var_o_formula  ok\n");
    for (const auto& row : report.rows) {
        std::printf("%-18s  %-6s %2zu %2zu  %-12.3e  %-12.3e  %-12.6g  %-13.6g  "
                    "%-12.6g  %-13.6g  %s\n",
                    row.instance.c_str(), row.matrix ? "matrix" : "inner", row.n,
                    row.sample_size, row.mean_err_uniform, row.mean_err_optimal,
                    row.var_uniform_enum, row.var_uniform_formula,
                    row.var_optimal_enum, row.var_optimal_formula,
                    row.pass ? "yes" : "NO");
    }
    std::printf("%zu checks, %zu failures (tolerance %.1e)\n", report.rows.size(),
                report.failures, report.tolerance);
    return report.all_pass() ? kExitOk : kExitOracle;
}

struct EstimateConfig {
    std::string mode = "inner";
    std::string model;
    std::string target;
    std::size_t M = 7;
    double epsilon = 0.1;
    double c1 = 1.0;
    double c2 = 1.0;
    std::uint64_t seed = 1;
    int threads = 1;
};

int cmd_estimate(EstimateConfig cfg) {
    if (cfg.mode != "inner" && cfg.mode != "matmul") {
        throw UsageError("unknown mode: " + cfg.mode);
    }
    if (cfg.model.empty()) {
        cfg.model = cfg.mode == "inner" ? "paper-inner" : "paper-matrix";
    }
    if (cfg.target.empty()) {
        cfg.target = cfg.mode == "inner" ? "f1" : "f2";
    }
    auto t = mlsketch::target_by_key(cfg.target);
    if (!t) {
        throw UsageError("unknown target: " + cfg.target);
    }
    mlsketch::EstimatorOptions opts;
    opts.threads = cfg.threads;

    std::printf("mode=%s model=%s target=%s\n", cfg.mode.c_str(), cfg.model.c_str(),
                cfg.target.c_str());
    if (cfg.mode == "inner") {
        auto model = mlsketch::vector_model_by_key(cfg.model);
        if (!model) {
            throw UsageError("unknown vector model: " + cfg.model);
        }
        const auto plan =
            mlsketch::make_plan(cfg.epsilon, cfg.M, cfg.c1, cfg.c2, model->n);
        const auto rep = mlsketch::mlmc_inner(*model, *t, plan, cfg.seed, opts);
        std::printf("M=%zu L=%zu epsilon=%g n=%zu%s\n", plan.M, plan.L, plan.epsilon,
                    model->n, plan.n_cap_applied ? " (depth set by dimension cap)" : "");
        std::printf("level  N          estimate        mean_sq_diff    cost_units\n");
        for (const auto& st : rep.per_level) {
            std::printf("%-5zu  %-9lld  %-14.8g  %-14.8g  %lld\n", st.level,
                        st.replication_count, st.estimate,
                        st.sample_mean_of_squares, st.cost_units);
        }
        std::printf("estimate=%.10g\ntotal_cost_units=%lld\nwall_time_s=%.3f\nseed=%" PRIu64
                    "\n",
                    rep.value, rep.total_cost_units, rep.wall_time_seconds, rep.seed);
    } else {
        auto model = mlsketch::matrix_model_by_key(cfg.model);
        if (!model) {
            throw UsageError("unknown matrix model: " + cfg.model);
        }
        const auto plan =
            mlsketch::make_plan(cfg.epsilon, cfg.M, cfg.c1, cfg.c2, model->n);
        const auto rep = mlsketch::mlmc_matmul(*model, *t, plan, cfg.seed, opts);
        std::printf("M=%zu L=%zu epsilon=%g n=%zu m=%zu d=%zu%s\n", plan.M, plan.L,
                    plan.epsilon, model->n, model->m, model->d,
                    plan.n_cap_applied ? " (depth set by dimension cap)" : "");
        std::printf("level  N          frob_estimate   mean_sq_diff    cost_units\n");
        for (const auto& st : rep.per_level) {
            std::printf("%-5zu  %-9lld  %-14.8g  %-14.8g  %lld\n", st.level,
                        st.replication_count,
                        std::sqrt(mlsketch::frobenius_norm_sq(st.estimate)),
                        st.sample_mean_of_squares, st.cost_units);
        }
        std::printf("estimate (%zux%zu):\n", rep.value.rows(), rep.value.cols());
        for (std::size_t i = 1; i <= rep.value.rows(); ++i) {
            for (std::size_t j = 1; j <= rep.value.cols(); ++j) {
                std::printf("%s%.8g", j == 1 ? "  " : " ", rep.value(i, j));
            }
            std::printf("\n");
        }
        std::printf("total_cost_units=%lld\nwall_time_s=%.3f\nseed=%" PRIu64 "\n",
                    rep.total_cost_units, rep.wall_time_seconds, rep.seed);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilevel sketch estimators for inner and matrix products"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value option file (flags override it)");

    SweepConfig sweep;
    auto* s = app.add_subcommand(
        "sweep", "M-sweep comparing the multilevel estimator to the single-level "
                 "baseline; writes a CSV");
    s->add_option("--mode", sweep.mode, "inner or matmul")->capture_default_str();
    s->add_option("--model", sweep.model, "data model key (default from mode)");
    s->add_option("--target", sweep.target, "target function key (default from mode)");
    s->add_option("--m-list", sweep.m_list, "comma-separated list of M values")
        ->delimiter(',');
    s->add_option("--epsilon", sweep.epsilon, "accuracy parameter in (0, 1/e)")
        ->capture_default_str();
    s->add_option("--c1", sweep.c1, "bias constant")->capture_default_str();
    s->add_option("--c2", sweep.c2, "variance constant")->capture_default_str();
    s->add_option("--seed", sweep.seed, "master seed")->capture_default_str();
    s->add_option("--reps", sweep.reps, "seeded repetitions per M")
        ->capture_default_str();
    s->add_option("--n-ref", sweep.n_ref, "reference-value sample count")
        ->capture_default_str();
    s->add_option("--out", sweep.out, "output CSV path, - for stdout")
        ->capture_default_str();
    s->add_option("--threads", sweep.threads, "worker threads (output is identical "
                                              "for any value)")
        ->capture_default_str();
    s->add_flag("--timing,!--no-timing", sweep.timing,
                "report wall times; --no-timing writes 0.000 so byte-level CSV "
                "comparison across runs is meaningful");

    std::size_t m_min = 2, m_max = 60;
    std::string fm_out = "-";
    auto* fm = app.add_subcommand("fm-curve",
                                  "tabulate the level-factor cost curve f(M)");
    fm->add_option("--m-min", m_min, "first M")->capture_default_str();
    fm->add_option("--m-max", m_max, "last M")->capture_default_str();
    fm->add_option("--out", fm_out, "output CSV path, - for stdout")
        ->capture_default_str();

    std::size_t max_n = 4, max_s = 3;
    bool inject_bug = false;
    auto* orc = app.add_subcommand(
        "oracle", "exhaustive-enumeration identity checks on small instances");
    orc->add_option("--max-n", max_n, "largest dimension")->capture_default_str();
    orc->add_option("--max-s", max_s, "largest sample size")->capture_default_str();
    orc->add_flag("--inject-rescale-bug", inject_bug,
                  "negative control: corrupt the rescaling and expect failure");

    EstimateConfig est;
    auto* e = app.add_subcommand("estimate", "one multilevel estimate with a "
                                             "per-level breakdown");
    e->add_option("--mode", est.mode, "inner or matmul")->capture_default_str();
    e->add_option("--model", est.model, "data model key (default from mode)");
    e->add_option("--target", est.target, "target function key (default from mode)");
    e->add_option("--m", est.M, "per-level refinement factor M")
        ->capture_default_str();
    e->add_option("--epsilon", est.epsilon, "accuracy parameter in (0, 1/e)")
        ->capture_default_str();
    e->add_option("--c1", est.c1, "bias constant")->capture_default_str();
    e->add_option("--c2", est.c2, "variance constant")->capture_default_str();
    e->add_option("--seed", est.seed, "master seed")->capture_default_str();
    e->add_option("--threads", est.threads, "worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kExitUsage;
    }

    try {
        if (s->parsed()) {
            return cmd_sweep(sweep);
        }
        if (fm->parsed()) {
            return cmd_fm_curve(m_min, m_max, fm_out);
        }
        if (orc->parsed()) {
            return cmd_oracle(max_n, max_s, inject_bug);
        }
        if (e->parsed()) {
            return cmd_estimate(est);
        }
        return kExitUsage;
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const IoError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitIo;
    }
}
