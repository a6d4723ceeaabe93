#include "mlsketch/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "mlsketch/sketch.hpp"

namespace mlsketch {

namespace {

VarianceConstants constants_from(const std::vector<double>& m, double cross) {
    if (m.empty()) {
        throw std::invalid_argument("variance constants: empty moment vector");
    }
    std::vector<double> roots(m.size());
    double total = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (!(m[j] >= 0.0) || !std::isfinite(m[j])) {
            throw std::invalid_argument("variance constants: invalid moment");
        }
        roots[j] = std::sqrt(m[j]);
        total += roots[j];
    }
    const double mean = total / static_cast<double>(m.size());
    double nu = 0.0;
    for (double r : roots) {
        const double dev = r - mean;
        nu += dev * dev;
    }
    const double mu = total * total - cross;
    return VarianceConstants{mu, nu, m.size()};
}

void check_sample_size(std::size_t s) {
    if (s == 0) {
        throw std::invalid_argument("sample size must be positive");
    }
}

/// Odometer over all n^s index tuples; throws beyond the 10^6 guard.
class RealizationEnumerator {
public:
    RealizationEnumerator(std::size_t n, std::size_t s) : n_(n) {
        double outcomes = 1.0;
        for (std::size_t i = 0; i < s; ++i) {
            outcomes *= static_cast<double>(n);
            if (outcomes > 1e6) {
                throw std::invalid_argument(
                    "enumeration: n^sample_size exceeds the 10^6 guard");
            }
        }
        indices_.assign(s, 1);
    }

    const std::vector<std::uint32_t>& indices() const { return indices_; }

    bool advance() {
        for (std::size_t pos = indices_.size(); pos-- > 0;) {
            if (indices_[pos] < n_) {
                ++indices_[pos];
                return true;
            }
            indices_[pos] = 1;
        }
        return false;
    }

private:
    std::size_t n_;
    std::vector<std::uint32_t> indices_;
};

double tuple_weight(const std::vector<std::uint32_t>& idx,
                    const IndexDistribution& dist) {
    double w = 1.0;
    for (std::uint32_t j : idx) {
        w *= dist.prob(j);
    }
    return w;
}

} // namespace

VarianceConstants inner_constants(const MomentTable& moments) {
    if (!moments.inner_moments || !moments.cross_term) {
        throw std::invalid_argument(
            "inner_constants: needs inner_moments and cross_term");
    }
    return constants_from(*moments.inner_moments, *moments.cross_term);
}

VarianceConstants matrix_constants(const MomentTable& moments) {
    if (!moments.colA_moments || !moments.rowB_moments || !moments.cross_term) {
        throw std::invalid_argument(
            "matrix_constants: needs colA_moments, rowB_moments and cross_term");
    }
    const auto& cA = *moments.colA_moments;
    const auto& rB = *moments.rowB_moments;
    if (cA.size() != rB.size()) {
        throw std::invalid_argument("matrix_constants: moment length mismatch");
    }
    std::vector<double> m(cA.size());
    for (std::size_t j = 0; j < cA.size(); ++j) {
        m[j] = cA[j] * rB[j];
    }
    return constants_from(m, *moments.cross_term);
}

double expected_variance_uniform(const VarianceConstants& c, std::size_t sample_size) {
    check_sample_size(sample_size);
    return (static_cast<double>(c.n) * c.nu + c.mu) /
           static_cast<double>(sample_size);
}

double expected_variance_optimal(const VarianceConstants& c, std::size_t sample_size) {
    check_sample_size(sample_size);
    return c.mu / static_cast<double>(sample_size);
}

double expected_frobenius_error_uniform(const VarianceConstants& c,
                                        std::size_t sample_size) {
    return expected_variance_uniform(c, sample_size);
}

double expected_frobenius_error_optimal(const VarianceConstants& c,
                                        std::size_t sample_size) {
    return expected_variance_optimal(c, sample_size);
}

EnumeratedMoments enumerate_inner_moments(const DenseVector& a, const DenseVector& b,
                                          const IndexDistribution& dist,
                                          std::size_t sample_size) {
    check_sample_size(sample_size);
    if (a.size() != b.size() || a.size() != dist.size()) {
        throw std::invalid_argument("enumerate_inner_moments: dimension mismatch");
    }
    const double exact = exact_inner(a, b);
    double mean = 0.0;
    {
        RealizationEnumerator e(a.size(), sample_size);
        do {
            const double w = tuple_weight(e.indices(), dist);
            Realization r{e.indices()};
            mean += w * sketch_inner(a, b, r, dist);
        } while (e.advance());
    }
    double var = 0.0;
    {
        RealizationEnumerator e(a.size(), sample_size);
        do {
            const double w = tuple_weight(e.indices(), dist);
            Realization r{e.indices()};
            const double dev = sketch_inner(a, b, r, dist) - exact;
            var += w * dev * dev;
        } while (e.advance());
    }
    return EnumeratedMoments{mean, var};
}

EnumeratedMatrixMoments enumerate_matmul_moments(const DenseMatrix& A,
                                                 const DenseMatrix& B,
                                                 const IndexDistribution& dist,
                                                 std::size_t sample_size) {
    check_sample_size(sample_size);
    if (A.cols() != B.rows() || A.cols() != dist.size()) {
        throw std::invalid_argument("enumerate_matmul_moments: dimension mismatch");
    }
    const DenseMatrix exact = exact_matmul(A, B);
    DenseMatrix mean(A.rows(), B.cols(), 0.0);
    double err = 0.0;
    RealizationEnumerator e(A.cols(), sample_size);
    do {
        const double w = tuple_weight(e.indices(), dist);
        Realization r{e.indices()};
        const DenseMatrix s = sketch_matmul(A, B, r, dist);
        for (std::size_t t = 0; t < s.data().size(); ++t) {
            mean.data()[t] += w * s.data()[t];
            const double dev = s.data()[t] - exact.data()[t];
            err += w * dev * dev;
        }
    } while (e.advance());
    return EnumeratedMatrixMoments{std::move(mean), err};
}

double complexity_curve(double M) {
    if (!(M >= 2.0)) {
        throw std::invalid_argument("complexity_curve: M must be at least 2");
    }
    const double lg = std::log(M);
    return (M + 1.0) * (M + 1.0) / (M * lg * lg);
}

TheoremConstants theorem_constants(double lipschitz, const VarianceConstants& c,
                                   std::size_t M, double var_P, std::size_t md) {
    if (M < 2) {
        throw std::invalid_argument("theorem_constants: M must be at least 2");
    }
    if (md == 0) {
        throw std::invalid_argument("theorem_constants: md must be positive");
    }
    if (!(lipschitz > 0.0) || !(var_P >= 0.0)) {
        throw std::invalid_argument("theorem_constants: invalid inputs");
    }
    const double cf2 = lipschitz * lipschitz;
    const double base = static_cast<double>(c.n) * c.nu + c.mu;
    const double Md = static_cast<double>(M);
    return TheoremConstants{
        cf2 * base,
        2.0 * cf2 * (Md + 1.0) * base + 2.0 * var_P,
        static_cast<double>(md) * (1.0 + 1.0 / Md)};
}

MomentTable estimate_inner_moments(const VectorPairModel& model, std::size_t count,
                                   std::uint64_t seed) {
    if (count == 0) {
        throw std::invalid_argument("estimate_inner_moments: count must be positive");
    }
    std::vector<double> m(model.n, 0.0);
    double cross = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        RngStream rng = RngStream::derive(seed, 0, k);
        auto [a, b] = model.draw(rng);
        for (std::size_t j = 0; j < model.n; ++j) {
            const double p = a.data()[j] * b.data()[j];
            m[j] += p * p;
        }
        const double ip = exact_inner(a, b);
        cross += ip * ip;
    }
    for (double& v : m) {
        v /= static_cast<double>(count);
    }
    MomentTable t;
    t.inner_moments = std::move(m);
    t.cross_term = cross / static_cast<double>(count);
    return t;
}

MomentTable estimate_matrix_moments(const MatrixPairModel& model, std::size_t count,
                                    std::uint64_t seed) {
    if (count == 0) {
        throw std::invalid_argument("estimate_matrix_moments: count must be positive");
    }
    std::vector<double> cA(model.n, 0.0), rB(model.n, 0.0);
    double cross = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        RngStream rng = RngStream::derive(seed, 0, k);
        auto [A, B] = model.draw(rng);
        for (std::size_t j = 0; j < model.n; ++j) {
            double ca = 0.0;
            for (std::size_t i = 1; i <= model.m; ++i) {
                const double v = A(i, j + 1);
                ca += v * v;
            }
            cA[j] += ca;
            double rb = 0.0;
            for (std::size_t k2 = 1; k2 <= model.d; ++k2) {
                const double v = B(j + 1, k2);
                rb += v * v;
            }
            rB[j] += rb;
        }
        cross += frobenius_norm_sq(exact_matmul(A, B));
    }
    for (double& v : cA) {
        v /= static_cast<double>(count);
    }
    for (double& v : rB) {
        v /= static_cast<double>(count);
    }
    MomentTable t;
    t.colA_moments = std::move(cA);
    t.rowB_moments = std::move(rB);
    t.cross_term = cross / static_cast<double>(count);
    return t;
}

} // namespace mlsketch
