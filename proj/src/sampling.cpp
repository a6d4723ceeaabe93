#include "mlsketch/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlsketch {

IndexDistribution::IndexDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("IndexDistribution: empty probability vector");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument(
                "IndexDistribution: probabilities must be strictly positive");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("IndexDistribution: probabilities must sum to 1");
    }
    inv_probs_.resize(probs_.size());
    for (std::size_t j = 0; j < probs_.size(); ++j) {
        inv_probs_[j] = 1.0 / probs_[j];
    }
    build_cumulative();
}

IndexDistribution IndexDistribution::uniform(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("IndexDistribution::uniform: n must be positive");
    }
    IndexDistribution d;
    d.probs_.assign(n, 1.0 / static_cast<double>(n));
    // Reciprocal of the exact probability 1/n, not of its rounded double.
    d.inv_probs_.assign(n, static_cast<double>(n));
    d.build_cumulative();
    return d;
}

IndexDistribution IndexDistribution::optimal_inner(const std::vector<double>& moments) {
    if (moments.empty()) {
        throw std::invalid_argument("optimal_inner: empty moment vector");
    }
    std::vector<double> roots(moments.size());
    double total = 0.0;
    for (std::size_t j = 0; j < moments.size(); ++j) {
        if (!(moments[j] > 0.0) || !std::isfinite(moments[j])) {
            throw std::invalid_argument(
                "optimal_inner: second moments must be strictly positive");
        }
        roots[j] = std::sqrt(moments[j]);
        total += roots[j];
    }
    IndexDistribution d;
    d.probs_.resize(moments.size());
    d.inv_probs_.resize(moments.size());
    for (std::size_t j = 0; j < moments.size(); ++j) {
        d.probs_[j] = roots[j] / total;
        d.inv_probs_[j] = total / roots[j];
    }
    d.build_cumulative();
    return d;
}

IndexDistribution IndexDistribution::optimal_matrix(const std::vector<double>& colA,
                                                    const std::vector<double>& rowB) {
    if (colA.empty() || colA.size() != rowB.size()) {
        throw std::invalid_argument("optimal_matrix: moment vectors must match");
    }
    std::vector<double> roots(colA.size());
    double total = 0.0;
    for (std::size_t j = 0; j < colA.size(); ++j) {
        if (!(colA[j] > 0.0) || !std::isfinite(colA[j]) || !(rowB[j] > 0.0) ||
            !std::isfinite(rowB[j])) {
            throw std::invalid_argument(
                "optimal_matrix: second moments must be strictly positive");
        }
        roots[j] = std::sqrt(colA[j] * rowB[j]);
        total += roots[j];
    }
    IndexDistribution d;
    d.probs_.resize(colA.size());
    d.inv_probs_.resize(colA.size());
    for (std::size_t j = 0; j < colA.size(); ++j) {
        d.probs_[j] = roots[j] / total;
        d.inv_probs_[j] = total / roots[j];
    }
    d.build_cumulative();
    return d;
}

void IndexDistribution::build_cumulative() {
    cumulative_.resize(probs_.size());
    double run = 0.0;
    for (std::size_t j = 0; j < probs_.size(); ++j) {
        run += probs_[j];
        cumulative_[j] = run;
    }
    // Close the final bucket exactly so u in [0, 1) always lands.
    cumulative_.back() = 1.0;
}

std::uint32_t IndexDistribution::sample(RngStream& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin());
    return static_cast<std::uint32_t>(std::min(k, cumulative_.size() - 1) + 1);
}

Realization draw_realization(const IndexDistribution& dist, std::size_t size,
                             RngStream& rng) {
    if (size == 0) {
        throw std::invalid_argument("draw_realization: size must be positive");
    }
    Realization r;
    r.indices.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        r.indices[i] = dist.sample(rng);
    }
    return r;
}

Realization prefix(const Realization& r, std::size_t count) {
    if (count == 0 || count > r.size()) {
        throw std::invalid_argument("prefix: count must be in 1..size");
    }
    Realization out;
    out.indices.assign(r.indices.begin(), r.indices.begin() + count);
    return out;
}

} // namespace mlsketch
