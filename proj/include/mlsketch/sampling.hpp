#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "mlsketch/rng.hpp"

namespace mlsketch {

/// Probability distribution over indices 1..n used to sample sketch columns.
///
/// Probabilities are strictly positive and sum to 1 within 1e-12.  The
/// reciprocals 1/xi_j used for rescaling are fixed at construction — the
/// uniform factory stores them as exactly n — and are never re-normalized at
/// the point of use.
class IndexDistribution {
public:
    /// General constructor from explicit probabilities.
    explicit IndexDistribution(std::vector<double> probs);

    /// xi_j = 1/n for all j.
    static IndexDistribution uniform(std::size_t n);

    /// Variance-minimizing distribution for an inner-product sketch:
    /// xi_j proportional to sqrt(moments[j]) with moments[j] = E[a_j^2 b_j^2].
    static IndexDistribution optimal_inner(const std::vector<double>& moments);

    /// Variance-minimizing distribution for a matrix-product sketch:
    /// xi_j proportional to sqrt(colA[j] * rowB[j]) where colA[j] = E[|A_col_j|^2]
    /// and rowB[j] = E[|B_row_j|^2].
    static IndexDistribution optimal_matrix(const std::vector<double>& colA,
                                            const std::vector<double>& rowB);

    std::size_t size() const { return probs_.size(); }

    /// 1-based accessors.
    double prob(std::size_t j) const { return probs_[j - 1]; }
    double inv_prob(std::size_t j) const { return inv_probs_[j - 1]; }

    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& inv_probs() const { return inv_probs_; }

    /// One index in 1..n by inverse-CDF lookup on a single uniform draw.
    std::uint32_t sample(RngStream& rng) const;

private:
    IndexDistribution() = default;
    void build_cumulative();

    std::vector<double> probs_;
    std::vector<double> inv_probs_;
    std::vector<double> cumulative_;
};

/// An ordered list of sampled indices (1-based, drawn with replacement).
struct Realization {
    std::vector<std::uint32_t> indices;

    std::size_t size() const { return indices.size(); }
};

/// Draw `size` indices i.i.d. from `dist`.
Realization draw_realization(const IndexDistribution& dist, std::size_t size,
                             RngStream& rng);

/// First `count` indices of `r`; this is the coupling rule that ties a coarse
/// sketch to the fine realization it is nested in.
Realization prefix(const Realization& r, std::size_t count);

} // namespace mlsketch
