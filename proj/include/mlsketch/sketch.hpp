#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "mlsketch/sampling.hpp"
#include "mlsketch/tensor.hpp"

namespace mlsketch {

/// Sketched inner product:  (1/s) * sum_i  a_{r_i} b_{r_i} / xi_{r_i}.
///
/// The sampling operator is applied implicitly — indices are gathered and
/// rescaled in realization order, never materialized as a matrix — so the
/// cost is O(s) regardless of the ambient dimension.
double sketch_inner(const DenseVector& a, const DenseVector& b,
                    const Realization& r, const IndexDistribution& dist);

/// Same, over the first `r.size()` entries of an index span (used by the
/// estimators to evaluate a coarse sketch on a prefix without copying).
double sketch_inner(const DenseVector& a, const DenseVector& b,
                    std::span<const std::uint32_t> indices,
                    const IndexDistribution& dist);

/// Sketched matrix product:  (1/s) * sum_i  A_{:,r_i} B_{r_i,:} / xi_{r_i},
/// an m x d matrix accumulated as rescaled outer products in realization
/// order.  Cost O(s * m * d).
DenseMatrix sketch_matmul(const DenseMatrix& A, const DenseMatrix& B,
                          const Realization& r, const IndexDistribution& dist);

DenseMatrix sketch_matmul(const DenseMatrix& A, const DenseMatrix& B,
                          std::span<const std::uint32_t> indices,
                          const IndexDistribution& dist);

/// A sketch value together with how it was produced.
template <class ValueT>
struct SketchResult {
    ValueT value;
    std::size_t sample_size;
    const IndexDistribution* distribution;
};

SketchResult<double> sketch_inner_result(const DenseVector& a, const DenseVector& b,
                                         const Realization& r,
                                         const IndexDistribution& dist);

SketchResult<DenseMatrix> sketch_matmul_result(const DenseMatrix& A,
                                               const DenseMatrix& B,
                                               const Realization& r,
                                               const IndexDistribution& dist);

} // namespace mlsketch
