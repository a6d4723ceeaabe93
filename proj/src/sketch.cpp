#include "mlsketch/sketch.hpp"

#include <stdexcept>

namespace mlsketch {

namespace {

void check_indices(std::span<const std::uint32_t> indices, std::size_t n) {
    if (indices.empty()) {
        throw std::invalid_argument("sketch: realization must be non-empty");
    }
    for (std::uint32_t idx : indices) {
        if (idx < 1 || idx > n) {
            throw std::invalid_argument("sketch: index out of range");
        }
    }
}

} // namespace

double sketch_inner(const DenseVector& a, const DenseVector& b,
                    std::span<const std::uint32_t> indices,
                    const IndexDistribution& dist) {
    if (a.size() != b.size() || a.size() != dist.size()) {
        throw std::invalid_argument("sketch_inner: dimension mismatch");
    }
    check_indices(indices, a.size());
    const auto& av = a.data();
    const auto& bv = b.data();
    const auto& inv = dist.inv_probs();
    double sum = 0.0;
    for (std::uint32_t idx : indices) {
        const std::size_t j = idx - 1;
        sum += av[j] * bv[j] * inv[j];
    }
    return sum / static_cast<double>(indices.size());
}

double sketch_inner(const DenseVector& a, const DenseVector& b,
                    const Realization& r, const IndexDistribution& dist) {
    return sketch_inner(a, b, std::span<const std::uint32_t>(r.indices), dist);
}

DenseMatrix sketch_matmul(const DenseMatrix& A, const DenseMatrix& B,
                          std::span<const std::uint32_t> indices,
                          const IndexDistribution& dist) {
    if (A.cols() != B.rows() || A.cols() != dist.size()) {
        throw std::invalid_argument("sketch_matmul: dimension mismatch");
    }
    check_indices(indices, A.cols());
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    const std::size_t d = B.cols();
    DenseMatrix out(m, d, 0.0);
    const auto& a = A.data();
    const auto& b = B.data();
    auto& o = out.data();
    const auto& inv = dist.inv_probs();
    for (std::uint32_t idx : indices) {
        const std::size_t j = idx - 1;
        const double w = inv[j];
        for (std::size_t i = 0; i < m; ++i) {
            const double scaled = a[i * n + j] * w;
            const double* brow = &b[j * d];
            double* orow = &o[i * d];
            for (std::size_t k = 0; k < d; ++k) {
                orow[k] += scaled * brow[k];
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(indices.size());
    for (double& v : o) {
        v *= scale;
    }
    return out;
}

DenseMatrix sketch_matmul(const DenseMatrix& A, const DenseMatrix& B,
                          const Realization& r, const IndexDistribution& dist) {
    return sketch_matmul(A, B, std::span<const std::uint32_t>(r.indices), dist);
}

SketchResult<double> sketch_inner_result(const DenseVector& a, const DenseVector& b,
                                         const Realization& r,
                                         const IndexDistribution& dist) {
    return {sketch_inner(a, b, r, dist), r.size(), &dist};
}

SketchResult<DenseMatrix> sketch_matmul_result(const DenseMatrix& A,
                                               const DenseMatrix& B,
                                               const Realization& r,
                                               const IndexDistribution& dist) {
    return {sketch_matmul(A, B, r, dist), r.size(), &dist};
}

} // namespace mlsketch
