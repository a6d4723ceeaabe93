#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mlsketch {

/// Dense vector with 1-based element access at the API boundary.
/// Construction rejects NaN entries and zero length.
class DenseVector {
public:
    explicit DenseVector(std::vector<double> values);
    DenseVector(std::initializer_list<double> values);
    DenseVector(std::size_t n, double fill);

    std::size_t size() const { return values_.size(); }

    /// 1-based access.
    double operator()(std::size_t j) const { return values_[j - 1]; }
    double& operator()(std::size_t j) { return values_[j - 1]; }

    const std::vector<double>& data() const { return values_; }
    std::vector<double>& data() { return values_; }

private:
    std::vector<double> values_;
};

/// Dense row-major matrix, 1-based (i, j) access.
/// Construction rejects NaN entries and zero dimensions.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    DenseMatrix(std::size_t rows, std::size_t cols, double fill);

    /// Build from nested initializer-style rows (convenience for tests).
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[(i - 1) * cols_ + (j - 1)];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return values_[(i - 1) * cols_ + (j - 1)];
    }

    /// Copy of column j (1-based).
    std::vector<double> col(std::size_t j) const;
    /// Copy of row i (1-based).
    std::vector<double> row(std::size_t i) const;

    const std::vector<double>& data() const { return values_; }
    std::vector<double>& data() { return values_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

/// Exact inner product a^T b, accumulated left to right so independently
/// written checks can reproduce the result bit for bit.
double exact_inner(const DenseVector& a, const DenseVector& b);

/// Exact product A B with plain triple-loop accumulation (k innermost,
/// left to right).
DenseMatrix exact_matmul(const DenseMatrix& A, const DenseMatrix& B);

/// Column-stacking vectorization: X (m x d) -> vector of length m*d.
DenseVector vectorize(const DenseMatrix& X);

/// Squared Frobenius norm.
double frobenius_norm_sq(const DenseMatrix& X);

/// |estimate - reference| / |reference|; +infinity when the reference is 0.
double relative_error(double estimate, double reference);

/// Frobenius-norm relative error; +infinity when the reference is 0.
double relative_error(const DenseMatrix& estimate, const DenseMatrix& reference);

} // namespace mlsketch
