#include "mlsketch/tensor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mlsketch {

namespace {

void reject_nan(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        if (std::isnan(v)) {
            throw std::invalid_argument(std::string(what) + ": NaN entry rejected");
        }
    }
}

} // namespace

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("DenseVector: length must be positive");
    }
    reject_nan(values_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> values)
    : DenseVector(std::vector<double>(values)) {}

DenseVector::DenseVector(std::size_t n, double fill) : values_(n, fill) {
    if (n == 0) {
        throw std::invalid_argument("DenseVector: length must be positive");
    }
    if (std::isnan(fill)) {
        throw std::invalid_argument("DenseVector: NaN entry rejected");
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
    }
    if (values_.size() != rows_ * cols_) {
        throw std::invalid_argument("DenseMatrix: value count does not match rows*cols");
    }
    reject_nan(values_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
    }
    if (std::isnan(fill)) {
        throw std::invalid_argument("DenseMatrix: NaN entry rejected");
    }
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw std::invalid_argument("DenseMatrix: ragged rows");
        }
        values.insert(values.end(), r.begin(), r.end());
    }
    return DenseMatrix(rows.size(), cols, std::move(values));
}

std::vector<double> DenseMatrix::col(std::size_t j) const {
    if (j < 1 || j > cols_) {
        throw std::invalid_argument("DenseMatrix::col: index out of range");
    }
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        out[i] = values_[i * cols_ + (j - 1)];
    }
    return out;
}

std::vector<double> DenseMatrix::row(std::size_t i) const {
    if (i < 1 || i > rows_) {
        throw std::invalid_argument("DenseMatrix::row: index out of range");
    }
    return std::vector<double>(values_.begin() + (i - 1) * cols_,
                               values_.begin() + i * cols_);
}

double exact_inner(const DenseVector& a, const DenseVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("exact_inner: length mismatch");
    }
    const auto& av = a.data();
    const auto& bv = b.data();
    double sum = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        sum += av[i] * bv[i];
    }
    return sum;
}

DenseMatrix exact_matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols() != B.rows()) {
        throw std::invalid_argument("exact_matmul: inner dimension mismatch");
    }
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    const std::size_t d = B.cols();
    DenseMatrix C(m, d, 0.0);
    const auto& a = A.data();
    const auto& b = B.data();
    auto& c = C.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += a[i * n + k] * b[k * d + j];
            }
            c[i * d + j] = sum;
        }
    }
    return C;
}

DenseVector vectorize(const DenseMatrix& X) {
    std::vector<double> out;
    out.reserve(X.rows() * X.cols());
    for (std::size_t j = 1; j <= X.cols(); ++j) {
        for (std::size_t i = 1; i <= X.rows(); ++i) {
            out.push_back(X(i, j));
        }
    }
    return DenseVector(std::move(out));
}

double frobenius_norm_sq(const DenseMatrix& X) {
    double sum = 0.0;
    for (double v : X.data()) {
        sum += v * v;
    }
    return sum;
}

double relative_error(double estimate, double reference) {
    if (reference == 0.0) {
        return estimate == 0.0 ? 0.0
                               : std::numeric_limits<double>::infinity();
    }
    return std::abs(estimate - reference) / std::abs(reference);
}

double relative_error(const DenseMatrix& estimate, const DenseMatrix& reference) {
    if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols()) {
        throw std::invalid_argument("relative_error: shape mismatch");
    }
    double num = 0.0;
    for (std::size_t k = 0; k < estimate.data().size(); ++k) {
        const double d = estimate.data()[k] - reference.data()[k];
        num += d * d;
    }
    const double den = frobenius_norm_sq(reference);
    if (den == 0.0) {
        return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::sqrt(num / den);
}

} // namespace mlsketch
