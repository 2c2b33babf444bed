#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skd/error.hpp"

namespace skd {

// Row-major dense matrix. Float for the pipeline, double for verification.
template <class T>
class BasicMatrix {
public:
    using value_type = T;

    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    BasicMatrix(std::size_t rows, std::size_t cols, std::vector<T> values)
        : rows_(rows), cols_(cols), data_(std::move(values)) {
        if (data_.size() != rows_ * cols_)
            fail(ErrorKind::InvalidMatrix, "value count " + std::to_string(data_.size()) + " != " +
                                               std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }
    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    bool all_finite() const noexcept {
        for (T v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void fill(T v) noexcept { std::fill(data_.begin(), data_.end(), v); }

    bool same_shape(const BasicMatrix& o) const noexcept { return rows_ == o.rows_ && cols_ == o.cols_; }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<float>;
using MatrixD = BasicMatrix<double>;

template <class To, class From>
BasicMatrix<To> matrix_cast(const BasicMatrix<From>& m) {
    BasicMatrix<To> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = static_cast<To>(m.data()[i]);
    return out;
}

template <class T>
BasicMatrix<T> transpose(const BasicMatrix<T>& m) {
    BasicMatrix<T> out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
    return out;
}

template <class T>
double frobenius_norm(const BasicMatrix<T>& m) {
    double s = 0.0;
    for (T v : m.values()) s += double(v) * double(v);
    return std::sqrt(s);
}

// ||a - b||_F
template <class T>
double frobenius_distance(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    if (!a.same_shape(b)) fail(ErrorKind::ShapeError, "frobenius_distance shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = double(a.data()[i]) - double(b.data()[i]);
        s += d * d;
    }
    return std::sqrt(s);
}

// Plain product a*b, accumulated in double. For tests and small one-off products.
template <class T>
BasicMatrix<T> matmul_reference(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::ShapeError, "matmul inner dimension mismatch");
    BasicMatrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += double(a(i, k)) * double(b(k, j));
            out(i, j) = static_cast<T>(s);
        }
    return out;
}

}  // namespace skd
