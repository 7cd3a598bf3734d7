#pragma once

// Dense exact matrices and Gauss elimination over Q(i).  Pivoting is
// deterministic (first nonzero column, lowest row index) so every run of
// the library is reproducible bit for bit.

#include <optional>
#include <vector>

#include "abelia/rational.hpp"

namespace abelia {

template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error(ErrorKind::Internal, "matrix dimension mismatch in product");
        Matrix m(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(r, k);
                if (a.is_zero()) continue;
                for (std::size_t c = 0; c < o.cols_; ++c) {
                    const T& b = o(k, c);
                    if (b.is_zero()) continue;
                    m(r, c) += a * b;
                }
            }
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(ErrorKind::Internal, "matrix dimension mismatch in sum");
        Matrix m(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] + o.data_[k];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw Error(ErrorKind::Internal, "matrix dimension mismatch in difference");
        Matrix m(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] - o.data_[k];
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    void set_column(std::size_t c, const std::vector<T>& v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
        return m;
    }

    Matrix columns_concat(const Matrix& o) const {
        if (o.rows_ != rows_ && o.cols_ != 0)
            throw Error(ErrorKind::Internal, "matrix dimension mismatch in concat");
        Matrix m(rows_, cols_ + o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
            for (std::size_t c = 0; c < o.cols_; ++c) m(r, cols_ + c) = o(r, c);
        }
        return m;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using QMatrix = Matrix<GQ>;
using QVector = std::vector<GQ>;

// Row echelon reduction (in place); returns pivot columns in order.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

// Basis of the right kernel, returned as matrix columns (possibly 0 columns).
QMatrix kernel_basis(const QMatrix& m);

// Basis of the column span: the input columns that grow the rank, in order.
QMatrix image_basis(const QMatrix& m);

// dim(span(amb) / span(sub)); requires span(sub) to lie inside span(amb).
std::size_t subspace_quotient_dim(const QMatrix& amb, const QMatrix& sub);

// Solve m x = b; nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

// True when v lies in the column span of m.
bool in_span(const QMatrix& m, const QVector& v);

GQ dot(const QVector& a, const QVector& b);

QVector matvec(const QMatrix& m, const QVector& v);

}  // namespace abelia
