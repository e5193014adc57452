#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rtoric/bigint.hpp"
#include "rtoric/error.hpp"

namespace rtoric {

/// Dense row-major matrix over an integer-like type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const T* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row_ptr(a), row_ptr(a) + cols_, row_ptr(b));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
        return out;
    }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << '[';
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
            os << "]\n";
        }
        return os.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using IntVector = std::vector<BigInt>;

/// Product skipping zero entries of the left factor; cochain matrices are sparse.
template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matrix product: dimension mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            const T* brow = b.row_ptr(k);
            T* crow = c.row_ptr(i);
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (brow[j] != 0) crow[j] += aik * brow[j];
        }
    }
    return c;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw InvalidInput("matrix-vector product: dimension mismatch");
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const T* row = a.row_ptr(i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (row[j] != 0 && x[j] != 0) y[i] += row[j] * x[j];
    }
    return y;
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw InvalidInput("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

/// Column-compressed sparse integer matrix with machine-word entries. Used for
/// the large truncated DGA differentials; arbitrary precision starts at the
/// elimination stage (see smith.hpp).
class SparseMatrix {
public:
    using Entry = std::pair<std::size_t, std::int64_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    /// Adds v to entry (i, j).
    void add(std::size_t i, std::size_t j, std::int64_t v) {
        if (v == 0) return;
        auto& col = columns_[j];
        auto it = std::lower_bound(col.begin(), col.end(), i,
                                   [](const Entry& e, std::size_t r) { return e.first < r; });
        if (it != col.end() && it->first == i) {
            it->second = detail::checked_add(it->second, v);
            if (it->second == 0) col.erase(it);
        } else {
            col.insert(it, {i, v});
        }
    }

    const std::vector<Entry>& column(std::size_t j) const { return columns_[j]; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    SparseMatrix operator*(const SparseMatrix& b) const {
        if (cols() != b.rows()) throw InvalidInput("sparse product: dimension mismatch");
        SparseMatrix c(rows_, b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::map<std::size_t, std::int64_t> acc;
            for (const auto& [k, bkj] : b.column(j))
                for (const auto& [i, aik] : columns_[k])
                    acc[i] = detail::checked_add(acc[i], detail::checked_mul(aik, bkj));
            for (const auto& [i, v] : acc)
                if (v != 0) c.columns_[j].push_back({i, v});
        }
        return c;
    }

    bool is_zero() const {
        return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
    }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
        if (x.size() != cols()) throw InvalidInput("sparse apply: dimension mismatch");
        std::vector<std::int64_t> y(rows_, 0);
        for (std::size_t j = 0; j < cols(); ++j) {
            if (x[j] == 0) continue;
            for (const auto& [i, v] : columns_[j]) y[i] = detail::checked_add(y[i], detail::checked_mul(v, x[j]));
        }
        return y;
    }

    template <class T>
    Matrix<T> to_dense() const {
        Matrix<T> m(rows_, cols());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, v] : columns_[j]) m(i, j) = T(v);
        return m;
    }

    static SparseMatrix from_dense(const IntMatrix& a) {
        SparseMatrix s(a.rows(), a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i)
                if (a(i, j) != 0) {
                    if (!detail::fits_int64(a(i, j))) throw BoundExceeded("sparse matrix entry exceeds int64");
                    s.columns_[j].push_back({i, static_cast<std::int64_t>(a(i, j))});
                }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::vector<std::vector<Entry>> columns_;
};

}  // namespace rtoric
