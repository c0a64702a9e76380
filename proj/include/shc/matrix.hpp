#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "shc/errors.hpp"
#include "shc/numeric.hpp"

namespace shc {

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix over an arbitrary field-like scalar.  The blocks in
/// this library are tiny (a handful of rows at most), so the implementation
/// favors exactness and genericity over speed: the same code path runs on
/// double and on exact rationals.
template <class T>
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T(0)) {
        if (rows < 0 || cols < 0) throw InvalidInputError("Matrix: negative dimensions");
    }

    /// Row-by-row construction: Matrix<double>{{1, 2}, {3, 4}}.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != cols_) throw InvalidInputError("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw InvalidInputError("Matrix multiply: dimension mismatch");
        Matrix out(rows_, rhs.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    Vector<T> operator*(const Vector<T>& v) const {
        if (cols_ != static_cast<int>(v.size())) throw InvalidInputError("Matrix-vector multiply: dimension mismatch");
        Vector<T> out(rows_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInputError("Matrix add: dimension mismatch");
        Matrix out = *this;
        for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInputError("Matrix subtract: dimension mismatch");
        Matrix out = *this;
        for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
        return out;
    }

    Matrix operator*(const T& scalar) const {
        Matrix out = *this;
        for (auto& x : out.data_) x *= scalar;
        return out;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.  Pivot
/// selection by largest magnitude keeps the double path stable; on exact
/// scalars any nonzero pivot is exact, so the same rule is simply correct.
template <class T>
Vector<T> linear_solve(Matrix<T> a, Vector<T> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw InvalidInputError("linear_solve: system must be square with matching rhs");
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        T best = scalar_abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            T candidate = scalar_abs(a(r, col));
            if (candidate > best) {
                best = candidate;
                pivot = r;
            }
        }
        if (best == T(0)) throw SingularMatrixError("linear_solve: singular system");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == T(0)) continue;
            T factor = a(r, col) / a(col, col);
            a(r, col) = T(0);
            for (int j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
            b[r] -= factor * b[col];
        }
    }
    Vector<T> x(n, T(0));
    for (int i = n - 1; i >= 0; --i) {
        T acc = b[i];
        for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    const int n = a.rows();
    if (a.cols() != n) throw InvalidInputError("inverse: matrix must be square");
    Matrix<T> out(n, n);
    for (int col = 0; col < n; ++col) {
        Vector<T> e(n, T(0));
        e[col] = T(1);
        Vector<T> x = linear_solve(a, e);
        for (int row = 0; row < n; ++row) out(row, col) = x[row];
    }
    return out;
}

/// A^n by binary exponentiation; negative n inverts first.
template <class T>
Matrix<T> matrix_power(Matrix<T> a, long n) {
    if (a.rows() != a.cols()) throw InvalidInputError("matrix_power: matrix must be square");
    if (n < 0) return matrix_power(inverse(a), -n);
    Matrix<T> result = Matrix<T>::identity(a.rows());
    while (n > 0) {
        if (n & 1) result = result * a;
        a = a * a;
        n >>= 1;
    }
    return result;
}

template <class T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
    if (a.size() != b.size()) throw InvalidInputError("vector add: dimension mismatch");
    Vector<T> out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

template <class T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
    if (a.size() != b.size()) throw InvalidInputError("vector subtract: dimension mismatch");
    Vector<T> out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

/// Squared Euclidean norm.  Kept square so exact scalars never need sqrt:
/// every ball-membership test in the library compares against the squared
/// radius instead.
template <class T>
T norm_sq(const Vector<T>& v) {
    T acc(0);
    for (const T& x : v) acc += x * x;
    return acc;
}

inline double norm(const Vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace shc
