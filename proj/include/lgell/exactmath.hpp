#pragma once

// Exact integer/rational scalars and small dense matrices over them.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgell {

using Int = mpz_class;
using Rat = mpq_class;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrixError : public MathError {
public:
    using MathError::MathError;
};

Rat make_rat(long num, long den = 1);

/// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& r);
std::string to_string(const Int& z);

Int floor_of(const Rat& r);

/// r - floor(r), always in [0, 1).
Rat frac_part(const Rat& r);

bool is_integer(const Rat& r);

Int lcm_of(const Int& a, const Int& b);
std::int64_t lcm_of(std::int64_t a, std::int64_t b);

/// Converts to int64, throwing MathError when the value does not fit.
std::int64_t to_i64(const Int& z);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw MathError("matrix product: dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

IntMat int_matrix(const std::vector<std::vector<long>>& rows);
RatMat to_rational(const IntMat& m);

/// Determinant by fraction-free elimination.
Int determinant(const IntMat& a);

/// Exact inverse; throws SingularMatrixError when det(A) == 0.
RatMat invert_rational_matrix(const IntMat& a);

struct SnfResult {
    /// Nonzero diagonal entries d1 | d2 | ... | dr (r = rank), all positive.
    std::vector<Int> invariant_factors;
    IntMat left;  ///< unimodular U
    IntMat right; ///< unimodular V
    IntMat diagonal; ///< U * A * V
};

SnfResult smith_normal_form(const IntMat& a);

} // namespace lgell
