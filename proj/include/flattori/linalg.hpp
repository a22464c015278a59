#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flattori {

using BigInt = mpz_class;
using Rat = mpq_class;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& r);
BigInt floor_rat(const Rat& r);
BigInt ceil_rat(const Rat& r);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DomainError("ragged matrix literal");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RatMat = Matrix<Rat>;
using IntMat = Matrix<BigInt>;
using IntVec = std::vector<BigInt>;
// machine-integer vector for cone normals and edge rays
using IntRay = std::vector<std::int64_t>;
using RatVec = std::vector<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product: dimension mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMat to_rat(const IntMat& m);
// throws if some entry is not an integer
IntMat to_int(const RatMat& m);

std::size_t rank(const RatMat& m);
Rat det(const RatMat& m);
// throws DomainError on a singular matrix
RatMat inverse(const RatMat& m);
std::pair<RatMat, Rat> inverse_det(const RatMat& m);

/// Q = L D L^T with L unit lower triangular. Requires all leading minors nonzero.
struct LDLT {
    RatMat L;
    RatVec D;
};
LDLT ldlt(const RatMat& q);

/// Column Hermite normal form of a full-row-rank n x m integer matrix:
/// an n x n lower triangular basis of the column lattice, positive diagonal,
/// entries left of the diagonal reduced into [0, h_ii).
IntMat hnf(const IntMat& m);

/// Invariant factors d1 | d2 | ... of a nonsingular square integer matrix.
std::vector<BigInt> smith_invariants(const IntMat& m);

bool is_symmetric(const RatMat& m);
Rat dot(const RatVec& a, const RatVec& b);
RatVec mat_vec(const RatMat& m, const IntVec& x);
Rat quad_value(const RatMat& q, const IntVec& x);

}  // namespace flattori
