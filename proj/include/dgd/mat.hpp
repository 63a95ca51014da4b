// Exact dense linear algebra over Rat: rank, kernel bases, solving, inverses.
#pragma once

#include "dgd/rat.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace dgd {

using Vec = std::vector<Rat>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& s, const Vec& a);
Vec operator-(const Vec& a);
Rat dot(const Vec& a, const Vec& b);
bool isZero(const Vec& a);
Vec concat(const Vec& a, const Vec& b);
Vec subvec(const Vec& a, std::size_t begin, std::size_t len);

class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), e_(r * c, Rat(0)) {}
    Mat(std::initializer_list<std::initializer_list<long>> rows);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }
    static Mat fromColumns(const std::vector<Vec>& cols);
    static Mat fromRows(const std::vector<Vec>& rows);
    static Mat diag(const Vec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Rat& s) const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool isZero() const;

    static Mat hcat(const Mat& a, const Mat& b);
    static Mat vcat(const Mat& a, const Mat& b);
    Mat block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const;

    std::size_t rank() const;
    // Columns span the kernel {x : Ax = 0}; empty matrix when kernel is trivial.
    Mat kernelBasis() const;
    std::optional<Mat> inverse() const;
    std::string str() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> e_;
};

// One particular solution plus a kernel basis, or inconsistency.
struct SolveResult {
    bool consistent = false;
    Vec particular;  // free variables set to zero
    Mat kernel;      // columns span ker(A)
};

SolveResult matSolve(const Mat& A, const Vec& b);

// Solves A X = B columnwise; nullopt if any column is inconsistent.
std::optional<Mat> matSolveMatrix(const Mat& A, const Mat& B);

// Unique left inverse data: returns L with L*A = I (requires full column rank).
std::optional<Mat> leftInverse(const Mat& A);

// Extends the (independent) columns of W to a basis of R^n.
Mat completeBasis(const Mat& W, std::size_t n);

// The linear map sending the columns of `onBasis` to those of `values`,
// extended by zero on a complement of their span.
Mat extendByZero(const Mat& onBasis, const Mat& values, std::size_t domainDim);

// Coordinates of `vectors` in the column span of `frame`; throws if not spanned.
Mat coordsIn(const Mat& frame, const Mat& vectors);

} // namespace dgd
